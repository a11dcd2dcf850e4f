//! Deterministic CSV/JSON table emission.
//!
//! Every subcommand produces one table with a fixed header. Floats are
//! printed with 17 significant digits (`{:.16e}`) so a parsed-back value
//! reproduces the original double bit for bit; integers and text are printed
//! verbatim; absent values become an empty CSV cell or a JSON `null`.

use std::io::{self, Write};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        match self {
            Cell::Int(v) => write!(w, "{v}"),
            Cell::Float(v) => write!(w, "{v:.16e}"),
            Cell::Text(v) => write!(w, "{v}"),
            Cell::Empty => Ok(()),
        }
    }

    fn write_json(&self, w: &mut impl Write) -> io::Result<()> {
        match self {
            Cell::Int(v) => write!(w, "{v}"),
            // JSON has no representation for non-finite numbers.
            Cell::Float(v) if !v.is_finite() => write!(w, "null"),
            Cell::Float(v) => write!(w, "{v:.16e}"),
            Cell::Text(v) => write!(w, "\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\"")),
            Cell::Empty => write!(w, "null"),
        }
    }
}

/// A fixed-header table accumulated row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "{}", self.header.join(","))?;
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    write!(w, ",")?;
                }
                cell.write_csv(w)?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "[")?;
        for (r, row) in self.rows.iter().enumerate() {
            write!(w, "{{")?;
            for (i, (key, cell)) in self.header.iter().zip(row).enumerate() {
                if i > 0 {
                    write!(w, ",")?;
                }
                write!(w, "\"{key}\":")?;
                cell.write_json(w)?;
            }
            write!(w, "}}")?;
            writeln!(w, "{}", if r + 1 < self.rows.len() { "," } else { "" })?;
        }
        writeln!(w, "]")
    }
}
