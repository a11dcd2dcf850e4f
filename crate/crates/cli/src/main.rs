//! Command-line front end for the intermediate-statistics library.
//!
//! Each subcommand evaluates one slice of the theory and emits a single
//! fixed-header table as CSV (default) or JSON, to stdout or to `--out`.
//! Identical invocations produce byte-identical output. Diagnostics go to
//! stderr only. Exit codes: 0 on success, 1 on usage errors, 2 when the
//! requested computation is mathematically out of domain (bracket failures,
//! capacity violations, poles, and the like).

mod table;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyon_stats::{
    basic_number, build_cf, eval_convergent, occupation_sweep, probability_bruteforce,
    probability_closed, revert_series, rhs_series, solve_fugacity, solve_occupation, EnergyLevel,
    StatisticsParameter, SweepMethod, ThermoPoint, DEFAULT_TOL,
};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use table::{Cell, Table};

#[derive(Parser)]
#[command(
    name = "anyon",
    version,
    about = "Distribution function of particles with statistics between Bose and Fermi",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format for the emitted table.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the table to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProbMethod {
    Brute,
    Closed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Solver,
    Series,
    Cf,
    FirstApprox,
}

impl From<MethodArg> for SweepMethod {
    fn from(value: MethodArg) -> Self {
        match value {
            MethodArg::Solver => SweepMethod::Solver,
            MethodArg::Series => SweepMethod::Series,
            MethodArg::Cf => SweepMethod::Cf,
            MethodArg::FirstApprox => SweepMethod::FirstApprox,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the basic number [nu] = sin(nu*pi*alpha)/sin(pi*alpha).
    Basic {
        /// Bracket argument (any real; integer required at alpha = 0 or 1).
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        /// Statistics parameter in [0, 1].
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// n-particle occupation probability, brute-force and/or closed form.
    Prob {
        /// Particle count (brute force requires n <= 10).
        #[arg(long)]
        n: u32,
        /// Statistics parameter in [0, 1].
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Which evaluation(s) to run.
        #[arg(long, value_enum, default_value_t = ProbMethod::Both)]
        method: ProbMethod,
    },
    /// Occupation-equation series coefficients a_k and reverted alpha_k.
    Coeffs {
        /// Statistics parameter in [0, 1].
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Highest k to print.
        #[arg(long)]
        order: usize,
    },
    /// Solve the occupation equation at reduced energy t.
    Solve {
        /// Statistics parameter in [0, 1].
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Reduced energy t = beta*(E - mu).
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Log-residual tolerance.
        #[arg(long, default_value_t = DEFAULT_TOL, allow_negative_numbers = true)]
        tol: f64,
    },
    /// Continued-fraction term schedule and convergent table at one point.
    Cf {
        /// Statistics parameter in [0, 1].
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Reduced energy t = beta*(E - mu).
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Requested fraction depth (may terminate earlier).
        #[arg(long)]
        depth: usize,
    },
    /// Occupation table over an alpha list and a linear t grid.
    Sweep {
        /// Comma-separated statistics parameters, each in [0, 1].
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        /// Lower end of the t grid.
        #[arg(long, allow_negative_numbers = true)]
        t_min: f64,
        /// Upper end of the t grid.
        #[arg(long, allow_negative_numbers = true)]
        t_max: f64,
        /// Number of grid points (>= 1; a single point sits at t-min).
        #[arg(long)]
        t_steps: usize,
        /// Evaluation method for every grid point.
        #[arg(long, value_enum)]
        method: MethodArg,
    },
    /// Chemical potential for a level file at fixed total particle number.
    Fugacity {
        /// Level file: one "energy degeneracy" pair per line, '#' comments.
        #[arg(long)]
        levels: PathBuf,
        /// Inverse temperature (> 0).
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Target total particle number (> 0).
        #[arg(long, allow_negative_numbers = true)]
        n_total: f64,
        /// Statistics parameter in [0, 1].
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
}

/// Failure classes mapped onto exit codes 1 (usage) and 2 (domain).
enum AppError {
    Usage(String),
    Compute(anyon_stats::Error),
}

impl From<anyon_stats::Error> for AppError {
    fn from(err: anyon_stats::Error) -> Self {
        AppError::Compute(err)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successful outcomes; everything else is a
            // usage error, which this tool reports with exit code 1.
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{err}");
                    ExitCode::from(1)
                }
            };
        }
    };

    let format = cli.format;
    let out = cli.out.clone();
    match run(cli.command).and_then(|t| emit(&t, format, out.as_deref())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Compute(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn emit(tab: &Table, format: Format, out: Option<&std::path::Path>) -> Result<(), AppError> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => tab.write_csv(&mut buf),
        Format::Json => tab.write_json(&mut buf),
    }
    .expect("in-memory write cannot fail");
    match out {
        Some(path) => fs::write(path, &buf)
            .map_err(|e| AppError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(&buf)
                .and_then(|()| lock.flush())
                .map_err(|e| AppError::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}

/// Validates a CLI alpha: the library folds signs, but the interface is
/// specified on [0, 1] only.
fn parse_alpha(alpha: f64) -> Result<StatisticsParameter, AppError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(AppError::Usage(format!(
            "--alpha must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(StatisticsParameter::new(alpha)?)
}

fn run(command: Command) -> Result<Table, AppError> {
    match command {
        Command::Basic { nu, alpha } => {
            let stat = parse_alpha(alpha)?;
            let value = basic_number(nu, &stat)?;
            let mut tab = Table::new(&["nu", "alpha", "value"]);
            tab.push(vec![
                Cell::Float(nu),
                Cell::Float(stat.alpha()),
                Cell::Float(value.value),
            ]);
            Ok(tab)
        }
        Command::Prob { n, alpha, method } => {
            let stat = parse_alpha(alpha)?;
            let brute = match method {
                ProbMethod::Brute | ProbMethod::Both => {
                    Cell::Float(probability_bruteforce(n, &stat)?.value)
                }
                ProbMethod::Closed => Cell::Empty,
            };
            let closed = match method {
                ProbMethod::Closed | ProbMethod::Both => {
                    Cell::Float(probability_closed(n, &stat)?.value)
                }
                ProbMethod::Brute => Cell::Empty,
            };
            let mut tab = Table::new(&["n", "alpha", "brute", "closed"]);
            tab.push(vec![
                Cell::Int(i64::from(n)),
                Cell::Float(stat.alpha()),
                brute,
                closed,
            ]);
            Ok(tab)
        }
        Command::Coeffs { alpha, order } => {
            let stat = parse_alpha(alpha)?;
            let coeffs = rhs_series(&stat, order)?;
            let rev = if order >= 1 {
                Some(revert_series(&coeffs, order)?)
            } else {
                None
            };
            let mut tab = Table::new(&["k", "a_k", "alpha_k"]);
            for k in 0..=order {
                let alpha_k = match (&rev, k) {
                    (_, 0) => Cell::Empty, // the reverted series starts at k = 1
                    (Some(rev), k) => Cell::Float(rev.alpha(k)),
                    (None, _) => Cell::Empty,
                };
                tab.push(vec![Cell::Int(k as i64), Cell::Float(coeffs.a(k)), alpha_k]);
            }
            Ok(tab)
        }
        Command::Solve { alpha, t, tol } => {
            if !(tol > 0.0) {
                return Err(AppError::Usage(format!("--tol must be positive, got {tol}")));
            }
            let stat = parse_alpha(alpha)?;
            let point = ThermoPoint::new(t)?;
            let result = solve_occupation(point, &stat, tol)?;
            let mut tab = Table::new(&["n", "residual", "iterations"]);
            tab.push(vec![
                Cell::Float(result.n),
                Cell::Float(result.residual),
                Cell::Int(result.iterations as i64),
            ]);
            Ok(tab)
        }
        Command::Cf { alpha, t, depth } => {
            if depth == 0 {
                return Err(AppError::Usage("--depth must be at least 1".into()));
            }
            let stat = parse_alpha(alpha)?;
            let point = ThermoPoint::new(t)?;
            let root = solve_occupation(point, &stat, DEFAULT_TOL)?.n;
            let coeffs = rhs_series(&stat, depth + 1)?;
            let rev = revert_series(&coeffs, depth + 1)?;
            let cf = build_cf(&rev, depth)?;
            let g = point.g(coeffs.a(0));
            let mut tab = Table::new(&[
                "m", "b_const", "b_g", "b_g2", "c_const", "c_g", "c_g2", "value",
                "abs_err_vs_solver",
            ]);
            for m in 1..=cf.depth() {
                let (b, c) = cf.term(m).expect("terms exist through cf.depth()");
                let value = eval_convergent(&cf, g, m)?;
                tab.push(vec![
                    Cell::Int(m as i64),
                    Cell::Float(b.c0),
                    Cell::Float(b.c1),
                    Cell::Float(b.c2),
                    Cell::Float(c.c0),
                    Cell::Float(c.c1),
                    Cell::Float(c.c2),
                    Cell::Float(value),
                    Cell::Float((value - root).abs()),
                ]);
            }
            Ok(tab)
        }
        Command::Sweep {
            alphas,
            t_min,
            t_max,
            t_steps,
            method,
        } => {
            if t_steps == 0 {
                return Err(AppError::Usage("--t-steps must be at least 1".into()));
            }
            let stats = alphas
                .into_iter()
                .map(parse_alpha)
                .collect::<Result<Vec<_>, _>>()?;
            let t_grid: Vec<f64> = if t_steps == 1 {
                vec![t_min]
            } else {
                (0..t_steps)
                    .map(|i| t_min + (t_max - t_min) * i as f64 / (t_steps - 1) as f64)
                    .collect()
            };
            let rows = occupation_sweep(&stats, &t_grid, method.into());
            let mut tab = Table::new(&["alpha", "t", "method", "n", "residual", "status"]);
            for row in rows {
                tab.push(vec![
                    Cell::Float(row.alpha),
                    Cell::Float(row.t),
                    Cell::Text(row.method.label().to_string()),
                    row.n.map_or(Cell::Empty, Cell::Float),
                    row.residual.map_or(Cell::Empty, Cell::Float),
                    Cell::Text(row.status.to_string()),
                ]);
            }
            Ok(tab)
        }
        Command::Fugacity {
            levels,
            beta,
            n_total,
            alpha,
        } => {
            let stat = parse_alpha(alpha)?;
            let levels = parse_levels(&levels)?;
            let state = solve_fugacity(&levels, beta, n_total, &stat)?;
            let mut tab = Table::new(&[
                "level",
                "energy",
                "degeneracy",
                "t",
                "n",
                "mu",
                "total",
            ]);
            for (i, (level, n)) in levels.iter().zip(&state.occupations).enumerate() {
                tab.push(vec![
                    Cell::Int(i as i64 + 1),
                    Cell::Float(level.energy),
                    Cell::Int(i64::from(level.degeneracy)),
                    Cell::Float(state.beta * (level.energy - state.mu)),
                    Cell::Float(*n),
                    Cell::Float(state.mu),
                    Cell::Float(state.total),
                ]);
            }
            Ok(tab)
        }
    }
}

/// Reads a level file: one `energy degeneracy` pair per non-comment line.
fn parse_levels(path: &std::path::Path) -> Result<Vec<EnergyLevel>, AppError> {
    let text = fs::read_to_string(path)
        .map_err(|e| AppError::Usage(format!("cannot read levels file {}: {e}", path.display())))?;
    let mut levels = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let bad = |what: &str| {
            AppError::Usage(format!(
                "levels file {}, line {}: {what}: {raw:?}",
                path.display(),
                index + 1
            ))
        };
        let energy: f64 = fields
            .next()
            .ok_or_else(|| bad("missing energy"))?
            .parse()
            .map_err(|_| bad("unparseable energy"))?;
        let degeneracy: u32 = fields
            .next()
            .ok_or_else(|| bad("missing degeneracy"))?
            .parse()
            .map_err(|_| bad("unparseable degeneracy"))?;
        if fields.next().is_some() {
            return Err(bad("expected exactly two fields"));
        }
        levels.push(
            EnergyLevel::new(energy, degeneracy)
                .map_err(|e| bad(&format!("invalid level ({e})")))?,
        );
    }
    if levels.is_empty() {
        return Err(AppError::Usage(format!(
            "levels file {} contains no levels",
            path.display()
        )));
    }
    Ok(levels)
}
