//! Continued-fraction representation of the occupation number.
//!
//! The reverted series `n = 1/g + sum_{k>=3} alpha_k / g^k` is recast as a
//! continued fraction whose m-th convergent reproduces the series through
//! order `1/g^{m+1}` — exactly the classical construction in which each
//! convergent equals the next partial sum. Convergents are evaluated by the
//! standard forward three-term recurrence.

use crate::error::{Error, Result};
use crate::series::{rhs_series, RevertedSeries};
use crate::param::StatisticsParameter;

/// Coefficients below this magnitude terminate the fraction exactly (a
/// vanishing series term has no finite partial-quotient representation).
pub const TERMINATION_EPS: f64 = 1e-14;

/// Rescaling threshold for the forward recurrence (overflow guard).
const RESCALE_AT: f64 = 1e150;

/// A polynomial in `g` of degree at most 2: `c0 + c1*g + c2*g^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GPoly {
    /// Constant coefficient.
    pub c0: f64,
    /// Coefficient of `g`.
    pub c1: f64,
    /// Coefficient of `g^2`.
    pub c2: f64,
}

impl GPoly {
    /// Builds the polynomial `c0 + c1*g + c2*g^2`.
    pub const fn new(c0: f64, c1: f64, c2: f64) -> Self {
        Self { c0, c1, c2 }
    }

    /// Evaluates the polynomial at `g`.
    pub fn eval(&self, g: f64) -> f64 {
        (self.c2 * g + self.c1) * g + self.c0
    }

    /// The polynomial with every coefficient multiplied by `factor`.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            c0: factor * self.c0,
            c1: factor * self.c1,
            c2: factor * self.c2,
        }
    }
}

/// Partial terms `b_k`, `c_k` of the continued fraction
/// `n = b_1/(c_1 + b_2/(c_2 + b_3/(c_3 + ...)))`.
///
/// The schedule realized here makes convergent `m` equal the `(m+1)`-term
/// partial sum of the reverted series:
/// `b_1 = 1`, `c_1 = g`; `b_2 = -alpha_3 g`, `c_2 = g^2 + alpha_3`;
/// `b_3 = -alpha_4 g^2`, `c_3 = alpha_3 g + alpha_4`; and for `k >= 4`
/// `b_k = -alpha_{k-1} alpha_{k+1} g`, `c_k = alpha_k g + alpha_{k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuedFractionRep {
    /// Depth actually represented (may be less than requested if a
    /// vanishing coefficient terminated the fraction).
    depth: usize,
    /// `(b_k, c_k)` pairs, index `k - 1`.
    terms: Vec<(GPoly, GPoly)>,
}

impl ContinuedFractionRep {
    /// Number of levels available for evaluation.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The partial term pair `(b_k, c_k)` at level `k` (1-based).
    pub fn term(&self, k: usize) -> Option<&(GPoly, GPoly)> {
        if k == 0 {
            None
        } else {
            self.terms.get(k - 1)
        }
    }

    /// Applies an equivalence transformation with one nonzero multiplier per
    /// level: `b_k -> d_k d_{k-1} b_k`, `c_k -> d_k c_k` (with `d_0 = 1`).
    ///
    /// Every convergent's value is unchanged in exact arithmetic — both
    /// `B_m` and `C_m` pick up the same factor `prod d_k` — so this only
    /// reshuffles how signs and scales are written. With `d_k = -1` from
    /// level 3 on, the half-statistics fraction takes its traditional
    /// appearance `1/(g + a_0 g/(g^2 - a_0 + ...))`.
    pub fn equivalence_transform(&self, d: &[f64]) -> Result<ContinuedFractionRep> {
        if d.len() < self.depth {
            return Err(Error::size(format!(
                "need {} multipliers for a depth-{} fraction, got {}",
                self.depth,
                self.depth,
                d.len()
            )));
        }
        if let Some(zero) = d[..self.depth].iter().find(|v| **v == 0.0 || !v.is_finite()) {
            return Err(Error::domain(format!(
                "equivalence multipliers must be finite and nonzero, got {zero}"
            )));
        }
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, (b, c))| {
                let d_prev = if i == 0 { 1.0 } else { d[i - 1] };
                (b.scale(d[i] * d_prev), c.scale(d[i]))
            })
            .collect();
        Ok(ContinuedFractionRep {
            depth: self.depth,
            terms,
        })
    }
}

/// Numerator/denominator state of the m-th approximant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergent {
    /// Numerator `B_m` of the forward recurrence.
    pub b: f64,
    /// Denominator `C_m` of the forward recurrence.
    pub c: f64,
    /// Level index `m`.
    pub m: usize,
}

impl Convergent {
    /// The approximant value `B_m / C_m`.
    pub fn value(&self) -> f64 {
        self.b / self.c
    }
}

/// Builds the partial-term schedule from a reverted series.
///
/// Requires `alpha_k` through `k = depth + 1`. Construction stops early
/// (depth reduced) at the first `|alpha_k| < 1e-14` with `k >= 3`, treating
/// the fraction as exactly terminated — the Bose limit thereby collapses to
/// the single level `1/g`.
pub fn build_cf(rev: &RevertedSeries, depth: usize) -> Result<ContinuedFractionRep> {
    if depth < 1 {
        return Err(Error::size(format!("fraction depth must be >= 1, got {depth}")));
    }
    if rev.order() < depth + 1 {
        return Err(Error::size(format!(
            "depth {depth} needs reverted coefficients through alpha_{}, have alpha_{}",
            depth + 1,
            rev.order()
        )));
    }

    let mut effective = depth;
    for k in 3..=depth + 1 {
        if rev.alpha(k).abs() < TERMINATION_EPS {
            effective = k - 2;
            break;
        }
    }

    let mut terms = Vec::with_capacity(effective);
    for k in 1..=effective {
        let (b, c) = match k {
            1 => (GPoly::new(1.0, 0.0, 0.0), GPoly::new(0.0, 1.0, 0.0)),
            2 => (
                GPoly::new(0.0, -rev.alpha(3), 0.0),
                GPoly::new(rev.alpha(3), 0.0, 1.0),
            ),
            3 => (
                GPoly::new(0.0, 0.0, -rev.alpha(4)),
                GPoly::new(rev.alpha(4), rev.alpha(3), 0.0),
            ),
            _ => (
                GPoly::new(0.0, -rev.alpha(k - 1) * rev.alpha(k + 1), 0.0),
                GPoly::new(rev.alpha(k + 1), rev.alpha(k), 0.0),
            ),
        };
        terms.push((b, c));
    }
    Ok(ContinuedFractionRep {
        depth: effective,
        terms,
    })
}

/// Evaluates the m-th approximant by the forward recurrence
/// `B_k = c_k B_{k-1} + b_k B_{k-2}` (same for `C`), with `B_{-1} = 1`,
/// `C_{-1} = 0`, `B_0 = 0`, `C_0 = 1`, rescaling both sequences whenever a
/// magnitude passes 1e150.
pub fn eval_convergent(cf: &ContinuedFractionRep, g: f64, m: usize) -> Result<f64> {
    Ok(convergent_at(cf, g, m)?.value())
}

/// Like [`eval_convergent`] but returns the raw `B_m`, `C_m` pair.
pub fn convergent_at(cf: &ContinuedFractionRep, g: f64, m: usize) -> Result<Convergent> {
    if g == 0.0 {
        return Err(Error::domain("convergent evaluation needs g != 0"));
    }
    if m < 1 || m > cf.depth {
        return Err(Error::size(format!(
            "convergent index {m} outside the represented depth {}",
            cf.depth
        )));
    }
    let (mut b_prev2, mut c_prev2) = (1.0_f64, 0.0_f64); // B_{-1}, C_{-1}
    let (mut b_prev1, mut c_prev1) = (0.0_f64, 1.0_f64); // B_0, C_0
    for k in 1..=m {
        let (bk, ck) = &cf.terms[k - 1];
        let (bv, cv) = (bk.eval(g), ck.eval(g));
        let b_next = cv * b_prev1 + bv * b_prev2;
        let c_next = cv * c_prev1 + bv * c_prev2;
        let magnitude = b_next.abs().max(c_next.abs());
        let (mut b_next, mut c_next) = (b_next, c_next);
        if magnitude > RESCALE_AT {
            b_next /= magnitude;
            c_next /= magnitude;
            b_prev1 /= magnitude;
            c_prev1 /= magnitude;
        }
        (b_prev2, c_prev2) = (b_prev1, c_prev1);
        (b_prev1, c_prev1) = (b_next, c_next);
    }
    if c_prev1 == 0.0 {
        return Err(Error::Pole { m, g });
    }
    Ok(Convergent {
        b: b_prev1,
        c: c_prev1,
        m,
    })
}

/// The closed first approximation `n = 1/(e^t - a_0)`.
///
/// Identical to the depth-1 convergent evaluated at `g = e^t - a_0`; kept as
/// a separate entry point because it is the form used directly in practice.
pub fn first_approximant(stat: &StatisticsParameter, t: f64) -> Result<f64> {
    let a0 = rhs_series(stat, 0)?.a(0);
    let boltzmann = t.exp();
    if boltzmann <= a0 {
        return Err(Error::domain(format!(
            "first approximant pole: e^t = {boltzmann} must exceed a_0 = {a0}"
        )));
    }
    Ok(1.0 / (boltzmann - a0))
}
