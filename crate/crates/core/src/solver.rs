//! Direct root-finding for the transcendental occupation equation.
//!
//! The equation `e^t = sin^2((n+1)x) / (n(n+1) sin^2 x)` (with `t` the
//! reduced energy and `x = pi*alpha/2`) is solved on its first branch —
//! `n` between 0 and the first zero of the right side — by a geometric
//! bracket scan followed by bisection on the log-residual. The solved root is
//! the ground truth the series and continued-fraction approximations are
//! tested against.

use crate::error::{Error, Result};
use crate::param::{sin_pi, StatisticsParameter};

/// Default tolerance on the log-residual `|log rhs(n) - t|`.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Bisection iteration budget.
const MAX_ITERATIONS: usize = 200;

/// Number of subdivisions in the geometric bracket scan.
const SCAN_POINTS: usize = 256;

/// A reduced-energy point `t = beta(E - mu)` with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    /// The reduced energy `t`.
    pub t: f64,
    /// `e^t`, the Boltzmann-side value the equation is solved against.
    pub boltzmann: f64,
}

impl ThermoPoint {
    /// Builds the point, rejecting non-finite `t`.
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::domain(format!("reduced energy must be finite, got {t}")));
        }
        Ok(Self {
            t,
            boltzmann: t.exp(),
        })
    }

    /// The shifted variable `g = e^t - a_0(alpha)` used by the series forms.
    pub fn g(&self, a0: f64) -> f64 {
        self.boltzmann - a0
    }
}

/// Outcome of a successful occupation solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveResult {
    /// The occupation number (smallest positive root).
    pub n: f64,
    /// Final `|log rhs(n) - t|`.
    pub residual: f64,
    /// Bracket the root was isolated in.
    pub bracket: (f64, f64),
    /// Bisection iterations consumed.
    pub iterations: usize,
}

/// Right side of the occupation equation at occupation `n`.
///
/// `sin^2((n+1)x) / (n(n+1) sin^2 x)` for `alpha` in (0, 1]; the Bose limit
/// dispatches to the analytic form `(n+1)/n`. At `alpha = 1` the reduced
/// arguments make this exactly `cos^2(n pi/2) / (n(n+1))` — half-integer
/// sine evaluation is exact in [`sin_pi`].
pub fn rhs(n: f64, stat: &StatisticsParameter) -> Result<f64> {
    if !(n > 0.0) {
        return Err(Error::domain(format!("rhs needs n > 0, got {n}")));
    }
    if stat.is_bose() {
        return Ok((n + 1.0) / n);
    }
    let alpha = stat.alpha();
    let s_top = sin_pi((n + 1.0) * alpha / 2.0);
    let s_bot = sin_pi(alpha / 2.0);
    Ok(s_top * s_top / (n * (n + 1.0) * s_bot * s_bot))
}

/// First zero of the right side: `n_max = 2/alpha - 1`, bounding the first
/// solution branch. Infinite in the Bose limit (the zero recedes away).
pub fn branch_cap(stat: &StatisticsParameter) -> f64 {
    if stat.is_bose() {
        f64::INFINITY
    } else {
        2.0 / stat.alpha() - 1.0
    }
}

/// The Bose-Einstein distribution `1/(e^t - 1)`, defined for `t > 0`.
pub fn bose_distribution(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!(
            "Bose-Einstein occupation needs t > 0 (condensation boundary), got {t}"
        )));
    }
    Ok(1.0 / t.exp_m1())
}

/// Solves the occupation equation for the smallest positive root.
///
/// Strategy: on the Bose endpoint return the closed form; otherwise scan a
/// geometric grid on `(1e-12, cap)` for the first sign change of
/// `phi(n) = log rhs(n) - t` (phi starts positive at the pole and is driven
/// to -inf at the cap), then bisect to `|phi| <= tol`. Scanning, rather than
/// assuming monotonicity, keeps the smallest root even if the branch were
/// not monotone; the bounds keep the solution off the nonphysical higher
/// branches beyond the cap.
pub fn solve_occupation(
    point: ThermoPoint,
    stat: &StatisticsParameter,
    tol: f64,
) -> Result<SolveResult> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("solver tolerance must be positive, got {tol}")));
    }
    if stat.is_bose() {
        let n = bose_distribution(point.t)?;
        let residual = (rhs(n, stat)?.ln() - point.t).abs();
        return Ok(SolveResult {
            n,
            residual,
            bracket: (n, n),
            iterations: 0,
        });
    }

    let cap = branch_cap(stat);
    let phi = |n: f64| -> Result<f64> { Ok(rhs(n, stat)?.ln() - point.t) };

    // Lower endpoint: walk toward the 1/n pole until phi > 0.
    let mut lo = 1e-12;
    let mut phi_lo = phi(lo)?;
    let mut tries = 0;
    while phi_lo <= 0.0 && tries < 5 {
        lo *= 1e-6;
        phi_lo = phi(lo)?;
        tries += 1;
    }
    // Upper endpoint: approach the cap (rhs -> 0) until phi < 0.
    let mut delta = 1e-9;
    let mut hi = cap * (1.0 - delta);
    let mut phi_hi = phi(hi)?;
    tries = 0;
    while phi_hi >= 0.0 && tries < 4 {
        delta *= 1e-3;
        hi = cap * (1.0 - delta);
        phi_hi = phi(hi)?;
        tries += 1;
    }
    if phi_lo <= 0.0 || phi_hi >= 0.0 {
        return Err(Error::Bracket {
            lo,
            hi,
            context: format!("endpoints do not straddle the root at t = {}", point.t),
        });
    }

    // Geometric scan: find the first (smallest-n) sign change.
    let ratio = (hi / lo).powf(1.0 / SCAN_POINTS as f64);
    let mut a = lo;
    let mut phi_a = phi_lo;
    let mut b = hi;
    let mut phi_b = phi_hi;
    let mut grid_point = lo;
    for i in 1..=SCAN_POINTS {
        grid_point = if i == SCAN_POINTS { hi } else { grid_point * ratio };
        let phi_here = phi(grid_point)?;
        if phi_here <= 0.0 {
            b = grid_point;
            phi_b = phi_here;
            break;
        }
        a = grid_point;
        phi_a = phi_here;
    }
    debug_assert!(phi_a > 0.0 && phi_b <= 0.0);

    // Bisection on the log-residual.
    let mut residual = phi_a.min(-phi_b);
    for iteration in 1..=MAX_ITERATIONS {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // The bracket has collapsed to adjacent floats: n is determined
            // to full precision. On a steep flank (a root hugging the branch
            // cap) the log-residual tolerance is unreachable there, so report
            // the achieved residual instead of failing.
            return Ok(SolveResult {
                n: mid,
                residual,
                bracket: (a, b),
                iterations: iteration,
            });
        }
        let phi_mid = phi(mid)?;
        residual = phi_mid.abs();
        if residual <= tol {
            return Ok(SolveResult {
                n: mid,
                residual,
                bracket: (a, b),
                iterations: iteration,
            });
        }
        if phi_mid > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Err(Error::IterationLimit {
        limit: MAX_ITERATIONS,
        residual,
    })
}
