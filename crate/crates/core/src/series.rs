//! Power-series engine: expansion coefficients of the occupation equation and
//! reversion of the series to occupation-as-a-function-of-fugacity form.
//!
//! The occupation equation `e^t = sin^2((n+1)x) / (n(n+1) sin^2 x)` expands
//! around `n = 0` as `e^t = 1/n + a_0 + a_1 n + a_2 n^2 + ...`; with
//! `g = e^t - a_0` the series reverts to `n = 1/g + sum_{k>=3} alpha_k / g^k`.
//! Everything here is plain `f64` truncated-power-series arithmetic — exact
//! in the coefficients' algebra, rounded only by floating point.

use crate::error::{Error, Result};
use crate::param::{cos_pi, sin_pi, StatisticsParameter};

/// Default truncation order for the generated series.
pub const DEFAULT_ORDER: usize = 12;

/// Residual bound for the analytic cancellation check when the pole term is
/// split off the numerator series.
const CONSTANT_TERM_TOL: f64 = 1e-14;

/// A polynomial truncated at a fixed order; index = power of the variable.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

impl TruncatedSeries {
    /// The zero series at the given truncation order.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    /// Builds a series from explicit coefficients (index = power).
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::size("a truncated series needs at least the constant term"));
        }
        Ok(Self { coeffs })
    }

    /// Truncation order (highest retained power).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of the `k`-th power (0 beyond the truncation order).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// All retained coefficients, lowest power first.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Termwise sum, truncated at `self`'s order.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            *c += other.coeff(k);
        }
        out
    }

    /// Cauchy product, truncated at `self`'s order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order();
        let mut out = vec![0.0; order + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, c) in out.iter_mut().enumerate().skip(i) {
                let b = other.coeff(j - i);
                if b != 0.0 {
                    *c += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Long division `self / other`, truncated at `self`'s order.
    ///
    /// Requires a unit (nonzero constant term) in the divisor.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let v0 = other.coeff(0);
        if v0 == 0.0 {
            return Err(Error::domain(
                "series division needs a nonzero constant term in the divisor",
            ));
        }
        let order = self.order();
        let mut out = vec![0.0; order + 1];
        for k in 0..=order {
            let mut acc = self.coeff(k);
            for (j, &w) in out.iter().enumerate().take(k) {
                if w != 0.0 {
                    acc -= w * other.coeff(k - j);
                }
            }
            out[k] = acc / v0;
        }
        Ok(Self { coeffs: out })
    }

    /// Composition `self(other)`, truncated at `self`'s order.
    ///
    /// Requires `other` to have zero constant term (otherwise the composition
    /// is not a formal power-series operation).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.coeff(0) != 0.0 {
            return Err(Error::domain(
                "series composition needs a zero constant term in the inner series",
            ));
        }
        let order = self.order();
        // Horner over the outer coefficients, highest power first.
        let mut out = TruncatedSeries::zero(order);
        for k in (0..=order).rev() {
            out = out.mul(other);
            out.coeffs[0] += self.coeff(k);
        }
        Ok(out)
    }
}

/// Expansion coefficients `a_0 ... a_K` of the occupation equation at fixed
/// statistics parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    stat: StatisticsParameter,
    a: Vec<f64>,
}

impl SeriesCoefficients {
    /// The statistics parameter the coefficients belong to.
    pub fn stat(&self) -> &StatisticsParameter {
        &self.stat
    }

    /// Truncation order `K` (coefficients `a_0 ... a_K` are available).
    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    /// The coefficient `a_k`.
    pub fn a(&self, k: usize) -> f64 {
        self.a[k]
    }

    /// All coefficients `a_0 ... a_K`.
    pub fn all(&self) -> &[f64] {
        &self.a
    }
}

/// Reverted-series coefficients `alpha_k` of `n = 1/g + sum alpha_k / g^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RevertedSeries {
    stat: StatisticsParameter,
    /// Indexed by `k`; `alpha[0] = 0`, `alpha[1] = 1`, `alpha[2] = 0`.
    alpha: Vec<f64>,
}

impl RevertedSeries {
    /// The statistics parameter the coefficients belong to.
    pub fn stat(&self) -> &StatisticsParameter {
        &self.stat
    }

    /// Truncation order `K` (coefficients through `alpha_K` are available).
    pub fn order(&self) -> usize {
        self.alpha.len() - 1
    }

    /// The coefficient `alpha_k` (`k = 1` is the leading `1/g` term).
    pub fn alpha(&self, k: usize) -> f64 {
        self.alpha[k]
    }
}

/// Generates the expansion coefficients `a_0 ... a_K`.
///
/// Writing `2x = pi*alpha`, the numerator of `n * RHS` expands through
/// `1 - cos(2(n+1)x) = 1 - cos 2x * cos 2nx + sin 2x * sin 2nx`, whose Taylor
/// coefficients in `n` are assembled termwise:
/// the constant term reduces to `(1 - cos 2x) / (2 sin^2 x) = 1` exactly
/// (half-angle identity — applying it removes the catastrophic cancellation
/// near alpha = 0), odd powers carry `cot x * (2x)^k / k!`, even powers carry
/// `-cos 2x / (2 sin^2 x) * (2x)^k / k!`, alternating in sign pairwise.
/// Dividing that numerator by `1 + n` and stripping the `1/n` pole leaves
/// `a_k` as the coefficient of `n^{k+1}`.
pub fn rhs_series(stat: &StatisticsParameter, order: usize) -> Result<SeriesCoefficients> {
    if stat.is_bose() {
        // Analytic limit: e^t = 1/n + 1 exactly (Bose-Einstein).
        let mut a = vec![0.0; order + 1];
        a[0] = 1.0;
        return Ok(SeriesCoefficients { stat: *stat, a });
    }
    let alpha = stat.alpha();
    let two_x = std::f64::consts::PI * alpha;
    let sin_x = sin_pi(alpha / 2.0);
    let cos_x = cos_pi(alpha / 2.0);
    let cot_x = cos_x / sin_x;
    let cos_2x = cos_pi(alpha);
    let inv_2s2 = 1.0 / (2.0 * sin_x * sin_x);

    // Numerator series U(n) = (1 - cos 2x cos 2nx + sin 2x sin 2nx)/(2 sin^2 x),
    // needed through order K+1 because the pole shift consumes one power.
    let mut numerator = TruncatedSeries::zero(order + 1);
    numerator.coeffs[0] = 1.0;
    let mut power = 1.0; // (2x)^k
    let mut factorial = 1.0; // k!
    for k in 1..=order + 1 {
        power *= two_x;
        factorial *= k as f64;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        numerator.coeffs[k] = if k % 2 == 1 {
            cot_x * sign * power / factorial
        } else {
            -cos_2x * inv_2s2 * sign * power / factorial
        };
    }

    // Check the analytic cancellation that makes the pole split exact: the
    // constant term of U must be (1 - cos 2x)/(2 sin^2 x) = 1. The check is
    // meaningful only where the difference 1 - cos 2x itself carries at least
    // 14 significant digits (alpha >= 0.1); below that, rounding in the
    // subtraction would dominate the residual being tested.
    if alpha >= 0.1 {
        let residual = (1.0 - cos_2x) * inv_2s2 - 1.0;
        if !(residual.abs() <= CONSTANT_TERM_TOL) {
            return Err(Error::domain(format!(
                "numerator constant term off by {residual:e}, expected exact cancellation"
            )));
        }
    }

    // e^t = U(n)/(n(1+n)) = 1/n + a_0 + a_1 n + ... so the a's are the
    // coefficients of U/(1+n) shifted down by the pole power.
    let one_plus_n = TruncatedSeries::from_coeffs(vec![1.0, 1.0])?;
    let w = numerator.div(&one_plus_n)?;
    let a = (1..=order + 1).map(|k| w.coeff(k)).collect();
    Ok(SeriesCoefficients { stat: *stat, a })
}

/// The closed-form coefficients `a_0 ... a_3` used as the oracle for
/// [`rhs_series`].
pub fn closed_form_a(stat: &StatisticsParameter, k: usize) -> Result<f64> {
    if k > 3 {
        return Err(Error::size(format!(
            "closed forms are available for k in [0, 3] only, got {k}"
        )));
    }
    if stat.is_bose() {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    let alpha = stat.alpha();
    let x = stat.x();
    let sin_x = sin_pi(alpha / 2.0);
    let sin2_x = sin_x * sin_x;
    let csc2 = 1.0 / sin2_x;
    let sin_2x = sin_pi(alpha);
    let cos_2x = cos_pi(alpha);
    let value = match k {
        0 => csc2 * (x * sin_2x - sin2_x),
        1 => csc2 * (x * x * cos_2x - x * sin_2x + sin2_x),
        2 => csc2 * (-x * x * cos_2x - sin2_x + (x - 2.0 * x.powi(3) / 3.0) * sin_2x),
        _ => csc2
            * ((x * x - x.powi(4) / 3.0) * cos_2x + sin2_x
                - (x - 2.0 * x.powi(3) / 3.0) * sin_2x),
    };
    Ok(value)
}

/// Reverts the forward expansion into `n = 1/g + sum_{k>=3} alpha_k / g^k`.
///
/// Uses fixed-point substitution on `n = h (1 + sum_{k>=1} a_k n^{k+1})`
/// with `h = 1/g`, in truncated-series arithmetic over `h`; each sweep fixes
/// one more order, so `K` sweeps suffice.
pub fn revert_series(coeffs: &SeriesCoefficients, order: usize) -> Result<RevertedSeries> {
    if order < 1 {
        return Err(Error::size(format!("reversion order must be >= 1, got {order}")));
    }
    if coeffs.order() + 2 < order {
        return Err(Error::size(format!(
            "reversion to order {order} needs forward coefficients through a_{}, have a_{}",
            order - 2,
            coeffs.order()
        )));
    }
    let mut n_series = TruncatedSeries::zero(order);
    if order >= 1 {
        n_series.coeffs[1] = 1.0; // first sweep input: n = h
    }
    let h = n_series.clone();
    for _ in 0..order + 1 {
        // q = sum_{k>=1} a_k n^{k+1}; n^{k+1} has leading power h^{k+1}, so
        // only k <= order - 2 contributes after the extra factor of h.
        let mut q = TruncatedSeries::zero(order);
        let mut n_power = n_series.mul(&n_series);
        for k in 1..=order.saturating_sub(2) {
            q = q.add(&n_power.scale(coeffs.a(k)));
            n_power = n_power.mul(&n_series);
        }
        let mut next = h.mul(&q);
        next.coeffs[1] += 1.0; // the h * 1 term
        n_series = next;
    }
    Ok(RevertedSeries {
        stat: *coeffs.stat(),
        alpha: n_series.coeffs,
    })
}

/// Evaluates the reverted series at `g`: `sum_{k=1}^{K} alpha_k / g^k`.
pub fn eval_series(rev: &RevertedSeries, g: f64) -> Result<f64> {
    if g == 0.0 {
        return Err(Error::domain("series evaluation needs g != 0"));
    }
    let h = 1.0 / g;
    // Horner from the top power down.
    let mut acc = 0.0;
    for k in (1..=rev.order()).rev() {
        acc = (acc + rev.alpha(k)) * h;
    }
    Ok(acc)
}
