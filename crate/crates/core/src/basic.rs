//! Basic numbers: the symmetric trigonometric deformation of the integers.
//!
//! The bracket `[nu] = sin(nu*pi*alpha) / sin(pi*alpha)` deforms each integer
//! `n` into a value in `[-n, n]`, recovering `n` in the Bose limit and
//! `(-1)^(n+1) * n` in the Fermi limit. The bracket is defined here for all
//! real `nu` (the half-integer arguments are needed by the closed-form
//! summation identities).

use crate::error::{Error, Result};
use crate::param::{cos_pi, sin_pi, StatisticsParameter};

/// Half-width of the neighbourhood of `alpha ∈ {0, 1}` inside which the
/// bracket switches to a series-expanded limit form (avoids 0/0 evaluation).
pub const DEFAULT_LIMIT_WINDOW: f64 = 1e-8;

/// A bracket evaluation `[nu]`, kept as a plain value with its argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasicNumberValue {
    /// The argument the bracket was evaluated at.
    pub nu: f64,
    /// The value `sin(nu*pi*alpha)/sin(pi*alpha)` (or its analytic limit).
    pub value: f64,
}

/// Evaluates the bracket `[nu]` with the default endpoint window.
pub fn basic_number(nu: f64, stat: &StatisticsParameter) -> Result<BasicNumberValue> {
    basic_number_with_window(nu, stat, DEFAULT_LIMIT_WINDOW)
}

/// Evaluates the bracket `[nu]` with a caller-chosen endpoint window.
///
/// Behaviour by region of `alpha`:
/// - exactly 0 or 1: integer `nu` dispatches to the analytic limit
///   (`nu`, respectively `(-1)^(nu+1) * nu`); non-integer `nu` is a domain
///   error because the ratio has no finite limit there.
/// - within `window` of 0: second-order expansion
///   `nu * (1 - (nu^2 - 1) * (pi*alpha)^2 / 6)`, valid for every real `nu`.
/// - within `window` of 1, integer `nu`: the mirrored expansion in
///   `eps = 1 - alpha`.
/// - elsewhere: direct evaluation through argument-reduced sines.
pub fn basic_number_with_window(
    nu: f64,
    stat: &StatisticsParameter,
    window: f64,
) -> Result<BasicNumberValue> {
    if !nu.is_finite() {
        return Err(Error::domain(format!("bracket argument must be finite, got {nu}")));
    }
    let alpha = stat.alpha();
    let is_integer = nu.fract() == 0.0;

    let value = if alpha == 0.0 || alpha == 1.0 {
        if !is_integer {
            return Err(Error::domain(format!(
                "[{nu}] has no limit at alpha = {alpha}: non-integer argument"
            )));
        }
        integer_endpoint_limit(nu, alpha)
    } else if alpha <= window {
        // sin(nu*pi*a)/sin(pi*a) = nu * (1 - (nu^2-1)(pi a)^2/6 + O(a^4)).
        let pa = std::f64::consts::PI * alpha;
        nu * (1.0 - (nu * nu - 1.0) * pa * pa / 6.0)
    } else if 1.0 - alpha <= window && is_integer {
        // Mirror of the small-alpha expansion around alpha = 1.
        let pe = std::f64::consts::PI * (1.0 - alpha);
        let magnitude = nu * (1.0 - (nu * nu - 1.0) * pe * pe / 6.0);
        if (nu.abs() % 2.0) == 0.0 {
            -magnitude
        } else {
            magnitude
        }
    } else if is_integer && alpha > 0.5 {
        // Reflect onto the small deformation: [nu](alpha) is exactly
        // (-1)^(nu+1) [nu](1 - alpha) for integer nu, and 1 - alpha is an
        // exact subtraction here. Forming nu*(1 - alpha) keeps full relative
        // accuracy in the distance from the sine's zero, which the rounding
        // of nu*alpha would otherwise wipe out for large nu.
        let eps = 1.0 - alpha;
        let magnitude = sin_pi(nu * eps) / sin_pi(eps);
        if (nu.abs() % 2.0) == 0.0 {
            -magnitude
        } else {
            magnitude
        }
    } else {
        sin_pi(nu * alpha) / sin_pi(alpha)
    };

    Ok(BasicNumberValue { nu, value })
}

/// Analytic endpoint limit of `[n]` for integer `n`.
fn integer_endpoint_limit(n: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        n
    } else if (n.abs() % 2.0) == 0.0 {
        // Fermi limit flips the sign of even integers: [n] -> (-1)^(n+1) n.
        -n
    } else {
        n
    }
}

/// Direct sum `[0] + [1] + ... + [n]`.
///
/// The closed form `2 cos(pi*alpha/2) [n/2] [(n+1)/2]` is *not* used here on
/// purpose: this function is the left side of that identity, and the tests
/// compare the two.
pub fn basic_number_sum(n: u32, stat: &StatisticsParameter) -> Result<f64> {
    let mut sum = 0.0;
    for k in 0..=n {
        sum += basic_number(f64::from(k), stat)?.value;
    }
    Ok(sum)
}

/// Closed form of the bracket sum: `2 cos(pi*alpha/2) [n/2] [(n+1)/2]`.
///
/// Exposed so callers (and the identity tests) can evaluate the right side
/// of the summation identity without re-deriving the half-integer brackets.
pub fn basic_number_sum_closed(n: u32, stat: &StatisticsParameter) -> Result<f64> {
    let half = basic_number(f64::from(n) / 2.0, stat)?.value;
    let half_next = basic_number((f64::from(n) + 1.0) / 2.0, stat)?.value;
    Ok(2.0 * cos_pi(stat.alpha() / 2.0) * half * half_next)
}
