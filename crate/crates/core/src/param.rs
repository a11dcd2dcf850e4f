//! The statistics parameter interpolating between Bose and Fermi behaviour.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Interpolation parameter `alpha` with its derived phase quantities.
///
/// `alpha = 0` is the Bose limit, `alpha = 1` the Fermi-like limit. Derived
/// fields: the half-angle `x = pi*alpha/2` and the exchange phase
/// `f = exp(i*pi*alpha)`. All occupation statistics depend on alpha only
/// through `sin^2`, so a negative input is folded to `|alpha|` on
/// construction; magnitudes above 1 are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatisticsParameter {
    alpha: f64,
    x: f64,
    f: Complex64,
}

impl StatisticsParameter {
    /// Builds the parameter, folding sign and validating `|alpha| <= 1`.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::domain(format!("alpha must be finite, got {alpha}")));
        }
        let alpha = alpha.abs();
        if alpha > 1.0 {
            return Err(Error::domain(format!(
                "alpha must satisfy |alpha| <= 1, got {alpha}"
            )));
        }
        let x = std::f64::consts::FRAC_PI_2 * alpha;
        let f = Complex64::new(cos_pi(alpha), sin_pi(alpha));
        Ok(Self { alpha, x, f })
    }

    /// The interpolation parameter in `[0, 1]`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The half-angle `x = pi*alpha/2` in radians.
    pub fn x(&self) -> f64 {
        self.x
    }

    /// The exchange phase `f = exp(i*pi*alpha)` (unit modulus).
    pub fn f(&self) -> Complex64 {
        self.f
    }

    /// True exactly at the Bose endpoint `alpha = 0`.
    pub fn is_bose(&self) -> bool {
        self.alpha == 0.0
    }

    /// True exactly at the Fermi endpoint `alpha = 1`.
    pub fn is_fermi(&self) -> bool {
        self.alpha == 1.0
    }
}

/// `sin(pi * z)` with argument reduction performed on `z` itself.
///
/// Reducing before multiplying by pi keeps full relative accuracy near the
/// zeros at integer `z` (a naive `sin(PI * z)` loses all significant digits
/// there) and returns exact zeros at integers, which downstream limit
/// handling relies on.
pub fn sin_pi(z: f64) -> f64 {
    let k = z.round();
    let r = z - k;
    let s = (std::f64::consts::PI * r).sin();
    // k odd flips the sign: sin(pi*(k + r)) = (-1)^k sin(pi*r).
    if (k % 2.0).abs() == 1.0 {
        -s
    } else {
        s
    }
}

/// `cos(pi * z)` with the same argument-reduction guarantees as [`sin_pi`]:
/// exact zeros at half-integer `z` and full relative accuracy beside them.
///
/// The reduced residue is pushed to within an eighth of a turn of a zero or
/// an extremum before calling libm: near the zeros the small angle
/// `1/2 - |r|` is formed exactly (both operands lie within a factor of two),
/// so no significance is lost where `cos` itself is ill-conditioned.
pub fn cos_pi(z: f64) -> f64 {
    let k = z.round();
    let r = z - k;
    // The boundary |r| = 0.25 takes the sine branch so that cos_pi and
    // sin_pi agree bit-for-bit at quarter-integers (cot of a quarter turn
    // comes out exactly 1).
    let c = if r.abs() < 0.25 {
        (std::f64::consts::PI * r).cos()
    } else {
        let small = 0.5 - r.abs();
        (std::f64::consts::PI * small).sin()
    };
    // cos(pi*(k + r)) = (-1)^k cos(pi*r).
    if (k % 2.0).abs() == 1.0 {
        -c
    } else {
        c
    }
}
