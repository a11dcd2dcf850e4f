//! Exchange-phase amplitudes, occupation probabilities, and the enhancement
//! factor.
//!
//! A state holding `n` identical particles under exchange phase
//! `f = exp(i*pi*alpha)` has total amplitude `sum over permutations sigma of
//! f^inv(sigma)` (inversion count as the exchange exponent). Its squared
//! modulus over `n!` is the occupation probability; the ratio of successive
//! probabilities is the enhancement factor that drives the occupation
//! statistics.

use num_complex::Complex64;

use crate::basic::basic_number;
use crate::error::{Error, Result};
use crate::param::{cos_pi, sin_pi, StatisticsParameter};

/// Largest particle count accepted by the brute-force enumerations (`n!` cost).
pub const MAX_BRUTEFORCE_N: u32 = 10;

/// Total permutation amplitude of an `n`-particle state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermutationAmplitude {
    /// Particle count the amplitude was computed for.
    pub n: u32,
    /// The complex amplitude `sum_sigma f^inv(sigma)`.
    pub value: Complex64,
}

/// Relative probability of an `n`-particle state (single-particle factors
/// normalized away).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupationProbability {
    /// Particle count.
    pub n: u32,
    /// The probability value `|amplitude|^2 / n!`.
    pub value: f64,
}

/// Sums `f^inv(sigma)` over all permutations of `n` elements, enumerated in
/// lexicographic order (fixed summation order keeps results reproducible).
pub fn amplitude_bruteforce(n: u32, stat: &StatisticsParameter) -> Result<PermutationAmplitude> {
    if n > MAX_BRUTEFORCE_N {
        return Err(Error::size(format!(
            "brute-force enumeration bounded at n = {MAX_BRUTEFORCE_N} (cost n!), got {n}"
        )));
    }
    // Powers of the phase up to the maximum inversion count n(n-1)/2.
    let max_inv = (n * n.saturating_sub(1) / 2) as usize;
    let mut powers = Vec::with_capacity(max_inv + 1);
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..=max_inv {
        powers.push(p);
        p *= stat.f();
    }

    let mut perm: Vec<u32> = (0..n).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    loop {
        sum += powers[inversion_count(&perm)];
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(PermutationAmplitude { n, value: sum })
}

/// Number of pairs `(i, j)` with `i < j` but `perm[i] > perm[j]`.
fn inversion_count(perm: &[u32]) -> usize {
    let mut count = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                count += 1;
            }
        }
    }
    count
}

/// Advances `perm` to its lexicographic successor; false when already last.
fn next_permutation(perm: &mut [u32]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    // Find the rightmost ascent, swap in the next larger tail element,
    // then reverse the suffix.
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Occupation probability by direct permutation enumeration: `|amplitude|^2 / n!`.
pub fn probability_bruteforce(n: u32, stat: &StatisticsParameter) -> Result<OccupationProbability> {
    let amp = amplitude_bruteforce(n, stat)?;
    let mut factorial = 1.0;
    for m in 2..=n {
        factorial *= f64::from(m);
    }
    Ok(OccupationProbability {
        n,
        value: amp.value.norm_sqr() / factorial,
    })
}

/// Occupation probability by the closed product form.
///
/// `P(n) = (1/n!) * prod_{m=2}^{n} G_m` with
/// `G_m = 2([1] + [2] + ... + [m-1]) + [m]`; evaluated as `prod G_m / m`
/// so large `n` stays in floating range as long as the value itself does.
/// `P(0) = P(1) = 1` by the empty-product convention.
pub fn probability_closed(n: u32, stat: &StatisticsParameter) -> Result<OccupationProbability> {
    let mut value = 1.0;
    let mut bracket_sum = 0.0; // [1] + ... + [m-1], grown incrementally
    for m in 2..=n {
        bracket_sum += basic_number(f64::from(m - 1), stat)?.value;
        let g_m = 2.0 * bracket_sum + basic_number(f64::from(m), stat)?.value;
        value *= g_m / f64::from(m);
    }
    Ok(OccupationProbability { n, value })
}

/// Enhancement factor `F(n) = P(n+1)/P(n)` in its explicit sum form:
/// `(2[1] + 2[2] + ... + 2[n] + [n+1]) / (n+1)`.
pub fn enhancement_factor(n: u32, stat: &StatisticsParameter) -> Result<f64> {
    let mut bracket_sum = 0.0;
    for k in 1..=n {
        bracket_sum += basic_number(f64::from(k), stat)?.value;
    }
    let top = 2.0 * bracket_sum + basic_number(f64::from(n) + 1.0, stat)?.value;
    Ok(top / (f64::from(n) + 1.0))
}

/// Enhancement factor in closed form:
/// `F(n) = 4/(n+1) * ( [(n+1)/2] * cos(pi*alpha/2) )^2`,
/// with analytic dispatch at the endpoints (the bracket and the cosine
/// degenerate separately at alpha = 1 while their product stays finite).
pub fn enhancement_factor_closed(n: u32, stat: &StatisticsParameter) -> Result<f64> {
    if stat.is_bose() {
        return Ok(f64::from(n) + 1.0);
    }
    if stat.is_fermi() {
        return Ok(fermi_limit_enhancement(n));
    }
    let half = basic_number((f64::from(n) + 1.0) / 2.0, stat)?.value;
    let scaled = half * cos_pi(stat.alpha() / 2.0);
    Ok(4.0 / (f64::from(n) + 1.0) * scaled * scaled)
}

/// Closed-form enhancement factor extended to real (non-integer) occupation.
///
/// Evaluates `sin^2((nu+1)x) / ((nu+1) sin^2 x)`, which equals the bracket
/// form of [`enhancement_factor_closed`] algebraically but remains finite at
/// the alpha endpoints for every real `nu >= 0`.
pub fn enhancement_factor_real(nu: f64, stat: &StatisticsParameter) -> Result<f64> {
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::domain(format!(
            "enhancement factor needs occupation nu >= 0, got {nu}"
        )));
    }
    if stat.is_bose() {
        return Ok(nu + 1.0);
    }
    let alpha = stat.alpha();
    let s_top = sin_pi((nu + 1.0) * alpha / 2.0);
    let s_bot = sin_pi(alpha / 2.0); // equals 1 at alpha = 1
    Ok(s_top * s_top / ((nu + 1.0) * s_bot * s_bot))
}

/// The Fermi-limit enhancement pattern `{1, 0, 1/3, 0, 1/5, ...}`:
/// `1/(n+1)` for even `n`, `0` for odd `n`.
pub fn fermi_limit_enhancement(n: u32) -> f64 {
    if n % 2 == 0 {
        1.0 / (f64::from(n) + 1.0)
    } else {
        0.0
    }
}
