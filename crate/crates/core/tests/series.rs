//! Expansion coefficients of the occupation equation, their closed-form
//! oracles, the series reversion, and the reconstruction round-trip.

use std::f64::consts::{FRAC_PI_2, PI};

use anyon_stats::{
    closed_form_a, eval_series, revert_series, rhs_series, solve_occupation, ThermoPoint,
    SeriesCoefficients, StatisticsParameter, TruncatedSeries, DEFAULT_TOL,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn stat(alpha: f64) -> StatisticsParameter {
    StatisticsParameter::new(alpha).expect("valid alpha")
}

fn series(alpha: f64, order: usize) -> SeriesCoefficients {
    rhs_series(&stat(alpha), order).expect("series coefficients")
}

#[test]
fn generated_coefficients_match_the_closed_forms() {
    // 21 equally spaced interior alphas.
    for i in 1..=21 {
        let alpha = f64::from(i) / 22.0;
        let coeffs = series(alpha, 3);
        for k in 0..=3 {
            let closed = closed_form_a(&stat(alpha), k).unwrap();
            assert!(
                (coeffs.a(k) - closed).abs() <= 1e-10,
                "a_{k} at alpha={alpha}: {} vs {closed}",
                coeffs.a(k)
            );
        }
    }
}

#[test]
fn half_statistics_printed_values() {
    let coeffs = series(0.5, 2);
    // a_0(1/2) = pi/2 - 1 — the generator reproduces it to the last bit.
    assert_eq!(coeffs.a(0), FRAC_PI_2 - 1.0);
    // a_1(1/2) = 1 - pi/2.
    assert!((coeffs.a(1) - (1.0 - FRAC_PI_2)).abs() <= 1e-15);
    // a_2(1/2) = a_0 - pi^3/48.
    let expected = coeffs.a(0) - PI.powi(3) / 48.0;
    assert!(
        (coeffs.a(2) - expected).abs() <= 1e-12,
        "a_2(1/2): {} vs {expected}",
        coeffs.a(2)
    );
}

#[test]
fn coefficients_approach_their_statistical_limits() {
    let near_bose = series(1e-4, 3);
    assert!((near_bose.a(0) - 1.0).abs() <= 1e-3);
    for k in 1..=3 {
        assert!(near_bose.a(k).abs() <= 1e-3, "a_{k} near alpha=0");
    }
    let near_fermi = series(1.0 - 1e-4, 0);
    assert!((near_fermi.a(0) + 1.0).abs() <= 1e-3);
}

#[test]
fn endpoint_series_are_analytic_limits() {
    let bose = series(0.0, 6);
    assert_eq!(bose.a(0), 1.0);
    for k in 1..=6 {
        assert_eq!(bose.a(k), 0.0);
    }
    let fermi = series(1.0, 3);
    assert_eq!(fermi.a(0), -1.0);
    for k in 0..=3 {
        assert!(fermi.a(k).is_finite());
    }
}

#[test]
fn reversion_identities_hold_over_random_alphas() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    for _ in 0..100 {
        let alpha: f64 = rng.random_range(0.0..1.0);
        let coeffs = series(alpha, 7);
        let rev = revert_series(&coeffs, 7).unwrap();
        let (a1, a2, a3, a4, a5) = (coeffs.a(1), coeffs.a(2), coeffs.a(3), coeffs.a(4), coeffs.a(5));
        let expected = [
            (2, 0.0),
            (3, a1),
            (4, a2),
            (5, 2.0 * a1 * a1 + a3),
            (6, 5.0 * a1 * a2 + a4),
            (7, 5.0 * a1.powi(3) + 6.0 * a1 * a3 + 3.0 * a2 * a2 + a5),
        ];
        for (k, value) in expected {
            assert!(
                (rev.alpha(k) - value).abs() <= 1e-12,
                "alpha_{k} at alpha={alpha}: {} vs {value}",
                rev.alpha(k)
            );
        }
    }
}

#[test]
fn bose_reversion_collapses_to_the_leading_term() {
    let rev = revert_series(&series(0.0, 8), 8).unwrap();
    assert_eq!(rev.alpha(1), 1.0);
    for k in 2..=8 {
        assert_eq!(rev.alpha(k), 0.0, "alpha_{k} in the Bose limit");
    }
}

#[test]
fn small_alpha_reversion_coefficients_shrink() {
    let rev = revert_series(&series(1e-3, 10), 10).unwrap();
    let worst = (3..=10).map(|k| rev.alpha(k).abs()).fold(0.0, f64::max);
    assert!(worst <= 1e-5, "max |alpha_k| at alpha=1e-3: {worst}");
}

#[test]
fn reversion_requires_enough_input_order() {
    assert!(revert_series(&series(0.3, 2), 10).is_err());
}

#[test]
fn evaluation_examples() {
    // Bose limit at g = e^t - 1, t = ln 2: the series is exactly 1/g = 1.
    let bose_rev = revert_series(&series(0.0, 8), 8).unwrap();
    assert!((eval_series(&bose_rev, 2.0_f64.ln().exp_m1()).unwrap() - 1.0).abs() <= 1e-14);
    // Large-g dominance of the leading term.
    let rev = revert_series(&series(0.45, 10), 10).unwrap();
    let g = 1e6;
    assert!((eval_series(&rev, g).unwrap() - 1.0 / g).abs() <= 10.0 / g.powi(3));
    // Cross-validation against the solver at alpha = 1/2, t = 3.
    let half = stat(0.5);
    let coeffs = rhs_series(&half, 10).unwrap();
    let rev10 = revert_series(&coeffs, 10).unwrap();
    let point = ThermoPoint::new(3.0).unwrap();
    let root = solve_occupation(point, &half, DEFAULT_TOL).unwrap().n;
    let approx = eval_series(&rev10, point.g(coeffs.a(0))).unwrap();
    assert!(
        (approx - root).abs() <= 1e-6,
        "series vs solver at alpha=1/2, t=3: {approx} vs {root}"
    );
}

#[test]
fn roundtrip_reconstructs_the_boltzmann_factor_on_a_t2_grid() {
    // At the low edge t = 2 the truncation error of K = 10 dominates; the
    // reconstruction is still good to 1e-6 relative across all alphas.
    for i in 1..=9 {
        let alpha = f64::from(i) / 10.0;
        let coeffs = series(alpha, 10);
        let rev = revert_series(&coeffs, 10).unwrap();
        let t = 2.0_f64;
        let g = t.exp() - coeffs.a(0);
        let n = eval_series(&rev, g).unwrap();
        let reconstructed = forward_eval(&coeffs, n);
        assert!(
            (reconstructed / t.exp() - 1.0).abs() <= 1e-6,
            "round-trip at alpha={alpha}, t=2"
        );
    }
}

/// Evaluates the forward expansion 1/n + a_0 + a_1 n + ... at a given n.
fn forward_eval(coeffs: &SeriesCoefficients, n: f64) -> f64 {
    let mut acc = 0.0;
    for k in (1..=coeffs.order()).rev() {
        acc = (acc + coeffs.a(k)) * n;
    }
    1.0 / n + coeffs.a(0) + acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Reversion round-trip: reconstructing e^t from the reverted value via
    /// the forward series holds to 1e-8 relative once t is clear of the
    /// convergence edge (truncation at K = 10 decays like g^{-12}).
    #[test]
    fn roundtrip_reconstructs_the_boltzmann_factor(
        alpha in 0.001..0.999_f64,
        t in 3.0..30.0_f64,
    ) {
        let coeffs = series(alpha, 10);
        let rev = revert_series(&coeffs, 10).unwrap();
        let g = t.exp() - coeffs.a(0);
        let n = eval_series(&rev, g).unwrap();
        let reconstructed = forward_eval(&coeffs, n);
        prop_assert!(
            (reconstructed / t.exp() - 1.0).abs() <= 1e-8,
            "round-trip at alpha={}, t={}: {} vs {}",
            alpha, t, reconstructed, t.exp()
        );
    }

    /// The reverted series always starts 1/g + 0/g^2 + ...
    #[test]
    fn reversion_leading_structure(alpha in 0.0001..0.9999_f64) {
        let rev = revert_series(&series(alpha, 6), 6).unwrap();
        prop_assert_eq!(rev.alpha(1), 1.0);
        prop_assert_eq!(rev.alpha(2), 0.0);
    }
}

#[test]
fn truncated_series_arithmetic_round_trips() {
    // (1 + 2n + 3n^2) * (1 - n) / (1 - n) recovers the original coefficients.
    let p = TruncatedSeries::from_coeffs(vec![1.0, 2.0, 3.0]).unwrap();
    let q = TruncatedSeries::from_coeffs(vec![1.0, -1.0, 0.0]).unwrap();
    let product = p.mul(&q);
    let back = product.div(&q).expect("unit-constant divisor");
    for k in 0..=2 {
        assert!((back.coeff(k) - p.coeff(k)).abs() <= 1e-15);
    }
    // Composition with the zero-constant inner series 2n: coefficients scale
    // by powers of two.
    let inner = TruncatedSeries::from_coeffs(vec![0.0, 2.0, 0.0]).unwrap();
    let composed = p.compose(&inner).expect("zero-constant inner series");
    assert_eq!(composed.coeff(0), 1.0);
    assert_eq!(composed.coeff(1), 4.0);
    assert_eq!(composed.coeff(2), 12.0);
}
