//! Many-level equilibrium: chemical-potential solving, the detailed-balance
//! audit, and occupation sweeps.

use std::f64::consts::{E, FRAC_PI_2};

use anyon_stats::{
    bose_distribution, detailed_balance_residual, enhancement_factor_real, occupation_sweep,
    solve_fugacity, EnergyLevel, EquilibriumState, Error, StatisticsParameter, SweepMethod,
};

fn stat(alpha: f64) -> StatisticsParameter {
    StatisticsParameter::new(alpha).expect("valid alpha")
}

fn level(energy: f64, degeneracy: u32) -> EnergyLevel {
    EnergyLevel::new(energy, degeneracy).expect("valid level")
}

/// The five-level test system used throughout.
fn bench_levels() -> Vec<EnergyLevel> {
    vec![
        level(0.0, 1),
        level(0.5, 2),
        level(1.0, 1),
        level(1.7, 3),
        level(2.2, 1),
    ]
}

#[test]
fn single_bose_level_pins_the_chemical_potential() {
    // One nondegenerate level at E = 0 holding one boson: 1/(e^{-mu} - 1) = 1
    // gives mu = -ln 2 exactly.
    let state = solve_fugacity(&[level(0.0, 1)], 1.0, 1.0, &stat(0.0)).unwrap();
    assert!((state.mu + 2.0_f64.ln()).abs() <= 1e-7, "mu = {}", state.mu);
    assert!((state.total - 1.0).abs() <= 1e-8);
    assert_eq!(state.occupations.len(), 1);
    assert!((state.occupations[0] - 1.0).abs() <= 1e-7);
}

#[test]
fn fermi_capacity_is_a_hard_bound() {
    // A single nondegenerate level at the exclusion endpoint holds < 1.
    match solve_fugacity(&[level(0.0, 1)], 1.0, 1.0, &stat(1.0)) {
        Err(Error::Capacity { requested, bound }) => {
            assert_eq!(requested, 1.0);
            assert_eq!(bound, 1.0);
        }
        other => panic!("expected a capacity error, got {other:?}"),
    }
    // Just under the bound is solvable.
    let state = solve_fugacity(&[level(0.0, 1)], 1.0, 0.999, &stat(1.0)).unwrap();
    assert!((state.total - 0.999).abs() / 0.999 <= 1e-8);
    assert!(state.occupations[0] < 1.0);

    // Degeneracy scales the bound.
    assert!(matches!(
        solve_fugacity(&[level(0.0, 2)], 1.0, 2.0, &stat(1.0)),
        Err(Error::Capacity { .. })
    ));
    let nearly_full = solve_fugacity(&[level(0.0, 2)], 1.0, 1.998, &stat(1.0)).unwrap();
    assert!((nearly_full.total - 1.998).abs() / 1.998 <= 1e-8);
}

#[test]
fn degenerate_copies_of_a_level_share_their_occupation() {
    let levels = [level(1.3, 1), level(1.3, 4)];
    let state = solve_fugacity(&levels, 0.7, 2.0, &stat(0.6)).unwrap();
    assert_eq!(state.occupations[0], state.occupations[1]);
    assert!((state.total - 2.0).abs() / 2.0 <= 1e-8);
}

#[test]
fn five_level_equilibrium_balances_in_detail() {
    let levels = bench_levels();
    for &alpha in &[0.25, 0.5, 0.75] {
        let s = stat(alpha);
        let state = solve_fugacity(&levels, 1.0, 2.5, &s).unwrap();
        assert!(
            (state.total - 2.5).abs() / 2.5 <= 1e-8,
            "total = {} at alpha = {alpha}",
            state.total
        );

        // Pairwise detailed balance.
        let residual = detailed_balance_residual(&state, &levels, &s).unwrap();
        assert!(residual <= 1e-8, "imbalance {residual} at alpha = {alpha}");

        // The per-level fugacity z_i = n_i / F(n_i) * e^{beta E_i} must be a
        // level-independent constant equal to e^{beta mu}.
        let z_target = (state.beta * state.mu).exp();
        for (lvl, &n) in levels.iter().zip(&state.occupations) {
            let z = n / enhancement_factor_real(n, &s).unwrap() * (state.beta * lvl.energy).exp();
            assert!(
                (z - z_target).abs() / z_target <= 1e-8,
                "fugacity {z} vs {z_target} at E = {}, alpha = {alpha}",
                lvl.energy
            );
        }

        // Occupation decreases with energy.
        for pair in state.occupations.windows(2) {
            assert!(pair[0] > pair[1]);
        }
    }
}

#[test]
fn perturbing_one_occupation_breaks_the_balance() {
    let levels = bench_levels();
    let s = stat(0.5);
    let mut state = solve_fugacity(&levels, 1.0, 2.5, &s).unwrap();
    state.occupations[0] *= 1.1;
    let residual = detailed_balance_residual(&state, &levels, &s).unwrap();
    assert!(residual >= 0.01, "perturbation went unnoticed: {residual}");
}

#[test]
fn single_level_balance_is_trivially_exact() {
    let levels = [level(0.5, 2)];
    let s = stat(0.3);
    let state = solve_fugacity(&levels, 1.0, 1.0, &s).unwrap();
    assert_eq!(detailed_balance_residual(&state, &levels, &s).unwrap(), 0.0);
}

#[test]
fn balance_audit_validates_its_inputs() {
    let levels = bench_levels();
    let s = stat(0.5);
    let state = solve_fugacity(&levels, 1.0, 2.5, &s).unwrap();
    // Mismatched level list.
    assert!(matches!(
        detailed_balance_residual(&state, &levels[..3], &s),
        Err(Error::Domain(_))
    ));
    // Nonpositive occupations.
    let broken = EquilibriumState {
        beta: 1.0,
        mu: 0.0,
        occupations: vec![0.0, 0.0],
        total: 0.0,
    };
    assert!(matches!(
        detailed_balance_residual(&broken, &levels[..2], &s),
        Err(Error::Domain(_))
    ));
}

#[test]
fn bose_sweep_rows_match_the_distribution() {
    let rows = occupation_sweep(&[stat(0.0)], &[1.0, 2.0], SweepMethod::Solver);
    assert_eq!(rows.len(), 2);
    for (row, &t) in rows.iter().zip(&[1.0, 2.0]) {
        assert_eq!(row.status, "ok");
        assert_eq!(row.method, SweepMethod::Solver);
        let n = row.n.unwrap();
        assert!((n - bose_distribution(t).unwrap()).abs() <= 1e-12);
        assert!(row.residual.unwrap() <= 1e-12);
    }
}

#[test]
fn first_approximation_sweep_value() {
    let rows = occupation_sweep(&[stat(0.5)], &[1.0], SweepMethod::FirstApprox);
    let expected = 1.0 / (E - (FRAC_PI_2 - 1.0));
    assert!((rows[0].n.unwrap() - expected).abs() <= 1e-15);
}

#[test]
fn sweep_rows_come_out_alpha_major() {
    let rows = occupation_sweep(&[stat(0.25), stat(0.5)], &[2.0, 3.0], SweepMethod::Solver);
    let expected = [(0.25, 2.0), (0.25, 3.0), (0.5, 2.0), (0.5, 3.0)];
    assert_eq!(rows.len(), expected.len());
    for (row, &(alpha, t)) in rows.iter().zip(&expected) {
        assert_eq!((row.alpha, row.t), (alpha, t));
        assert_eq!(row.status, "ok");
        assert!(row.residual.unwrap() <= 1e-12);
    }
}

#[test]
fn sweep_records_failures_and_continues() {
    // e^{-3} sits below a_0(0.2), so the first approximant has no value
    // there; the sweep must mark the row and keep going.
    let rows = occupation_sweep(&[stat(0.2)], &[-3.0, 3.0], SweepMethod::FirstApprox);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].status, "domain-error");
    assert_eq!(rows[0].n, None);
    assert_eq!(rows[0].residual, None);
    assert_eq!(rows[1].status, "ok");
    assert!(rows[1].n.unwrap() > 0.0);
}

#[test]
fn expansion_sweeps_track_the_solver() {
    let solver = occupation_sweep(&[stat(0.75)], &[3.0], SweepMethod::Solver);
    let series = occupation_sweep(&[stat(0.75)], &[3.0], SweepMethod::Series);
    let cf = occupation_sweep(&[stat(0.75)], &[3.0], SweepMethod::Cf);
    let root = solver[0].n.unwrap();
    assert!((series[0].n.unwrap() - root).abs() <= 1e-9);
    assert!((cf[0].n.unwrap() - root).abs() <= 1e-9);
    assert!(series[0].residual.unwrap() <= 1e-8);
    assert!(cf[0].residual.unwrap() <= 1e-8);
}

#[test]
fn method_labels_are_stable() {
    assert_eq!(SweepMethod::Solver.label(), "solver");
    assert_eq!(SweepMethod::Series.label(), "series");
    assert_eq!(SweepMethod::Cf.label(), "cf");
    assert_eq!(SweepMethod::FirstApprox.label(), "first-approx");
}

#[test]
fn equilibrium_inputs_are_validated() {
    assert!(EnergyLevel::new(f64::NAN, 1).is_err());
    assert!(EnergyLevel::new(0.0, 0).is_err());
    let levels = [level(0.0, 1)];
    let s = stat(0.5);
    assert!(matches!(solve_fugacity(&[], 1.0, 1.0, &s), Err(Error::Domain(_))));
    assert!(solve_fugacity(&levels, 0.0, 1.0, &s).is_err());
    assert!(solve_fugacity(&levels, -1.0, 1.0, &s).is_err());
    assert!(solve_fugacity(&levels, f64::NAN, 1.0, &s).is_err());
    assert!(solve_fugacity(&levels, 1.0, 0.0, &s).is_err());
    assert!(solve_fugacity(&levels, 1.0, -2.0, &s).is_err());
    assert!(solve_fugacity(&levels, 1.0, f64::NAN, &s).is_err());
}
