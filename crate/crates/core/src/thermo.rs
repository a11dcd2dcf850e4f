//! Multi-level equilibrium: chemical potential at fixed particle number,
//! detailed-balance verification, and occupation sweeps over parameter grids.

use crate::amplitude::enhancement_factor_real;
use crate::cf::{build_cf, eval_convergent, first_approximant, ContinuedFractionRep};
use crate::error::{Error, Result};
use crate::param::StatisticsParameter;
use crate::series::{eval_series, revert_series, rhs_series, RevertedSeries};
use crate::solver::{branch_cap, rhs, solve_occupation, ThermoPoint, DEFAULT_TOL};

/// Relative tolerance on the particle-number constraint.
const NUMBER_TOL: f64 = 1e-8;

/// Bisection iteration budget for the chemical potential.
const MAX_MU_ITERATIONS: usize = 200;

/// Maximum number of geometric bracket expansions for the chemical potential.
const MAX_EXPANSIONS: usize = 10;

/// One energy level with its degeneracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    /// Level energy (arbitrary units; enters only through `beta * E`).
    pub energy: f64,
    /// Number of states at this energy (at least 1).
    pub degeneracy: u32,
}

impl EnergyLevel {
    /// Builds a level, validating finiteness and `degeneracy >= 1`.
    pub fn new(energy: f64, degeneracy: u32) -> Result<Self> {
        if !energy.is_finite() {
            return Err(Error::domain(format!("level energy must be finite, got {energy}")));
        }
        if degeneracy == 0 {
            return Err(Error::domain("level degeneracy must be at least 1"));
        }
        Ok(Self { energy, degeneracy })
    }
}

/// A solved many-level equilibrium at fixed particle number.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumState {
    /// Inverse temperature.
    pub beta: f64,
    /// Chemical potential satisfying the particle-number constraint.
    pub mu: f64,
    /// Mean occupation per level, aligned with the input level list.
    pub occupations: Vec<f64>,
    /// Total particle number `sum(degeneracy * occupation)`.
    pub total: f64,
}

/// Solves every level's occupation at the given chemical potential.
fn occupations_at(
    levels: &[EnergyLevel],
    beta: f64,
    mu: f64,
    stat: &StatisticsParameter,
) -> Result<Vec<f64>> {
    levels
        .iter()
        .map(|level| {
            let point = ThermoPoint::new(beta * (level.energy - mu))?;
            Ok(solve_occupation(point, stat, DEFAULT_TOL)?.n)
        })
        .collect()
}

fn total_of(levels: &[EnergyLevel], occupations: &[f64]) -> f64 {
    levels
        .iter()
        .zip(occupations)
        .map(|(level, n)| f64::from(level.degeneracy) * n)
        .sum()
}

/// Finds the chemical potential at which the levels hold `n_total` particles.
///
/// Bisects on `mu`, starting from `[min E - 50/beta, max E + 50/beta]` and
/// expanding geometrically up to 10 times if the target lies outside; on the
/// Bose endpoint the upper bound is clamped just below `min E` instead (the
/// occupation diverges there, so every `n_total` is reachable below it).
/// The evaluated `(mu, total)` trace is checked for monotonicity afterwards;
/// a violation is reported as an error rather than returning a doubtful root.
pub fn solve_fugacity(
    levels: &[EnergyLevel],
    beta: f64,
    n_total: f64,
    stat: &StatisticsParameter,
) -> Result<EquilibriumState> {
    if levels.is_empty() {
        return Err(Error::domain("at least one energy level is required"));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive and finite, got {beta}")));
    }
    if !(n_total > 0.0) || !n_total.is_finite() {
        return Err(Error::domain(format!(
            "target particle number must be positive, got {n_total}"
        )));
    }
    let cap = branch_cap(stat);
    if cap.is_finite() {
        let bound: f64 = levels
            .iter()
            .map(|level| f64::from(level.degeneracy) * cap)
            .sum();
        if n_total >= bound {
            return Err(Error::Capacity {
                requested: n_total,
                bound,
            });
        }
    }

    let min_e = levels.iter().map(|l| l.energy).fold(f64::INFINITY, f64::min);
    let max_e = levels.iter().map(|l| l.energy).fold(f64::NEG_INFINITY, f64::max);
    let mut trace: Vec<(f64, f64)> = Vec::new();
    let eval = |mu: f64, trace: &mut Vec<(f64, f64)>| -> Result<f64> {
        let occ = occupations_at(levels, beta, mu, stat)?;
        let total = total_of(levels, &occ);
        trace.push((mu, total));
        Ok(total)
    };

    let mut lo = min_e - 50.0 / beta;
    let mut hi = if stat.is_bose() {
        // The Bose occupation diverges as mu -> min E from below; stay under it.
        min_e - (1e-13 * (1.0 + min_e.abs())).max(f64::MIN_POSITIVE)
    } else {
        max_e + 50.0 / beta
    };

    let mut total_lo = eval(lo, &mut trace)?;
    let mut expansions = 0;
    while total_lo > n_total && expansions < MAX_EXPANSIONS {
        lo -= (hi - lo).abs().max(1.0);
        total_lo = eval(lo, &mut trace)?;
        expansions += 1;
    }
    let mut total_hi = eval(hi, &mut trace)?;
    expansions = 0;
    while total_hi < n_total && expansions < MAX_EXPANSIONS {
        if stat.is_bose() {
            // Move the clamp closer to min E; the occupation grows without bound.
            let gap = min_e - hi;
            hi = min_e - gap * 1e-3;
        } else {
            hi += (hi - lo).abs().max(1.0);
        }
        total_hi = eval(hi, &mut trace)?;
        expansions += 1;
    }
    if total_lo > n_total || total_hi < n_total {
        return Err(Error::Bracket {
            lo,
            hi,
            context: format!(
                "particle number {n_total} not bracketed: totals [{total_lo}, {total_hi}]"
            ),
        });
    }

    let mut result = None;
    for _ in 0..MAX_MU_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let total_mid = eval(mid, &mut trace)?;
        if ((total_mid - n_total) / n_total).abs() <= NUMBER_TOL {
            result = Some(mid);
            break;
        }
        if total_mid < n_total {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mu = result.ok_or(Error::IterationLimit {
        limit: MAX_MU_ITERATIONS,
        residual: (eval(0.5 * (lo + hi), &mut trace)? - n_total) / n_total,
    })?;

    // Monotonicity audit over everything we evaluated: total(mu) must be
    // nondecreasing in mu (up to solver noise).
    trace.sort_by(|a, b| a.0.total_cmp(&b.0));
    let slack = 1e-9 * (1.0 + n_total.abs());
    for window in trace.windows(2) {
        let (mu_a, total_a) = window[0];
        let (mu_b, total_b) = window[1];
        if total_a > total_b + slack {
            return Err(Error::Monotonicity {
                mu_lo: mu_a,
                mu_hi: mu_b,
                total_lo: total_a,
                total_hi: total_b,
            });
        }
    }

    let occupations = occupations_at(levels, beta, mu, stat)?;
    let total = total_of(levels, &occupations);
    Ok(EquilibriumState {
        beta,
        mu,
        occupations,
        total,
    })
}

/// Worst pairwise violation of the detailed-balance condition
/// `n_i F(n_j) e^{beta E_i} = n_j F(n_i) e^{beta E_j}`, as a relative
/// imbalance; zero for fewer than two levels.
pub fn detailed_balance_residual(
    state: &EquilibriumState,
    levels: &[EnergyLevel],
    stat: &StatisticsParameter,
) -> Result<f64> {
    if state.occupations.len() != levels.len() {
        return Err(Error::domain(format!(
            "state holds {} occupations for {} levels",
            state.occupations.len(),
            levels.len()
        )));
    }
    if let Some(bad) = state.occupations.iter().find(|n| !(**n > 0.0)) {
        return Err(Error::domain(format!(
            "detailed balance needs positive occupations, found {bad}"
        )));
    }
    let enhancements: Vec<f64> = state
        .occupations
        .iter()
        .map(|&n| enhancement_factor_real(n, stat))
        .collect::<Result<_>>()?;
    let mut worst = 0.0_f64;
    for i in 0..levels.len() {
        for j in i + 1..levels.len() {
            let flow_ij = state.occupations[i]
                * enhancements[j]
                * (state.beta * levels[i].energy).exp();
            let flow_ji = state.occupations[j]
                * enhancements[i]
                * (state.beta * levels[j].energy).exp();
            let scale = flow_ij.abs().max(flow_ji.abs());
            if scale > 0.0 {
                worst = worst.max((flow_ij - flow_ji).abs() / scale);
            }
        }
    }
    Ok(worst)
}

/// Method selector for [`occupation_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMethod {
    /// Bracketed root-finding on the occupation equation (ground truth).
    Solver,
    /// Reverted power series, evaluated at order 10.
    Series,
    /// Continued fraction, evaluated at depth 8 (or its early termination).
    Cf,
    /// The closed first approximation `1/(e^t - a_0)`.
    FirstApprox,
}

impl SweepMethod {
    /// The column label used in tabular output.
    pub fn label(&self) -> &'static str {
        match self {
            SweepMethod::Solver => "solver",
            SweepMethod::Series => "series",
            SweepMethod::Cf => "cf",
            SweepMethod::FirstApprox => "first-approx",
        }
    }
}

/// Series order used by [`SweepMethod::Series`].
pub const SWEEP_SERIES_ORDER: usize = 10;

/// Fraction depth used by [`SweepMethod::Cf`].
pub const SWEEP_CF_DEPTH: usize = 8;

/// One row of an occupation sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Statistics parameter of this row.
    pub alpha: f64,
    /// Reduced energy of this row.
    pub t: f64,
    /// Method that produced the value.
    pub method: SweepMethod,
    /// Occupation value; absent when the point failed.
    pub n: Option<f64>,
    /// `|log rhs(n) - t|` of the produced value; absent when the point failed.
    pub residual: Option<f64>,
    /// "ok" or a short failure code.
    pub status: &'static str,
}

/// Per-alpha precomputation shared by every t-point of a sweep row group.
enum Prepared {
    Direct,
    Series { a0: f64, rev: RevertedSeries },
    Cf { a0: f64, cf: ContinuedFractionRep },
}

fn prepare(stat: &StatisticsParameter, method: SweepMethod) -> Result<Prepared> {
    match method {
        SweepMethod::Solver | SweepMethod::FirstApprox => Ok(Prepared::Direct),
        SweepMethod::Series => {
            let coeffs = rhs_series(stat, SWEEP_SERIES_ORDER)?;
            let rev = revert_series(&coeffs, SWEEP_SERIES_ORDER)?;
            Ok(Prepared::Series { a0: coeffs.a(0), rev })
        }
        SweepMethod::Cf => {
            let coeffs = rhs_series(stat, SWEEP_CF_DEPTH + 1)?;
            let rev = revert_series(&coeffs, SWEEP_CF_DEPTH + 1)?;
            let cf = build_cf(&rev, SWEEP_CF_DEPTH)?;
            Ok(Prepared::Cf { a0: coeffs.a(0), cf })
        }
    }
}

/// Computes an occupation table over the alpha and t grids with one method.
///
/// Rows appear alpha-major, then in t order. Per-point failures are recorded
/// in the row's status and never abort the sweep.
pub fn occupation_sweep(
    stats: &[StatisticsParameter],
    t_grid: &[f64],
    method: SweepMethod,
) -> Vec<SweepRow> {
    let mut rows = Vec::with_capacity(stats.len() * t_grid.len());
    for stat in stats {
        let prepared = prepare(stat, method);
        for &t in t_grid {
            let row = match &prepared {
                Ok(prep) => sweep_point(stat, t, method, prep),
                Err(err) => Err(err.clone()),
            };
            rows.push(match row {
                Ok((n, residual)) => SweepRow {
                    alpha: stat.alpha(),
                    t,
                    method,
                    n: Some(n),
                    residual: Some(residual),
                    status: "ok",
                },
                Err(err) => SweepRow {
                    alpha: stat.alpha(),
                    t,
                    method,
                    n: None,
                    residual: None,
                    status: err.status_code(),
                },
            });
        }
    }
    rows
}

/// Computes one sweep value plus its equation residual.
fn sweep_point(
    stat: &StatisticsParameter,
    t: f64,
    method: SweepMethod,
    prep: &Prepared,
) -> Result<(f64, f64)> {
    let point = ThermoPoint::new(t)?;
    let n = match (method, prep) {
        (SweepMethod::Solver, _) => solve_occupation(point, stat, DEFAULT_TOL)?.n,
        (SweepMethod::FirstApprox, _) => first_approximant(stat, t)?,
        (_, Prepared::Series { a0, rev }) => eval_series(rev, point.g(*a0))?,
        (_, Prepared::Cf { a0, cf }) => eval_convergent(cf, point.g(*a0), cf.depth())?,
        (_, Prepared::Direct) => unreachable!("series/cf sweeps prepare their expansion"),
    };
    let residual = (rhs(n, stat)?.ln() - t).abs();
    Ok((n, residual))
}
