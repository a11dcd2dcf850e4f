//! Statistical mechanics of particles interpolating between Bose and Fermi
//! behaviour.
//!
//! A single parameter `alpha` in `[0, 1]` deforms the exchange phase of a
//! two-particle swap from `+1` (bosons, `alpha = 0`) to `-1` (fermions,
//! `alpha = 1`). Everything in this crate follows from that one deformation:
//!
//! - [`basic`] — the deformed integers `[nu] = sin(nu * pi * alpha) /
//!   sin(pi * alpha)` that replace ordinary counting, and their partial sums;
//! - [`amplitude`] — n-particle exchange amplitudes, both by explicit
//!   permutation sums and in product closed form, plus the enhancement factor
//!   governing transitions into an occupied state;
//! - [`solver`] — the occupation equation `e^t = rhs(n)` for one level at
//!   reduced energy `t`, solved by bracketed bisection on the physical branch;
//! - [`series`] — the small-occupation expansion of the equation and its
//!   power-series reversion `n(g)` in `g = e^t - a_0`;
//! - [`cf`] — the same reversion rearranged as a continued fraction whose
//!   convergents telescope to the series' partial sums;
//! - [`thermo`] — many-level equilibrium: chemical potential at fixed
//!   particle number, detailed-balance verification, and parameter sweeps.
//!
//! Occupations live on the branch `(0, 2/alpha - 1)`; the Bose endpoint is
//! handled in closed form and the Fermi endpoint by parity-split limits, so
//! every routine is continuous across `alpha in [0, 1]` including the ends.

pub mod amplitude;
pub mod basic;
pub mod cf;
pub mod error;
pub mod param;
pub mod series;
pub mod solver;
pub mod thermo;

pub use amplitude::{
    amplitude_bruteforce, enhancement_factor, enhancement_factor_closed, enhancement_factor_real,
    fermi_limit_enhancement, probability_bruteforce, probability_closed, OccupationProbability,
    PermutationAmplitude, MAX_BRUTEFORCE_N,
};
pub use basic::{
    basic_number, basic_number_sum, basic_number_sum_closed, basic_number_with_window,
    BasicNumberValue, DEFAULT_LIMIT_WINDOW,
};
pub use cf::{
    build_cf, convergent_at, eval_convergent, first_approximant, ContinuedFractionRep, Convergent,
    GPoly, TERMINATION_EPS,
};
pub use error::{Error, Result};
pub use param::{cos_pi, sin_pi, StatisticsParameter};
pub use series::{
    closed_form_a, eval_series, revert_series, rhs_series, RevertedSeries, SeriesCoefficients,
    TruncatedSeries, DEFAULT_ORDER,
};
pub use solver::{
    bose_distribution, branch_cap, rhs, solve_occupation, SolveResult, ThermoPoint, DEFAULT_TOL,
};
pub use thermo::{
    detailed_balance_residual, occupation_sweep, solve_fugacity, EnergyLevel, EquilibriumState,
    SweepMethod, SweepRow, SWEEP_CF_DEPTH, SWEEP_SERIES_ORDER,
};
