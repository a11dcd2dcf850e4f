//! Error type shared by every module in the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the library.
///
/// Variants are deliberately coarse: callers branch on the *kind* of failure
/// (domain vs. bracketing vs. capacity), while the payload carries enough
/// context to produce a useful diagnostic.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A request exceeds a hard structural bound (enumeration size, series order, ...).
    #[error("size error: {0}")]
    Size(String),

    /// A bracketing search found no sign change on the scanned interval.
    #[error("no sign change on ({lo:e}, {hi:e}): {context}")]
    Bracket { lo: f64, hi: f64, context: String },

    /// A continued-fraction convergent hit a vanishing denominator.
    #[error("convergent denominator vanished at level {m}, g = {g}")]
    Pole { m: usize, g: f64 },

    /// Requested particle number meets or exceeds what the levels can hold.
    #[error("requested particle number {requested} reaches the saturation bound {bound}")]
    Capacity { requested: f64, bound: f64 },

    /// The total occupation failed to increase with the chemical potential.
    #[error(
        "total occupation not monotone in mu: total({mu_lo}) = {total_lo} \
         exceeds total({mu_hi}) = {total_hi}"
    )]
    Monotonicity {
        mu_lo: f64,
        mu_hi: f64,
        total_lo: f64,
        total_hi: f64,
    },

    /// An iterative refinement ran out of its iteration budget.
    #[error("iteration limit {limit} reached before convergence (last residual {residual:e})")]
    IterationLimit { limit: usize, residual: f64 },
}

impl Error {
    /// Convenience constructor for [`Error::Domain`].
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Convenience constructor for [`Error::Size`].
    pub fn size(msg: impl Into<String>) -> Self {
        Error::Size(msg.into())
    }

    /// Short machine-readable label, used as the status column in tabular
    /// output (kept free of commas and spaces on purpose).
    pub fn status_code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain-error",
            Error::Size(_) => "size-error",
            Error::Bracket { .. } => "bracket-error",
            Error::Pole { .. } => "pole-error",
            Error::Capacity { .. } => "capacity-error",
            Error::Monotonicity { .. } => "monotonicity-error",
            Error::IterationLimit { .. } => "iteration-limit",
        }
    }
}
