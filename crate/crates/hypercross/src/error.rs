use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter violates its basic precondition (non-positive threshold, zero dimension, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An operation was called outside the domain of the formula it evaluates.
    #[error("domain violation: {0}")]
    Domain(String),

    /// An enumeration or count exceeded the configured lattice cap.
    #[error("lattice cap exceeded (partial count {partial})")]
    CapExceeded { partial: u64 },

    /// Inputs outside the supported numeric range (e.g. thresholds above ~1e300).
    #[error("numeric range exceeded: {0}")]
    Range(String),

    /// The compensated series could not reach the requested accuracy.
    #[error("precision target not reachable (estimated relative error {achieved:.3e})")]
    PrecisionLoss { achieved: f64 },

    /// Adaptive quadrature failed to converge.
    #[error("quadrature failure: {0}")]
    Quadrature(String),

    /// Tridiagonal eigensolver did not converge.
    #[error("eigensolver failed to converge at index {0}")]
    EigenFailure(usize),

    /// A ratio against a zero norm is undefined.
    #[error("undefined ratio: coefficient set has zero norm")]
    ZeroNorm,

    /// Coefficients lie outside the support required by the operation.
    #[error("support violation: {0}")]
    SupportViolation(String),

    /// Malformed coefficient JSON.
    #[error("coefficient parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
