use thiserror::Error;

/// Errors raised by the numerical routines and experiment drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// Two points (or a point and a region) live on spheres of different dimension.
    #[error("dimension mismatch: expected S^{expected}, got S^{got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An iterative method did not converge.
    #[error("{method} did not converge: {detail}")]
    Convergence { method: &'static str, detail: String },

    /// Result would overflow the representable range.
    #[error("overflow in {func}: {detail}")]
    Overflow { func: &'static str, detail: String },

    /// A series that must converge (negative-order Sobolev norm) does not.
    /// This means non-membership, not a numerical fault.
    #[error("series diverges: {0}")]
    Divergence(String),

    /// Operation requested for a sphere dimension it does not support.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A coefficient beyond the available range was requested.
    #[error("coefficients available only up to degree {available}, need {requested}")]
    CoefficientRange { available: usize, requested: usize },

    /// Theorem hypotheses (support, membership, order) do not hold.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// A measurement cannot be fitted (zero values, too few points).
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("invalid configuration: {field}: {detail}")]
    Config { field: String, detail: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
