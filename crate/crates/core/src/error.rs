use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("quadrature missed tolerance {tolerance:e}: estimate {estimate} (error estimate {error:e})")]
    Quadrature { estimate: f64, error: f64, tolerance: f64 },

    #[error("sampling failed in trial {trial}: {reason}")]
    Sampling { trial: u64, reason: String },

    #[error("numerical inconsistency: {0}")]
    Numerical(String),

    #[error("degenerate data: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
