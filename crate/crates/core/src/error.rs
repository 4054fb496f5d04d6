use thiserror::Error;

/// Errors produced by the bound-computation pipeline.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure (quadrature, bisection) failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// No feasible gauge exists for the requested parameters.
    #[error("infeasible gauge: {0}")]
    Infeasible(String),

    /// Two inputs were built for different dimensions.
    #[error("dimension mismatch: expected n = {expected}, got n = {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Cache file I/O or parse failure.
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
