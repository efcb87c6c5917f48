//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed structural data (rotation mentions a non-neighbour, loops,
    /// duplicate edge ids, ...).
    #[error("structural error: {0}")]
    Structure(String),

    /// A documented operation precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Text format parse failure.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A configured enumeration or search budget was exceeded.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// An iterative numeric procedure failed to converge.
    #[error("no convergence after {iterations} iterations, residual {residual}")]
    NoConvergence { iterations: usize, residual: f64 },

    /// A validation check on user-supplied data failed.
    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
