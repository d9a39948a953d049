use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands do not belong to the same structure (group, field, ring, dimension).
    #[error("structural mismatch: {0}")]
    Structural(String),
    /// A precondition on parameter values was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested size exceeds what the brute-force routines accept.
    #[error("capacity exceeded: {what} is {got}, limit is {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    /// The frame superoperator is singular below the inversion cutoff.
    #[error("measurement is not informationally complete (smallest frame eigenvalue {0:e})")]
    NotInformationallyComplete(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn structural<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Structural(msg.into()))
}
