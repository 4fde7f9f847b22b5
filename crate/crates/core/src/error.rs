use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },
    #[error("signal length {found} does not match group order {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),
    #[error("window must be non-zero")]
    ZeroWindow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operator is not invertible: {0}")]
    NotInvertible(String),
    #[error("commutation relation violated at phase point index {index}: {reason}")]
    CommutationViolated { index: usize, reason: String },
    #[error("system is not a frame (lower bound {lower:e})")]
    NotAFrame { lower: f64 },
    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
