use thiserror::Error;

/// Failure modes shared by every engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
