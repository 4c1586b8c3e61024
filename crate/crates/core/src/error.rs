use thiserror::Error;

/// Errors shared by the library modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} tensor factor(s), found {found}")]
    FactorCount { expected: usize, found: usize },
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },
    #[error("at most {limit} particles supported, got {found}")]
    TooManyParticles { limit: usize, found: usize },
    #[error("conditioning event has zero probability")]
    ZeroProbabilityEvent,
    #[error("malformed statistics tree: {0}")]
    MalformedTree(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
