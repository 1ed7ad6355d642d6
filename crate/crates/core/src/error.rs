use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),
    #[error("duplicate simplex id `{0}`")]
    DuplicateId(String),
    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("simplicial identity violated: {0}")]
    Violation(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not a functor: {0}")]
    Functoriality(String),
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
