use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HornError {
    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("shift {shift} makes gamma negative for {subset}")]
    InvalidShift { subset: String, shift: i64 },

    #[error("cannot compose: {0}")]
    CompositionError(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("missing dependency: table Intersecting(d={d}, r={r}) is not in the store")]
    MissingDependency { d: usize, r: usize },

    #[error("tuple {0} is not stable under the chosen permutation")]
    NotSigmaStable(String),

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, HornError>;
