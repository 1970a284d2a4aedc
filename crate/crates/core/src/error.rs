use thiserror::Error;

/// Errors raised by the algebra, linear algebra and report layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} strands vs {right} strands")]
    SizeMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("number of strands {0} outside supported range 1..={max}", max = crate::perm::MAX_N)]
    StrandCountOutOfRange(usize),

    #[error("not a permutation of 1..={n}: {image:?}")]
    NotAPermutation { n: usize, image: Vec<usize> },

    #[error("operands belong to different algebras")]
    ParamsMismatch,

    #[error("unsupported algebra parameters for {0}")]
    UnsupportedParams(&'static str),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("linear system has a positive-dimensional solution set")]
    NonUnique,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
