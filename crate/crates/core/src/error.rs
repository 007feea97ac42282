use thiserror::Error;

use crate::rank::Certificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid degree {0}: must be between 1 and {max}", max = crate::transform::MAX_DEGREE)]
    InvalidDegree(usize),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("point {0} repeated in cycle")]
    RepeatedPoint(usize),

    #[error("transformation is not invertible")]
    NotInvertible,

    #[error("wreath shape mismatch: ({n1},{m1}) vs ({n2},{m2})")]
    ShapeMismatch {
        n1: usize,
        m1: usize,
        n2: usize,
        m2: usize,
    },

    #[error("transformation does not preserve the partition into {block_count} blocks of size {block_size}")]
    NotPartitionPreserving {
        block_size: usize,
        block_count: usize,
    },

    #[error("unsupported case n={n}, m={m}: {identity}")]
    UnsupportedCase {
        n: usize,
        m: usize,
        identity: String,
    },

    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),

    #[error("invalid closure limit {0}")]
    InvalidLimit(usize),

    #[error("closure exceeded limit of {limit} elements ({partial} enumerated)")]
    LimitExceeded { limit: usize, partial: usize },

    #[error("element is not a member of the monoid")]
    NotAMember,

    #[error("search budget of {budget} closure calls exceeded at size {size}")]
    BudgetExceeded {
        budget: u64,
        size: usize,
        partial: Box<Certificate>,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
