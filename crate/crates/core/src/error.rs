use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("mode mismatch: cannot combine {left} and {right} scalars")]
    ModeMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    #[error("vanishing factor at j = {j} in {context}")]
    VanishingFactor { context: &'static str, j: i64 },
    #[error("rank must be at least 2, got {0}")]
    InvalidRank(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
