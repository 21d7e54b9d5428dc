use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for dimension {dim} (indices are 1-based)")]
    VariableIndex { index: usize, dim: usize },

    #[error("invalid parameter a[{i},{j}] for d={d}, n={n}")]
    ParamIndex { i: usize, j: usize, d: usize, n: usize },

    #[error("invalid parameter table: {0}")]
    InvalidParams(String),

    #[error("invalid slot weights b: {0}")]
    InvalidWeights(String),

    #[error("degenerate direction data: first coordinates c[1..d][1] are all zero")]
    DegenerateDirection,

    #[error("invalid general spec: {0}")]
    InvalidSpec(String),

    #[error("weight {m} out of range 0..={max}")]
    WeightOutOfRange { m: usize, max: usize },

    #[error("order {m} exceeds the {available} available points")]
    OrderOutOfRange { m: usize, available: usize },

    #[error("basis does not contain the constant polynomial")]
    MissingConstant,

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
