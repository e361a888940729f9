use thiserror::Error;

/// Errors raised by the library layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: u8, found: u8 },

    #[error("ambient dimension {0} out of range")]
    DimensionOutOfRange(usize),

    #[error("point {point:#x} is not a nonzero vector of dimension {dim}")]
    InvalidPoint { point: u32, dim: u8 },

    #[error("duplicate point {0:#x}")]
    DuplicatePoint(u32),

    #[error("linear map is not injective on {0:#x}")]
    NotInjective(u32),

    #[error("field degree {0} out of range (1..=16)")]
    FieldDegreeOutOfRange(u32),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("graph edge {0} is a loop")]
    LoopEdge(u32),

    #[error("edge set {0:?} is not a bond")]
    NotABond(Vec<u32>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
