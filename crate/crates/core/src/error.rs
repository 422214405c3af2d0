use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2..=251")]
    NotPrime(u32),

    #[error("symbol {symbol} is out of range for GF({p})")]
    SymbolOutOfRange { symbol: u32, p: u8 },

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u8, right: u8 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("operation requires a binary code, got GF({0})")]
    UnsupportedField(u8),

    #[error("generator row {row} is linearly dependent on the rows above it")]
    RankDeficient { row: usize },

    #[error("coordinate {coordinate} is out of range for length {n}")]
    CoordinateOutOfRange { coordinate: usize, n: usize },

    #[error("{what} exceeds the supported limit of {limit}")]
    Capacity { what: String, limit: usize },

    #[error("transform hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("transform postcondition violated: {0}")]
    TheoremViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown artifact `{0}`")]
    UnknownArtifact(String),

    #[error("record integrity check failed: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
