use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must contain at least one parenthesis type")]
    EmptyAlphabet,

    #[error("symbol at position {position} has type {kind}, alphabet only has {type_count} types")]
    TypeOutOfRange {
        position: usize,
        kind: u32,
        type_count: u32,
    },

    #[error("cannot parse symbol {token:?} at position {position}")]
    Parse { position: usize, token: String },

    #[error("exhaustive search is limited to {limit} symbols, got {len}")]
    TooLong { len: usize, limit: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("entry {value} at ({row}, {col}) is outside [-{range}, {range}]")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: i64,
        range: i64,
    },

    #[error("matrix is not {direction}-BD at ({row}, {col})")]
    NotBoundedDifference {
        direction: &'static str,
        row: usize,
        col: usize,
    },

    #[error("band is missing entry ({0}, {1})")]
    MissingBandEntry(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An internal consistency check failed; indicates a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
