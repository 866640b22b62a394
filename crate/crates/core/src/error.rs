use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p must be an odd prime (got {0})")]
    InvalidPrime(i64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("series has no inverse: constant term is zero")]
    NonUnitSeries,

    #[error("series exponential needs a zero constant term")]
    NonZeroConstant,

    #[error("partition enumeration limited to weight {threshold}, requested {requested}")]
    AboveThreshold { requested: u32, threshold: u32 },

    #[error("entry a[{row}][{col}] = {value} is not an integer")]
    NotIntegral {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("row {row} solve failed: {source}")]
    RowSolve {
        row: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed document: {0}")]
    Parse(String),
}
