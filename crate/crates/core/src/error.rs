use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("radix sequence is empty")]
    EmptyRadices,

    #[error("radix m_{position} = {radix} is smaller than 2")]
    RadixTooSmall { position: usize, radix: usize },

    #[error("cumulative product M_{level} overflows the exact integer range")]
    Overflow { level: usize },

    #[error("operands belong to different radix structures")]
    StructureMismatch,

    #[error("{what} = {value} is out of range (allowed: {allowed})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        allowed: String,
    },

    #[error("level {level} is out of range (allowed: {allowed})")]
    LevelOutOfRange { level: usize, allowed: String },

    #[error("grid size {size} exceeds the oracle cap {cap}")]
    OracleCapExceeded { size: usize, cap: usize },

    #[error("Cesaro order {0} must be greater than -1")]
    OrderOutOfRange(f64),

    #[error("expected a table of order {expected}, found order {found}")]
    OrderMismatch { expected: f64, found: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("coefficient vector is identically zero")]
    ZeroVector,

    #[error("norm exponent {0} must be >= 1 or infinite")]
    BadExponent(f64),

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn out_of_range(
        what: &'static str,
        value: usize,
        allowed: impl Into<String>,
    ) -> Self {
        Error::OutOfRange {
            what,
            value,
            allowed: allowed.into(),
        }
    }

    pub(crate) fn level(level: usize, allowed: impl Into<String>) -> Self {
        Error::LevelOutOfRange {
            level,
            allowed: allowed.into(),
        }
    }
}
