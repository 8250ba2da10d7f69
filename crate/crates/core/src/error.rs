use thiserror::Error;

/// Failure while reading a colored word from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("value {value} out of range 1..={n}")]
    ValueOutOfRange { value: u64, n: u32 },
    #[error("value {0} appears more than once")]
    RepeatedValue(u32),
    #[error("color {color} not below {colors}")]
    ColorOutOfRange { color: u64, colors: u32 },
    #[error("word has {found} letters, expected {expected}")]
    WrongLength { found: usize, expected: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("group of size {size} exceeds the element budget {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("{identity} requires {expected} c, got c = {c}")]
    ParityMismatch {
        identity: &'static str,
        expected: &'static str,
        c: u32,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("value sets of the two words overlap")]
    OverlappingWords,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
