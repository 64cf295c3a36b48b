use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("gcd({what}, d) must be 1 (got {value}, d = {d})")]
    NotCoprime { what: &'static str, value: u64, d: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("field of order {size} exceeds the table cap {cap}")]
    TableCap { size: u64, cap: u64 },
    #[error("{a} does not divide {d}")]
    NotDivisor { a: u32, d: u32 },
    #[error("zero element has no discrete logarithm or inverse")]
    ZeroElement,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("element is not a unit")]
    NotUnit,
    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: usize, right: usize },
    #[error("digit index {index} is beyond precision {precision}")]
    DigitOutOfRange { index: usize, precision: usize },
    #[error("precision budget exceeded: {0}")]
    PrecisionBudget(String),
    #[error("enumeration of {size} elements exceeds the cap {cap}")]
    EnumerationCap { size: u64, cap: u64 },
    #[error("no solution found: {0}")]
    NotFound(String),
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}
