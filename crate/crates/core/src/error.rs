use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("scalars over different fields: q={0} and q={1}")]
    MismatchedQ(u32, u32),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("series coefficients do not commute")]
    NonCommutingCoefficients,
    #[error("no finite field of order {0} available")]
    UnsupportedFieldOrder(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension vector exceeds cap {cap}: total {total}")]
    DimsCapExceeded { cap: usize, total: usize },
    #[error("search of {size} elements exceeds budget {budget}")]
    SearchTooLarge { size: u128, budget: u128 },
    #[error("corrupt cache: {0}")]
    CorruptCache(String),
    #[error("leading term is ambiguous: incomparable degrees {0} and {1}")]
    AmbiguousLeadingTerm(String, String),
    #[error("Cartan entry {0} is not supported")]
    UnsupportedCartanEntry(i32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
