use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("element {element} out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("level {level} out of range for Z/{m} (expected 0 <= level < {m})")]
    LevelOutOfRange { level: i64, m: u32 },

    #[error("invalid Seifert data: {0}")]
    InvalidSeifert(String),

    #[error("matrix ({0} {1}; {2} {3}) is not unimodular")]
    NotUnimodular(i64, i64, i64, i64),

    #[error("vectors live in different torus spaces")]
    MismatchedSpace,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),

    #[error("work estimate {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
