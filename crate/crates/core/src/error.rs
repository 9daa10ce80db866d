use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid symbol {0:?}: expected one of 0, 1, 2")]
    InvalidSymbol(char),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("coordinate deletion merges words {0} and {1}")]
    Collision(String, String),

    #[error("generator matrix has rank {rank}, expected {rows}")]
    RankDeficient { rank: usize, rows: usize },

    #[error("zero column at index {0}")]
    ZeroColumn(usize),

    #[error("point set does not span F_3^{0}")]
    NotSpanning(usize),

    #[error("work budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("no verified set found after {attempts} attempts ({lines} lines each)")]
    ConstructionFailed { attempts: usize, lines: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn out_of_range(msg: impl Into<String>) -> Error {
    Error::OutOfRange(msg.into())
}
