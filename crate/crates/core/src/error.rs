use thiserror::Error;

use crate::algebra::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid variable context: {0}")]
    InvalidContext(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("Gröbner step budget of {budget} reduction steps exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("resolution did not terminate within {0} steps")]
    ResolutionTooLong(usize),

    #[error("invalid algebra: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Validation(Vec<Violation>),

    #[error("input is not reduced; the Rees algebra construction needs a reduced ring")]
    NotReduced,

    #[error("no nonzerodivisor found among {tries} candidate test elements (try another seed)")]
    TestElementExhausted { tries: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("case file: {0}")]
    CaseFile(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether this error signals resource exhaustion rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::ResolutionTooLong(_) | Error::TestElementExhausted { .. }
        )
    }

    /// Prefixes a parse error with the line it occurred on.
    pub fn at_line(self, line: usize) -> Error {
        match self {
            Error::Parse { column, message, .. } => Error::Parse { line, column, message },
            other => other,
        }
    }
}
