use thiserror::Error;

/// A word or diagram string that does not conform to its grammar.
///
/// `offset` is the byte offset into the input where the problem starts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram count {count} exceeds the cap of {cap}")]
    LimitExceeded { count: String, cap: u64 },

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
