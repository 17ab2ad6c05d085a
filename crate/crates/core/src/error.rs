use thiserror::Error;

/// Errors raised by parsing, validation, move application and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text; `pos` is a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid braid word: {0}")]
    InvalidBraid(String),

    #[error("invalid grid diagram: {0}")]
    InvalidGrid(String),

    #[error("invalid PD code: {0}")]
    InvalidPd(String),

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("move not applicable: {0}")]
    Inapplicable(String),

    #[error("{what} out of range: {value} (allowed {min}..={max})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("{crossings} crossings exceed the {what} cap of {cap}")]
    CapExceeded {
        what: &'static str,
        crossings: usize,
        cap: usize,
    },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// True for errors caused by a resource cap rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
