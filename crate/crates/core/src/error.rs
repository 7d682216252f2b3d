use thiserror::Error;

/// Crate-wide error type.
///
/// Constructors validate aggressively; every variant names the operation or
/// parameter that was rejected so CLI callers can surface the message as-is.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("{0} requires a nonempty set")]
    EmptySet(&'static str),

    #[error("divergent sum: {0}")]
    Divergent(String),

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed file: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
