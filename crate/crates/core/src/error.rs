use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("value `{0}` has no exact rational representation")]
    NotRational(String),

    #[error("cannot mix exact and float scalars in one computation")]
    ModeMismatch,

    #[error("r must lie strictly between 0 and 1, got {0}")]
    RNotInUnitInterval(String),

    #[error("index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("no closed form available: {0}")]
    NoClosedForm(String),

    #[error("sequence must be bounded: {0}")]
    Unbounded(String),

    #[error("sweep did not converge: {0}")]
    NonConvergence(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io { .. } => 2,
            Error::NonConvergence(_) => 4,
            _ => 3,
        }
    }
}
