use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure classes. Each maps onto one process exit code of the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Parse(String),

    #[error("{0}")]
    NumericalFailure(String),

    /// Neither V nor its complement produced a nonnegative vector. Mathematically
    /// impossible, so this always signals a numerical breakdown.
    #[error("{0}")]
    PropositionViolation(String),

    #[error("{0}")]
    Verification(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Machine-greppable code printed in front of every CLI error line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Usage(_) => "E_USAGE",
            Error::Parse(_) => "E_PARSE",
            Error::NumericalFailure(_) => "E_NUMERICAL",
            Error::PropositionViolation(_) => "E_PROPOSITION_VIOLATION",
            Error::Verification(_) => "E_VERIFY",
            Error::Io { .. } => "E_IO",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Parse(_) | Error::Io { .. } => 1,
            Error::NumericalFailure(_) | Error::PropositionViolation(_) => 2,
            Error::Verification(_) => 3,
        }
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::NumericalFailure(msg.into())
    }
}
