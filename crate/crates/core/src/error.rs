use thiserror::Error;

/// Errors raised by construction, indexing and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An index, digit or shift lies outside its valid range.
    #[error("domain error: {0}")]
    Domain(String),
    /// Construction or operation parameters violate their preconditions.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// The requested sequence length exceeds the configured maximum.
    #[error("capacity error: length {length} exceeds the maximum of {max}")]
    Capacity { length: u128, max: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Parameter(_) => "parameter",
            Error::Capacity { .. } => "capacity",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
