use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {field}: expected {expected}, found {found}")]
    Dimension { field: String, expected: String, found: String },
    #[error("{what} failed validation: {failure}")]
    Invalid { what: String, failure: String },
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dimension(field: impl Into<String>, expected: impl ToString, found: impl ToString) -> Self {
        Error::Dimension { field: field.into(), expected: expected.to_string(), found: found.to_string() }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl ToString) -> Self {
        Error::Parse { location: location.into(), message: message.to_string() }
    }

    /// Wraps the first failing check of `report`.
    pub(crate) fn invalid(what: impl Into<String>, report: &Report) -> Self {
        let failure = report.first_failure().map_or_else(|| "unknown".to_string(), |c| c.to_string());
        Error::Invalid { what: what.into(), failure }
    }
}
