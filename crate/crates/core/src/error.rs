use thiserror::Error;

/// Errors from parsing vocabulary strings (categories, test names, answers).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("unrecognized MWE category '{0}'")]
    UnknownCategory(String),
    #[error("unrecognized test id '{0}'")]
    UnknownTest(String),
    #[error("unrecognized answer '{0}'")]
    UnknownAnswer(String),
    #[error("unrecognized tree variant '{0}'")]
    UnknownVariant(String),
}
