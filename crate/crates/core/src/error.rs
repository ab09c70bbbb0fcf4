use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("assertion violated: {0}")]
    Assertion(String),
    /// A construction step lacked the objects it needs at this scale.
    #[error("{step} failed: {detail}")]
    Failure { step: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn assertion<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Assertion(msg.into()))
}

pub(crate) fn failure<T>(step: impl Into<String>, detail: impl Into<String>) -> Result<T> {
    Err(Error::Failure { step: step.into(), detail: detail.into() })
}
