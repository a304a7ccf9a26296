use thiserror::Error;

/// Failures that are not hooks: malformed input, broken contracts, and
/// arithmetic results that contradict a proven identity.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
