use thiserror::Error;

/// An argument fell outside the domain a model function is defined on.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("domain error: {0}")]
pub struct DomainError(pub String);

impl DomainError {
    pub fn new(msg: impl Into<String>) -> Self {
        DomainError(msg.into())
    }
}
