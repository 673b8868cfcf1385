use thiserror::Error;

use crate::exactnum::ExactError;
use crate::method::MethodId;
use crate::zdomain::DomainError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("method {method} does not apply: {reason}")]
    MethodInvalid { method: MethodId, reason: String },
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    #[error("no admissible contour: {0}")]
    Geometry(String),
}

impl Error {
    pub fn invalid(method: MethodId, reason: impl Into<String>) -> Self {
        Error::MethodInvalid {
            method,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
