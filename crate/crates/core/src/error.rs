use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("malformed structure-constant key {key:?}: {reason}")]
    MalformedKey { key: Vec<usize>, reason: String },

    #[error("degree {degree} outside the supported range {min}..={max}")]
    DegreeOutOfRange { degree: usize, min: usize, max: usize },

    #[error("cochain must take values in the algebra itself (algDim {alg_dim}, modDim {mod_dim})")]
    NotSelfCoefficient { alg_dim: usize, mod_dim: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{what} failed validation: {report}")]
    Violated {
        what: &'static str,
        report: ValidationReport,
    },

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
