use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid leg pattern: {0}")]
    InvalidPattern(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("precondition failed: {message}")]
    Precondition { message: String, report: Box<Report> },
    #[error("search budget exhausted: checked {checked} of {total} candidates")]
    Budget { checked: u128, total: u128 },
}

impl Error {
    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn precondition(message: impl Into<String>, report: Report) -> Self {
        Error::Precondition {
            message: message.into(),
            report: Box::new(report),
        }
    }

    /// Report attached to a precondition failure, if any.
    pub fn report(&self) -> Option<&Report> {
        match self {
            Error::Precondition { report, .. } => Some(report),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
