use thiserror::Error;

use crate::graded::GradedError;
use crate::linalg::LinalgError;
use crate::novikov::{Exp, NovikovError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] NovikovError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("not stabilized at length {length}: dimensions {current:?} at N, {previous:?} at N-2")]
    NotStabilized { length: usize, current: [usize; 2], previous: [usize; 2] },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("insufficient length budget: {0}")]
    LengthBudget(String),
    #[error("insufficient cutoff: need {needed}")]
    InsufficientCutoff { needed: Exp },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Error {
        Error::Invalid(msg.into())
    }

    /// True for the failures caused by a too small cutoff or length.
    pub fn is_precision_failure(&self) -> bool {
        matches!(
            self,
            Error::NotStabilized { .. }
                | Error::InsufficientCutoff { .. }
                | Error::LengthBudget(_)
                | Error::Linalg(LinalgError::InsufficientCutoff { .. })
                | Error::Scalar(NovikovError::InsufficientCutoff { .. })
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
