//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by the exact engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("pole in series: denominator parameter {parameter} vanishes at order {order}")]
    PoleInSeries { parameter: String, order: usize },
    #[error("evaluation pole: {0}")]
    EvaluationPole(String),
    #[error("not a twist: {0}")]
    NotATwist(String),
    #[error("identity falsified: {0}")]
    IdentityFalsified(String),
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("twist table error: {0}")]
    TwistTableError(String),
    #[error("deformation error: {0}")]
    DeformationError(String),
}

impl Error {
    /// Short machine-readable tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::InvalidInput(_) => "InvalidInput",
            Error::PoleInSeries { .. } => "PoleInSeries",
            Error::EvaluationPole(_) => "EvaluationPole",
            Error::NotATwist(_) => "NotATwist",
            Error::IdentityFalsified(_) => "IdentityFalsified",
            Error::DegenerateInstance(_) => "DegenerateInstance",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::TwistTableError(_) => "TwistTableError",
            Error::DeformationError(_) => "DeformationError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
