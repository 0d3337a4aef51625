use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("incompatible coefficient fields: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("invalid field generator: {0}")]
    InvalidGenerator(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid design: {0}")]
    InvalidDesign(String),
    #[error("point {0} lies outside the open interval (-1, 1)")]
    Boundary(Rational),
    #[error("designs share points: {}", join(.0))]
    Overlap(Vec<Rational>),
    #[error("measure mismatch")]
    MeasureMismatch,
    #[error("affine scale must be nonzero")]
    ZeroScale,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

fn join(points: &[Rational]) -> String {
    points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}
