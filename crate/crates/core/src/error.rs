use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid marking: {0}")]
    InvalidMarks(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty range: {0}")]
    EmptyRange(String),
    #[error("variable mismatch: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("no value assigned to variable {0:?}")]
    MissingAssignment(String),
    #[error("evaluation is not an integer: {0}")]
    NonIntegralValue(String),
    #[error("geometric factor must have positive q-exponent, got {0}")]
    NonpositiveGrading(String),
    #[error("odd exponent {exponent} of {var:?} cannot be converted to a Hodge grading")]
    OddExponent { var: String, exponent: i64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
