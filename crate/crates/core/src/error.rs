use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown lattice element: {0}")]
    UnknownElement(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("angle {0}° outside the open interval (0°, 90°)")]
    DegenerateAngle(f64),
    #[error("strategy vector is not unit length (|v|² = {0})")]
    NotUnit(f64),
    #[error("report mode mismatch: {0}")]
    ModeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
