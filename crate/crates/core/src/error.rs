use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {x} lies outside [0, 1] for a Bernstein-basis polynomial")]
    Domain { x: f64 },

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },

    #[error("cannot represent a degree-{degree} polynomial in a basis of degree {target}")]
    DegreeMismatch { degree: usize, target: usize },

    #[error("incompatible scalar backends: {0}")]
    Backend(String),

    #[error("n = {n} is outside the construction regime n > 8r = {bound}")]
    Regime { n: usize, bound: usize },

    #[error("insufficient precision ({bits} bits): {reason}")]
    Precision { bits: u32, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operator is not conforming: {0}")]
    NonConforming(String),

    #[error("quadrature order {order} is below the exactness requirement {required}")]
    QuadratureOrder { order: usize, required: usize },

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
