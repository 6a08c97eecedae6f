use crate::C64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tau = {0} is not in the upper half-plane")]
    InvalidTau(C64),

    #[error("non-finite input")]
    NonFinite,

    #[error("argument {at} lies within {guard:e} of a pole")]
    PoleProximity { at: C64, guard: f64 },

    #[error("series failed to converge after {0} terms")]
    NoConvergence(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("tensor size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("operation not available for this family: {0}")]
    WrongKind(String),

    #[error("singular linear map")]
    Singular,

    #[error("contour extraction unstable: {0}")]
    Unstable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
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
