use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid flattened shape: exp(e)+exp(f)-1 has modulus {residual:e}")]
    InvalidShape { residual: f64 },

    #[error("inconsistent branch data: {0}")]
    Inconsistent(String),

    #[error("five-term side condition `{equation}` violated by {residual:e}")]
    FiveTermCondition { equation: &'static str, residual: f64 },

    #[error("non-generic decoration: {0}")]
    NonGeneric(String),

    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("load error at {location}: {message}")]
    Load { location: String, message: String },

    #[error("missing lift for coordinate {0}")]
    MissingLift(String),
}

pub type Result<T> = std::result::Result<T, Error>;
