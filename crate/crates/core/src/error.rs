use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid curve: {0}")]
    Curve(String),

    #[error("curve is disconnected: {0}")]
    Disconnected(String),

    #[error("invalid component sum: {0}")]
    ComponentSum(String),

    #[error("invalid bundle: {0}")]
    Bundle(String),

    #[error("invalid divisor: {0}")]
    Divisor(String),

    #[error("invalid ideal: {0}")]
    Ideal(String),

    #[error("not a complex: composite of differentials is nonzero ({0})")]
    NotAComplex(String),

    #[error("koszul slice too large: {actual} entries exceeds cap {cap}")]
    SliceCapExceeded { actual: u128, cap: u128 },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("input error in field `{field}`: {message}")]
    Input { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
