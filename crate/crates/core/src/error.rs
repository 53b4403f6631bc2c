use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} is out of range: {reason}")]
    InvalidIndex { index: i64, reason: &'static str },

    #[error("evaluation point must be strictly positive, got {value}")]
    NonPositivePoint { value: String },

    #[error("precision target must be strictly positive")]
    NonPositiveTarget,

    #[error("depth cap {cap} exceeded before reaching the requested precision")]
    DepthCapExceeded { cap: usize },

    #[error("quadrature budget exhausted before reaching target error {target}")]
    QuadratureBudget { target: String },

    #[error("sign of {what} is indeterminate at the supplied precision (index {index})")]
    IndeterminateSign { what: &'static str, index: usize },

    #[error("enclosure too wide: {reason}")]
    InsufficientPrecision { reason: String },

    #[error("scaled convergent value at index {index} is not an integer; \
             the integrality invariant is violated")]
    IntegralityViolation { index: usize },

    #[error("need at least two usable indices after filtering, got {got}")]
    TooFewIndices { got: usize },

    #[error("cannot parse {input:?} as a rational number")]
    ParseRational { input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
