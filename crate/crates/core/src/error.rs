use thiserror::Error;

/// Errors surfaced by the bound-evaluation and character machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    /// Directed-rounding operands were combined with incompatible modes.
    #[error("rounding mode mismatch: {0}")]
    ModeMismatch(String),
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed or out-of-contract input.
    #[error("input error: {0}")]
    Input(String),
    /// Request exceeds a configured resource budget.
    #[error("resource error: {0}")]
    Resource(String),
    /// Inputs violate the validity hypotheses of the requested formula.
    #[error("validity error: {0}")]
    Validity(String),
    /// The query hit the wrong case of a case-split formula.
    #[error("case error: {0}")]
    Case(String),
    /// Parameter outside the closed range the formula interpolates over.
    #[error("range error: {0}")]
    Range(String),
    /// An interpolation hypothesis (e.g. exponent ordering) fails.
    #[error("hypothesis error: {0}")]
    Hypothesis(String),
    /// The operation is not supported at this parameter (degenerate case).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// No formula in the catalog certifies a bound for the query.
    #[error("no certified bound: {0}")]
    NoCertifiedBound(String),
}

pub type Result<T> = std::result::Result<T, BoundError>;
