use thiserror::Error;

/// Errors surfaced by the library. Checks that merely *fail* (a lift does not
/// exist, a map is not a fibration) are not errors; they are negative verdicts
/// with certificates. Errors mean the inputs were unusable or an internal
/// cross-check caught a bug.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("invalid object: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Two independent decision routes disagreed. Both routes implement the
    /// same mathematical predicate, so disagreement is an implementation bug
    /// and the computation halts rather than guessing.
    #[error("route disagreement (internal invariant violation): {0}")]
    RouteDisagreement(String),
    /// Enumeration exceeded the configured cell budget. The result is
    /// "unknown", never a wrong answer.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
