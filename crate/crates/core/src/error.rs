use thiserror::Error;

/// Errors raised by the exact geometry and algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature ({p},{q}): {reason}")]
    InvalidSignature { p: usize, q: usize, reason: &'static str },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("matrix is not in o(p+1,q+1): {0}")]
    NotInAlgebra(String),
    #[error("matrix does not preserve the split form: {0}")]
    NotInGroup(String),
    #[error("matrix is singular")]
    Singular,
    #[error("element is not nilpotent within {0} powers")]
    NotNilpotent(usize),
    #[error("vector is not null: {0}")]
    NotNull(String),
    #[error("subspace containment fails: {0}")]
    NotContained(String),
    #[error("subspace is not bracket-closed")]
    NotBracketClosed,
    #[error("pole: 1 + s t = 0 at s = {s}, t = {t}")]
    Pole { s: String, t: String },
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
