use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible fields: Q(zeta_{0}) vs Q(zeta_{1})")]
    IncompatibleField(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("elements belong to different algebras")]
    IncompatibleAlgebra,
    #[error("operation requires {expected} flavor, got {found}")]
    Flavor { expected: String, found: String },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("inadmissible shift: s({root}) = {value} lies outside the support of that root space")]
    Inadmissible { root: String, value: String },
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("no graded invariant form available for {0}")]
    NoForm(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
