use thiserror::Error;

/// Usage errors raised at the boundaries where caller-supplied data
/// enters the engine.  Violations of internal contracts (e.g. adding
/// polynomials over different contexts) panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable context mismatch: expected [{expected}], found [{found}]")]
    ContextMismatch { expected: String, found: String },

    #[error("arity mismatch: expected {expected} components, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("form degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("vector length {found} does not match expected length {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),

    #[error("duplicate variable name `{0}`")]
    DuplicateVariableName(String),
}
