use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A linear system that must be uniquely solvable was not. Signals an engine bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("quantum A.S.L. axiom violated: {0}")]
    AxiomViolation(String),

    /// Two independent counts of the same quantity disagree.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("integer overflow while {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
