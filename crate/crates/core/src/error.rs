use thiserror::Error;

use crate::automata::{format_word, Word};

/// Errors raised by the automata algebra, the property checks and the
/// synthesis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("event `{event}` has conflicting {attribute} flags")]
    AttributeConflict { event: String, attribute: &'static str },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("normality requires a projection")]
    MissingProjection,

    #[error("alphabet constraint violated: {0}")]
    AlphabetConstraintViolated(String),

    #[error("specification is not conditionally decomposable ({view}); witness {}", format_word(.witness))]
    NotConditionallyDecomposable { view: &'static str, witness: Word },

    #[error("synchronous nonconflict check failed: {0}")]
    NonconflictCheckFailed(String),

    #[error("unknown event `{0}`")]
    UnknownEvent(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid generator: {0}")]
    Validation(String),

    #[error("fixpoint not reached after {0} rounds")]
    FixpointNotReached(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
