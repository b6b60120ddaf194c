//! Error types shared across the engine.

use thiserror::Error;

/// Everything that can go wrong while computing an invariant.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("coefficient not representable in the session field: {0}")]
    FieldMismatch(String),
    #[error("resource limit exceeded: {what} (cap {cap})")]
    ResourceLimit { what: &'static str, cap: usize },
    #[error("colength is infinite: {0}")]
    Infinite(String),
    #[error("critical locus is not isolated at the origin: {0}")]
    NotIsolated(String),
    #[error("not an ICIS germ: {0}")]
    NotIcis(String),
    #[error("genericity failure after {retries} retries: {what}")]
    GenericityFailure { what: String, retries: usize },
    #[error("Hilbert function did not stabilize below n = {nmax}; graded colengths {table:?}")]
    NoStabilization { nmax: usize, table: Vec<u64> },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("non-reduced fiber: equation `{0}` specializes to zero")]
    NonReducedFiber(String),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("invalid test path: {0}")]
    InvalidPath(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
