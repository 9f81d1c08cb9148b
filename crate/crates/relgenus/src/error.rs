use thiserror::Error;

/// Unified error type for the engine.
///
/// Input-shaped problems (bad braids, malformed files, unknown names) are
/// distinguished from `Internal`, which flags a broken invariant inside the
/// exact-arithmetic kernels and should never be reachable from user data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid braid word: {0}")]
    BadBraid(String),
    #[error("invalid Seifert matrix: {0}")]
    BadSeifert(String),
    #[error("invalid root of unity: {0}")]
    BadRoot(String),
    #[error("invalid 4-manifold data: {0}")]
    BadManifold(String),
    #[error("invalid knot invariants: {0}")]
    BadInvariants(String),
    #[error("invalid V-sequence: {0}")]
    BadVSequence(String),
    #[error("invalid surface problem: {0}")]
    BadProblem(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parse error at line {line}: {message}")]
    ParseAt { line: usize, message: String },
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("scan box too large: {required} classes exceed the cap of {cap}")]
    ClassCapExceeded { required: String, cap: u64 },
    #[error("arithmetic overflow in {0}")]
    Overflow(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
