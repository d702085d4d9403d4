use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight {0}: weights must be at least 1")]
    Weight(i64),
    #[error("invalid point parameters: {0}")]
    Lambda(String),
    #[error("elements belong to different weighted projective lines")]
    ContextMismatch,
    #[error("point violates the Cox relations: {0}")]
    RelationViolation(String),
    #[error("representation data mismatch: {0}")]
    DataMismatch(String),
    #[error("framed representations need at most three orbifold points, got {0}")]
    Arity(usize),
    #[error("path enumeration exceeded the cap of {cap} paths")]
    Precision { cap: usize },
    #[error("quiver has a directed cycle of t-degree zero")]
    ZeroDegreeCycle,
    #[error("Ext^1 scan reached k = {0} without resolution")]
    CapExceeded(u64),
    #[error("cone enumeration too large: {0} candidate subsets")]
    TooLarge(u128),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("index x{index} out of range 1..={n}")]
    Index { index: usize, n: usize },
    #[error("vertex index {0} out of range")]
    Vertex(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
