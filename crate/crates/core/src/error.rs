use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("morphisms are not composable: target of the first differs from source of the second")]
    NotComposable,
    #[error("target closure violated by kernel basis vector {index}")]
    TargetClosure { index: usize },
    #[error("not a linear functor: {0}")]
    NotFunctor(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no extension of the adjoint map exists: {0}")]
    NoExtension(String),
    #[error("invalid complement: {0}")]
    InvalidComplement(String),
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("the differential must be zero")]
    NonZeroDifferential,
    #[error("the Lie algebra has nontrivial center; u cannot be read off ad_u")]
    CenterNonTrivial,
    #[error("invalid quadratic Lie algebra: {0}")]
    QuadraticInvalid(String),
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
