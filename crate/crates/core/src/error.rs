use thiserror::Error;

/// Errors produced by graph parsing and the algebraic operations built on top.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RaagError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("operands belong to different graphs")]
    GraphMismatch,

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("vertex `{0}` lies in the star of `{1}`")]
    InStar(String, String),

    #[error("vertices are not pairwise distinct")]
    NotDistinct,

    #[error("triple is not a SIL")]
    NotASil,

    #[error("graph has a non-abelian equivalence class of size >= 2")]
    NonAbelianClass,

    #[error("graph has a SIL")]
    HasSil,

    #[error("graph has no SIL")]
    NoSil,

    #[error("vertex set is not downward closed under domination")]
    NotDownwardClosed,

    #[error("generator does not preserve the conjugacy class of the subgroup")]
    RestrictionUndefined,

    #[error("automorphism is not a support conjugation by a single word")]
    UnsupportedShape,

    #[error("automorphism has no generator provenance; cannot invert")]
    NoProvenance,

    #[error("images do not preserve the defining relations: {0}")]
    RelationsViolated(String),

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("singleton equivalence class")]
    SingletonClass,

    #[error("matrix is not invertible over the integers")]
    NotUnimodular,

    #[error("matrix dimension mismatch")]
    DimensionMismatch,

    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,

    #[error("io error: {0}")]
    Io(String),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, RaagError>;
