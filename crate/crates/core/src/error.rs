use thiserror::Error;

use crate::grassmann::AlgebraSignature;

/// Errors raised by the algebra, the DSL front end and the JSON codec.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: n_total = {n_total}, n_D = {n_d} (need 1 <= n_total <= 16, n_D <= n_total)")]
    InvalidSignature { n_total: usize, n_d: usize },

    #[error("generator index {index} out of range 1..={n_total}")]
    IndexOutOfRange { index: usize, n_total: u8 },

    #[error("rank {rank} out of range 0..={n_total}")]
    RankOutOfRange { rank: usize, n_total: u8 },

    #[error("monomial bitmask {bits:#x} does not fit in {n_total} generators")]
    MonomialOutOfRange { bits: u32, n_total: u8 },

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch {
        left: AlgebraSignature,
        right: AlgebraSignature,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("operator is not in the embedded matrix algebra: {0}")]
    NotInMatrixAlgebra(String),

    #[error("malformed multi-index: {0}")]
    MalformedMultiIndex(String),

    #[error("not a Clifford representation: {0}")]
    NotARepresentation(String),

    #[error("invalid mixing parameters: {0}")]
    InvalidMixParams(String),

    #[error("superfield degree {degree} exceeds the limit {max}")]
    DegreeExceeded { degree: u32, max: u32 },

    #[error("superfield depends on non-primed generator θ^{0}")]
    NonPrimedGenerator(u8),

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("malformed document: {0}")]
    MalformedDocument(String),

    #[error("unsupported document version {0}")]
    VersionMismatch(u64),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

/// A DSL diagnostic with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
