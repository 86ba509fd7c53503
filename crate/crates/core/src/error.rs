use thiserror::Error;

use crate::signature::MAX_ARITY;

/// Errors reported by the library. Every variant is a domain error; parse
/// failures of the JSON formats are folded into [`Error::Parse`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("arity {0} exceeds the supported maximum of {MAX_ARITY}")]
    ArityTooLarge(usize),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },

    #[error("malformed interleaving: {0}")]
    MalformedInterleaving(String),

    #[error("operation undefined on the identically zero signature")]
    ZeroSignature,

    #[error("support is not an affine subspace")]
    NonAffineSupport,

    #[error("entry at index {0} is not a power of i")]
    NotPowerOfI(usize),

    #[error("transform is singular")]
    SingularTransform,

    #[error("grid is not bipartite: {0}")]
    NotBipartite(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("instance exceeds brute-force cap: {0}")]
    TooLarge(String),

    #[error("constraint {index} is not in class {class}")]
    NotInClass { index: usize, class: &'static str },

    #[error("duplicate interpolation point at index {0}")]
    DuplicatePoint(usize),

    #[error("interpolation needs as many points as values (got {xs} points, {ys} values)")]
    LengthMismatch { xs: usize, ys: usize },

    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("realization mismatch at vertex {vertex}: {reason}")]
    RealizationMismatch { vertex: usize, reason: String },

    #[error("no matchgate realization for vertex {0}")]
    MissingRealization(usize),

    #[error("signature at index {0} is not symmetric")]
    Asymmetric(usize),

    #[error("signature table hash mismatch: file expects {expected}, table has {actual}")]
    TableHashMismatch { expected: String, actual: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::ArityTooLarge(_) => "arity_too_large",
            Error::InvalidSignature(_) => "invalid_signature",
            Error::ArityMismatch(_) => "arity_mismatch",
            Error::VariableOutOfRange { .. } => "variable_out_of_range",
            Error::MalformedInterleaving(_) => "malformed_interleaving",
            Error::ZeroSignature => "zero_signature",
            Error::NonAffineSupport => "non_affine_support",
            Error::NotPowerOfI(_) => "not_power_of_i",
            Error::SingularTransform => "singular_transform",
            Error::NotBipartite(_) => "not_bipartite",
            Error::InvalidGrid(_) => "invalid_grid",
            Error::InvalidEmbedding(_) => "invalid_embedding",
            Error::TooLarge(_) => "too_large",
            Error::NotInClass { .. } => "not_in_class",
            Error::DuplicatePoint(_) => "duplicate_point",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::NotSkewSymmetric => "not_skew_symmetric",
            Error::RealizationMismatch { .. } => "realization_mismatch",
            Error::MissingRealization(_) => "missing_realization",
            Error::Asymmetric(_) => "asymmetric",
            Error::TableHashMismatch { .. } => "table_hash_mismatch",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
