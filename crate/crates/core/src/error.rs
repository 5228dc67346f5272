use thiserror::Error;

use crate::canon::Canonical;
use crate::field::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A characteristic polynomial that does not split over the working field.
///
/// When the caller asked for it and the field is a prime field, `extension`
/// holds the canonical form computed after lifting to the quadratic extension.
#[derive(Debug, Clone)]
pub struct NotSplit {
    pub charpoly: String,
    pub field: FieldSpec,
    pub extension: Option<Box<Canonical>>,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse scalar {text:?} over {field}")]
    ParseScalar { text: String, field: FieldSpec },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension {0} out of range 1..=4")]
    DimensionOutOfRange(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("not commuting")]
    NotCommuting,
    #[error("not in the nilpotent commutator of the case matrix")]
    NotInNilC,
    #[error("characteristic polynomial {} does not split over {}", .0.charpoly, .0.field)]
    NotSplit(Box<NotSplit>),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("invalid document: {0}")]
    Document(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

impl Error {
    /// Validation-class errors are caller mistakes rather than mathematical outcomes.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::NotSplit(_) | Error::Internal(_) | Error::Inconclusive(_)
        )
    }
}
