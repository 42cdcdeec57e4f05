use thiserror::Error;

use crate::model::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: half-dimension {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected a homogeneous 3-form, got degrees {degrees:?}")]
    NotThreeForm { degrees: Vec<u32> },

    #[error("operator `{name}` has mixed parity; split it before taking a supercommutator")]
    MixedParity { name: String },

    #[error("picture mismatch in `{context}`: {left} vs {right}")]
    PictureMismatch {
        context: String,
        left: String,
        right: String,
    },

    #[error("unknown operator `{name}` for model `{model}`")]
    UnknownOperator { name: String, model: String },

    #[error("model validation failed: {0}")]
    Validation(ValidationReport),

    #[error("model file: {0}")]
    ModelFormat(String),

    #[error("convention check failed: {0}")]
    Convention(String),
}

pub type Result<T> = std::result::Result<T, Error>;
