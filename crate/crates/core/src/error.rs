use crate::structures::Signature;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for structure of size {size}")]
    VertexOutOfRange { vertex: usize, size: usize },

    #[error("signature mismatch: expected {expected}, found {found}")]
    SignatureMismatch {
        expected: Signature,
        found: Signature,
    },

    #[error("{what}: {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("input is not a member of {class}")]
    NotMember { class: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
