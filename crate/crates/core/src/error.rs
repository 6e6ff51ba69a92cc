use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("attribute `{0}` already exists")]
    NameCollision(String),

    #[error("{kind} `{name}` not found")]
    NotFound { kind: &'static str, name: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("universe mismatch: expected {expected} elements, got {actual}")]
    UniverseMismatch { expected: usize, actual: usize },

    #[error("duplicate {kind} name `{name}`")]
    DuplicateName { kind: &'static str, name: String },

    #[error("attribute `{0}` is reducible and carries no seed")]
    Reducible(String),

    #[error("invalid diagram document: {0}")]
    InvalidDocument(String),

    #[error("internal consistency violation: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn object_not_found(name: impl Into<String>) -> Self {
        Error::NotFound {
            kind: "object",
            name: name.into(),
        }
    }

    pub(crate) fn attribute_not_found(name: impl Into<String>) -> Self {
        Error::NotFound {
            kind: "attribute",
            name: name.into(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
