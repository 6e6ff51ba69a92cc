use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use latfox_core::Error;
use serde_json::json;

/// An HTTP error response with a JSON body `{"error": ..., "line": ...}`.
#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct ApiError {
    pub status: StatusCode,
    pub message: String,
    pub line: Option<usize>,
}

impl ApiError {
    pub fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
            line: None,
        }
    }

    pub fn session_not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, format!("session `{id}` not found"))
    }

    pub fn stale(expected: &str, current: u64) -> Self {
        Self::new(
            StatusCode::CONFLICT,
            format!("If-Match {expected} does not match current version {current}"),
        )
    }

    /// Engine errors for requests where a missing attribute is the resource
    /// being addressed (404) rather than part of the payload.
    pub fn addressing(error: Error) -> Self {
        match error {
            Error::NotFound { kind: "attribute", .. } => Self::new(StatusCode::NOT_FOUND, error.to_string()),
            other => other.into(),
        }
    }
}

impl From<Error> for ApiError {
    fn from(error: Error) -> Self {
        let status = match &error {
            Error::NameCollision(_) => StatusCode::CONFLICT,
            Error::Inconsistent(_) => StatusCode::INTERNAL_SERVER_ERROR,
            Error::NotFound { .. }
            | Error::Parse { .. }
            | Error::UniverseMismatch { .. }
            | Error::DuplicateName { .. }
            | Error::Reducible(_)
            | Error::InvalidDocument(_) => StatusCode::BAD_REQUEST,
        };
        let line = match &error {
            Error::Parse { line, .. } => Some(*line),
            _ => None,
        };
        Self {
            status,
            message: error.to_string(),
            line,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = match self.line {
            Some(line) => json!({ "error": self.message, "line": line }),
            None => json!({ "error": self.message }),
        };
        (self.status, Json(body)).into_response()
    }
}
