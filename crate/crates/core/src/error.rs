use thiserror::Error;

/// Errors produced by signal construction, the PCM stages and the codecs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {field}: {reason}")]
    InvalidArgument { field: &'static str, reason: String },
    #[error("invalid range: lower bound {lo} must be below upper bound {hi}")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("unknown preset `{0}` (expected sinusoid, triangular, rectangular or one-period)")]
    UnknownPreset(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("decode error: {0}")]
    Decode(String),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            field,
            reason: reason.into(),
        }
    }

    /// Stable reason code, shared by the CLI diagnostics and the HTTP API.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument { .. } => "invalid-argument",
            Error::InvalidRange { .. } => "invalid-range",
            Error::UnknownPreset(_) => "unknown-preset",
            Error::InternalInconsistency(_) => "internal-inconsistency",
            Error::Decode(_) => "decode-error",
        }
    }

    /// Input field the error refers to, when there is one.
    pub fn field(&self) -> Option<&'static str> {
        match self {
            Error::InvalidArgument { field, .. } => Some(field),
            Error::InvalidRange { .. } => Some("range"),
            Error::UnknownPreset(_) => Some("preset"),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
