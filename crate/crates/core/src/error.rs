use std::fmt;

use thiserror::Error;

/// Machine-readable error category. Every error also carries a field path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorCode {
    Syntax,
    Schema,
    DimensionMismatch,
    ZeroClass,
    NotRepresentable,
    EvenModulus,
    NotACandidate,
    Divisibility,
    InvalidScheme,
    EulerMismatch,
    Incidence,
    RhoOverride,
    MissingRealPart,
    CapExceeded,
    Unsupported,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "syntax",
            ErrorCode::Schema => "schema",
            ErrorCode::DimensionMismatch => "dimension_mismatch",
            ErrorCode::ZeroClass => "zero_class",
            ErrorCode::NotRepresentable => "not_representable",
            ErrorCode::EvenModulus => "even_modulus",
            ErrorCode::NotACandidate => "not_a_candidate",
            ErrorCode::Divisibility => "divisibility",
            ErrorCode::InvalidScheme => "invalid_scheme",
            ErrorCode::EulerMismatch => "euler_mismatch",
            ErrorCode::Incidence => "incidence",
            ErrorCode::RhoOverride => "rho_override",
            ErrorCode::MissingRealPart => "missing_real_part",
            ErrorCode::CapExceeded => "cap_exceeded",
            ErrorCode::Unsupported => "unsupported",
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An input error: bad document, bad class, bad scheme, or a violated precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("error[{code}] at {path}: {message}")]
pub struct Error {
    pub code: ErrorCode,
    pub path: String,
    pub message: String,
}

impl Error {
    pub fn new(code: ErrorCode, path: impl Into<String>, message: impl Into<String>) -> Self {
        Error {
            code,
            path: path.into(),
            message: message.into(),
        }
    }

    /// Prefix the field path, e.g. `components[2]` + `.ovals` -> `scheme.components[2].ovals`.
    pub fn under(mut self, prefix: &str) -> Self {
        self.path = if self.path.is_empty() || self.path == "$" {
            prefix.to_string()
        } else if self.path.starts_with('[') {
            format!("{prefix}{}", self.path)
        } else {
            format!("{prefix}.{}", self.path)
        };
        self
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
