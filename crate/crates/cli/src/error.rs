use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    /// Malformed or out-of-domain input.
    Input,
    Io,
    /// The computation itself gave up, e.g. no convergence.
    Computation,
}

/// Operational failure, reported as `{"error": {"kind": ..., "message": ...}}`
/// with exit code 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Input, message: message.into() }
    }

    pub fn io(path: &str, e: std::io::Error) -> Self {
        CliError { kind: ErrorKind::Io, message: format!("{path}: {e}") }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "error": self })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} error: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}

impl From<quatlab_core::Error> for CliError {
    fn from(e: quatlab_core::Error) -> Self {
        use quatlab_core::Error as E;
        let kind = match e {
            E::NoConvergence | E::RankUnstable | E::NonFinite => ErrorKind::Computation,
            _ => ErrorKind::Input,
        };
        CliError { kind, message: e.to_string() }
    }
}
