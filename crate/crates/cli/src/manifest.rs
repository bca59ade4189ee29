use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Provenance of one run. Everything except `wall_clock_s` is a function of
/// the command line, so reruns can be compared by `result_digest`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub seed: u64,
    pub config: serde_json::Value,
    pub versions: BTreeMap<String, String>,
    pub wall_clock_s: f64,
    pub exit_code: i32,
    /// SHA-256 of the bytes written to standard output.
    pub result_digest: String,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

pub fn versions() -> BTreeMap<String, String> {
    BTreeMap::from([
        ("quatlab".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("quatlab-core".to_string(), quatlab_core::VERSION.to_string()),
    ])
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, text + "\n").map_err(|e| CliError::io(&path.display().to_string(), e))
    }
}
