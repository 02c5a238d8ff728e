//! Run manifests: every run that writes output files also writes a manifest
//! sufficient to reproduce those files byte for byte via `replay`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cli::Command;
use crate::output::MANIFEST_SCHEMA;
use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: String,
    pub tool_version: String,
    /// Full parameter set of the command that produced the outputs.
    pub command: Command,
    /// Seed of the run, when the command is stochastic.
    pub seed: Option<u64>,
    pub outputs: Vec<PathBuf>,
    pub duration_seconds: f64,
}

impl RunManifest {
    pub fn new(
        command: Command,
        seed: Option<u64>,
        outputs: Vec<PathBuf>,
        duration_seconds: f64,
    ) -> Self {
        Self {
            schema_version: MANIFEST_SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed,
            outputs,
            duration_seconds,
        }
    }
}

/// Default manifest location: next to the primary output file.
pub fn default_manifest_path(primary_output: &Path) -> PathBuf {
    let mut name = primary_output.as_os_str().to_os_string();
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub fn load_manifest(path: &Path) -> Result<RunManifest, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read manifest {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Param(format!("malformed manifest {}: {e}", path.display())))
}
