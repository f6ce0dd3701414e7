use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Cli;
use crate::error::{MmfError, Result};

/// Written beside every command's outputs. `invocation` holds the parsed
/// arguments with the output directory cleared, so a replay writes wherever
/// it is pointed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub seed: u64,
    pub version: String,
    pub duration_seconds: f64,
    pub invocation: Cli,
}

impl RunManifest {
    pub fn new(invocation: Cli, duration_seconds: f64) -> Self {
        Self {
            command: invocation.command.name().to_string(),
            seed: invocation.global.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_seconds,
            invocation,
        }
    }

    pub fn file_name(command: &str) -> String {
        format!("{command}.manifest.json")
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(dir.join(Self::file_name(&self.command)), text + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| MmfError::Schema(format!("{}: {e}", path.display())))
    }
}
