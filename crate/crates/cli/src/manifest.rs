//! Run manifest: what was run, on which inputs, producing which outputs.
//!
//! Keys: `command`, `arguments` (normalized flag values), `inputs` and
//! `outputs` (path to sha256), `cache` (`hit`, `miss` or `off`),
//! `tool_version`, `wall_time_ms`. Output digests never differ between
//! identical runs; `wall_time_ms` and `cache` may.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::error::CliError;
use crate::io::{sha256_hex, write_atomic};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: BTreeMap<String, String>,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
    pub cache: String,
    pub tool_version: String,
    pub wall_time_ms: u128,
}

pub struct Recorder {
    manifest: RunManifest,
    start: Instant,
}

impl Recorder {
    pub fn new(command: &str) -> Self {
        Recorder {
            manifest: RunManifest {
                command: command.to_owned(),
                arguments: BTreeMap::new(),
                inputs: BTreeMap::new(),
                outputs: BTreeMap::new(),
                cache: "off".to_owned(),
                tool_version: env!("CARGO_PKG_VERSION").to_owned(),
                wall_time_ms: 0,
            },
            start: Instant::now(),
        }
    }

    pub fn arg(&mut self, key: &str, value: impl ToString) {
        self.manifest.arguments.insert(key.to_owned(), value.to_string());
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.manifest.inputs.insert(path.display().to_string(), sha256_hex(bytes));
    }

    pub fn cache(&mut self, status: &str) {
        self.manifest.cache = status.to_owned();
    }

    /// Writes `bytes` to `path` and records its digest.
    pub fn output(&mut self, path: &Path, bytes: &[u8]) -> Result<(), CliError> {
        write_atomic(path, bytes)?;
        self.manifest.outputs.insert(path.display().to_string(), sha256_hex(bytes));
        Ok(())
    }

    pub fn finish(mut self, path: &Path) -> Result<RunManifest, CliError> {
        self.manifest.wall_time_ms = self.start.elapsed().as_millis();
        let mut text = serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
        text.push('\n');
        write_atomic(path, text.as_bytes())?;
        Ok(self.manifest)
    }
}
