//! Run archive: the JSON file written by `simulate`.

use std::path::Path;

use hypcascade::cascade::{CascadeRun, ModelParams};
use serde::{Deserialize, Serialize};

use crate::output::write_atomic;
use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunArchive {
    pub format_version: u32,
    /// Unix seconds.
    pub created: u64,
    pub params: ModelParams,
    pub runs: Vec<RunSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub replication: u64,
    pub events: Vec<f64>,
    pub cosh_eta_cm: f64,
    pub ln_cosh_eta_cm: f64,
    pub splinters: Vec<SplinterSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplinterSummary {
    pub k: usize,
    pub mass: f64,
    pub birth_time: f64,
    pub cosh_eta: f64,
    pub ln_cosh_eta: f64,
}

impl RunSummary {
    pub fn from_run(replication: u64, run: &CascadeRun) -> Self {
        Self {
            replication,
            events: run.events.times.clone(),
            cosh_eta_cm: run.cosh_eta_cm,
            ln_cosh_eta_cm: run.ln_cosh_eta_cm,
            splinters: run
                .splinters
                .iter()
                .map(|s| SplinterSummary {
                    k: s.k,
                    mass: s.mass,
                    birth_time: s.birth_time,
                    cosh_eta: s.cosh_eta,
                    ln_cosh_eta: s.ln_cosh_eta,
                })
                .collect(),
        }
    }
}

impl RunArchive {
    pub fn to_json(&self) -> Result<Vec<u8>, CliError> {
        let mut bytes = serde_json::to_vec_pretty(self).map_err(|e| CliError::Archive(e.to_string()))?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    /// Checks the version before the body so that a newer layout reports a
    /// version error rather than a field error.
    pub fn from_json(bytes: &[u8]) -> Result<Self, CliError> {
        let value: serde_json::Value = serde_json::from_slice(bytes).map_err(|e| CliError::Archive(e.to_string()))?;
        match value.get("format_version").and_then(|v| v.as_u64()) {
            Some(v) if v == FORMAT_VERSION as u64 => {}
            Some(v) => {
                return Err(CliError::Archive(format!(
                    "unsupported format_version {v}, this build reads {FORMAT_VERSION}"
                )))
            }
            None => return Err(CliError::Archive("missing format_version".into())),
        }
        serde_json::from_value(value).map_err(|e| CliError::Archive(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&bytes)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_atomic(path, &self.to_json()?)
    }
}
