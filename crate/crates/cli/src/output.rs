//! Artifact provenance and file writing helpers.

use std::path::{Path, PathBuf};

use anyhow::Context;
use pulseforge_core::pulse::DeviceModel;
use sha2::{Digest, Sha256};

use crate::CommonArgs;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Device resolved from `--device`, plus the hash that every artifact
/// embeds for reproducibility.
pub struct Provenance {
    pub device: DeviceModel,
    pub device_sha256: String,
    pub seed: u64,
}

impl Provenance {
    /// Loads the device file (or synthesizes the built-in linear chain with
    /// at least `min_qubits` qubits) and hashes its canonical JSON.
    pub fn resolve(common: &CommonArgs, min_qubits: usize) -> anyhow::Result<Self> {
        let (device, bytes) = match &common.device {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("cannot read device file {}", path.display()))?;
                (DeviceModel::from_json(&text)?, text.into_bytes())
            }
            None => {
                let device = DeviceModel::ideal_line(min_qubits.max(2));
                let text = device.to_json();
                (device, text.into_bytes())
            }
        };
        let device_sha256 = hex::encode(Sha256::digest(&bytes));
        Ok(Self {
            device,
            device_sha256,
            seed: common.seed,
        })
    }

    /// `# key=value` comment lines embedded at the top of CSV artifacts.
    pub fn csv_preamble(&self) -> String {
        format!(
            "# tool_version={}\n# seed={}\n# device_sha256={}\n",
            TOOL_VERSION, self.seed, self.device_sha256
        )
    }
}

pub fn write_artifact(dir: &Path, name: &str, contents: &str) -> anyhow::Result<PathBuf> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

/// Inclusive `lo..hi` range or single value.
pub fn parse_range(text: &str) -> anyhow::Result<std::ops::RangeInclusive<usize>> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().context("range start")?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().context("range end")?;
        anyhow::ensure!(lo >= 1 && hi >= lo, "invalid range {text}");
        Ok(lo..=hi)
    } else {
        let v: usize = text.trim().parse().context("range value")?;
        anyhow::ensure!(v >= 1, "invalid value {text}");
        Ok(v..=v)
    }
}
