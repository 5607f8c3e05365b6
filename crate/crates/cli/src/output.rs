// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

//! Output files, the manifest and the diagnostic written on numerical failure.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const MANIFEST: &str = "manifest.json";
pub const DIAGNOSTIC: &str = "diagnostic.json";

/// Files produced by a run, keyed by relative path.
#[derive(Clone, Debug, Default)]
pub struct Artifacts {
    files: BTreeMap<String, Vec<u8>>,
}

impl Artifacts {
    pub fn add(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.insert(name.into(), bytes);
    }

    pub fn add_json<T: Serialize>(&mut self, name: &str, value: &T) {
        let mut text = serde_json::to_string_pretty(value).expect("serializable summary");
        text.push('\n');
        self.add(name, text.into_bytes());
    }

    /// Nests another run's files under `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: Artifacts) {
        for (k, v) in other.files {
            self.files.insert(format!("{prefix}/{k}"), v);
        }
    }

    pub fn get(&self, name: &str) -> Option<&[u8]> {
        self.files.get(name).map(Vec::as_slice)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.keys().map(String::as_str)
    }

    pub fn write(&self, dir: &Path, config_echo: &str, seed: Option<u64>) -> Result<PathBuf, CliError> {
        fs::create_dir_all(dir)?;
        let mut entries = Vec::with_capacity(self.files.len());
        for (name, bytes) in &self.files {
            let path = dir.join(name);
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            fs::write(&path, bytes)?;
            entries.push(ManifestEntry { path: name.clone(), bytes: bytes.len(), sha256: sha256_hex(bytes) });
        }
        let manifest = Manifest {
            generator: concat!("edjcm ", env!("CARGO_PKG_VERSION")).to_string(),
            config: config_echo.to_string(),
            config_sha256: sha256_hex(config_echo.as_bytes()),
            seed,
            artifacts: entries,
        };
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        text.push('\n');
        let path = dir.join(MANIFEST);
        fs::write(&path, text)?;
        Ok(path)
    }
}

#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct ManifestEntry {
    pub path: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct Manifest {
    pub generator: String,
    pub config: String,
    pub config_sha256: String,
    /// Reserved; no stochastic components consume it.
    pub seed: Option<u64>,
    pub artifacts: Vec<ManifestEntry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Files whose checksum no longer matches the manifest in `dir`.
pub fn verify_manifest(dir: &Path) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(dir.join(MANIFEST))?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{MANIFEST}: {e}")))?;
    let mut bad = Vec::new();
    for e in &manifest.artifacts {
        match fs::read(dir.join(&e.path)) {
            Ok(bytes) if sha256_hex(&bytes) == e.sha256 => {}
            _ => bad.push(e.path.clone()),
        }
    }
    Ok(bad)
}

pub fn write_diagnostic(dir: &Path, err: &CliError, config_echo: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir)?;
    let details = match err {
        CliError::Numerical { details, .. } => details.clone(),
        _ => serde_json::Value::Null,
    };
    let body = serde_json::json!({
        "error": err.to_string(),
        "exit_code": err.exit_code(),
        "details": details,
        "config": config_echo,
    });
    let path = dir.join(DIAGNOSTIC);
    let mut text = serde_json::to_string_pretty(&body).expect("diagnostic serializes");
    text.push('\n');
    fs::write(&path, text)?;
    Ok(path)
}

/// Shortest round-trip representation, so identical runs give identical bytes.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:e}")
    }
}

/// CSV with a fixed header; every row must match its width.
pub struct Table {
    writer: csv::Writer<Vec<u8>>,
    width: usize,
}

impl Table {
    pub fn new(header: &[&str]) -> Result<Self, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(Self { writer, width: header.len() })
    }

    pub fn row<S: AsRef<[u8]>>(&mut self, cells: &[S]) -> Result<(), CliError> {
        debug_assert_eq!(cells.len(), self.width);
        self.writer.write_record(cells)?;
        Ok(())
    }

    pub fn numbers(&mut self, values: &[f64]) -> Result<(), CliError> {
        let cells: Vec<String> = values.iter().map(|v| fmt_f64(*v)).collect();
        self.row(&cells)
    }

    pub fn finish(self) -> Result<Vec<u8>, CliError> {
        self.writer.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }
}

/// Whitespace-separated real and imaginary parts, one matrix row per line.
pub fn matrix_text(m: &edjcm_core::Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let cells: Vec<String> = m.row(i).iter().map(|z| format!("{}{:+e}i", fmt_f64(z.re), z.im)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
