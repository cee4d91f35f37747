//! Deterministic result files: CSV tables and JSON documents, each
//! accompanied by a manifest sidecar describing exactly how it was made.
//!
//! Reproducibility contract: a command rerun with the same parameters
//! (same manifest) must produce byte-identical files. Everything here is
//! therefore order-stable — parameters live in sorted maps, floats are
//! printed with a fixed 12-significant-digit scientific format, and no
//! timestamps or machine identifiers are recorded.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

/// Provenance record for one command invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    /// Subcommand name.
    pub command: String,
    /// Flat parameter map, sorted by key.
    pub parameters: BTreeMap<String, String>,
    /// Crate version that produced the file.
    pub code_version: String,
    /// Top-level RNG seeds the run consumed, in consumption order.
    /// Per-realization sub-seeds are derived deterministically from these.
    pub seed_registry: Vec<u64>,
    /// Files this run wrote (data files; sidecars are implied).
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            seed_registry: Vec::new(),
            outputs: Vec::new(),
        }
    }

    /// Record one parameter (stringified once, so the manifest shows the
    /// values the run actually used).
    pub fn set(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn record_seed(&mut self, seed: u64) -> &mut Self {
        self.seed_registry.push(seed);
        self
    }

    pub fn record_output(&mut self, path: &Path) -> &mut Self {
        self.outputs.push(path.display().to_string());
        self
    }

    /// `#`-prefixed header block embedded at the top of CSV files.
    pub fn header_block(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("# locchain {}\n", self.code_version));
        s.push_str(&format!("# command: {}\n", self.command));
        for (k, v) in &self.parameters {
            s.push_str(&format!("# {k} = {v}\n"));
        }
        if !self.seed_registry.is_empty() {
            let seeds: Vec<String> = self.seed_registry.iter().map(u64::to_string).collect();
            s.push_str(&format!("# seeds: {}\n", seeds.join(",")));
        }
        s
    }

    /// Write the JSON sidecar `<data-file>.manifest.json`.
    pub fn write_sidecar(&self, data_path: &Path) -> Result<PathBuf> {
        let mut sidecar = data_path.as_os_str().to_owned();
        sidecar.push(".manifest.json");
        let sidecar = PathBuf::from(sidecar);
        let body = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Encode(format!("manifest serialization: {e}")))?;
        fs::write(&sidecar, body + "\n")?;
        Ok(sidecar)
    }
}

/// One CSV cell. Numeric formatting is centralized here so every table
/// in every file looks the same.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Float(f64),
    Text(String),
    Bool(bool),
    /// Marked not-available (e.g. an unattainable scan target).
    Na,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::UInt(v) => write!(f, "{v}"),
            Cell::Float(v) => write!(f, "{}", format_sig(*v)),
            Cell::Text(v) => write!(f, "{v}"),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Na => write!(f, "NA"),
        }
    }
}

/// Fixed scientific format with 12 significant digits.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "NA".to_string();
    }
    format!("{x:.11e}")
}

/// Write a CSV file: manifest header block, column header, rows. The
/// manifest sidecar lands next to it and the manifest records the path.
pub fn write_csv(
    path: &Path,
    manifest: &mut RunManifest,
    columns: &[&str],
    rows: &[Vec<Cell>],
) -> Result<()> {
    for (i, row) in rows.iter().enumerate() {
        if row.len() != columns.len() {
            return Err(Error::Encode(format!(
                "row {i} has {} cells for {} columns",
                row.len(),
                columns.len()
            )));
        }
    }
    manifest.record_output(path);
    let mut body = manifest.header_block();
    body.push_str(&columns.join(","));
    body.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(Cell::to_string).collect();
        body.push_str(&cells.join(","));
        body.push('\n');
    }
    let mut f = fs::File::create(path)?;
    f.write_all(body.as_bytes())?;
    manifest.write_sidecar(path)?;
    Ok(())
}

/// Write a JSON document plus its manifest sidecar.
pub fn write_json<T: Serialize>(path: &Path, manifest: &mut RunManifest, value: &T) -> Result<()> {
    manifest.record_output(path);
    let body = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Encode(format!("json serialization: {e}")))?;
    fs::write(path, body + "\n")?;
    manifest.write_sidecar(path)?;
    Ok(())
}
