//! Run manifests and CSV files.
//!
//! Every file written for one run carries the same run id, the SHA-256 of the
//! manifest's canonical JSON. Nothing time- or host-dependent enters the
//! manifest, so identical inputs give byte-identical files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

use cohbench_core::dsl::serialize;
use cohbench_core::BenchGraph;

use crate::error::{CliError, CliResult};

/// Shortest decimal string that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Path as given, or `builtin:fig1`.
    pub bench: Option<String>,
    /// SHA-256 of the bench text after overrides.
    pub bench_sha256: Option<String>,
    /// Interface units: degrees for angles, SI otherwise.
    pub params: BTreeMap<String, f64>,
    pub options: BTreeMap<String, String>,
    pub run_id: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str) -> RunManifest {
        RunManifest {
            tool: "cohbench".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            bench: None,
            bench_sha256: None,
            params: BTreeMap::new(),
            options: BTreeMap::new(),
            run_id: String::new(),
        }
    }

    /// Records the bench and its resolved parameters: every reserved name
    /// plus the bench's own declarations.
    pub fn with_bench(mut self, source: &str, graph: &BenchGraph) -> RunManifest {
        self.bench = Some(source.to_string());
        self.bench_sha256 = Some(sha256_hex(serialize(graph).text.as_bytes()));
        self.params = graph.bench_params().to_table();
        self.params.extend(graph.params.iter().map(|(k, v)| (k.clone(), *v)));
        self
    }

    pub fn option(mut self, key: &str, value: impl ToString) -> RunManifest {
        self.options.insert(key.to_string(), value.to_string());
        self
    }

    /// Fills `run_id` from the rest of the manifest.
    pub fn seal(mut self) -> RunManifest {
        self.run_id.clear();
        let canonical = serde_json::to_vec(&self).expect("manifest serializes");
        self.run_id = sha256_hex(&canonical);
        self
    }
}

/// An output directory bound to one sealed manifest.
#[derive(Debug)]
pub struct OutputDir {
    pub path: PathBuf,
    pub manifest: RunManifest,
}

impl OutputDir {
    pub fn create(path: &Path, manifest: RunManifest) -> CliResult<OutputDir> {
        fs::create_dir_all(path).with_context(|| format!("cannot create output directory {}", path.display()))?;
        Ok(OutputDir { path: path.to_path_buf(), manifest: manifest.seal() })
    }

    pub fn run_id(&self) -> &str {
        &self.manifest.run_id
    }

    /// `# run:<id>` line, header, rows; `\n` line endings.
    pub fn write_csv(&self, name: &str, header: &[&str], rows: &[Vec<String>]) -> CliResult<PathBuf> {
        if rows.is_empty() {
            return Err(CliError::usage(format!("{name}: no rows to write")));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != header.len()) {
            return Err(CliError::usage(format!(
                "{name}: row {bad} has {} fields, header has {}",
                rows[bad].len(),
                header.len()
            )));
        }
        let mut buf = format!("# run:{}\n", self.run_id()).into_bytes();
        {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut buf);
            w.write_record(header).map_err(|e| CliError::usage(e.to_string()))?;
            for r in rows {
                w.write_record(r).map_err(|e| CliError::usage(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::usage(e.to_string()))?;
        }
        self.write(name, &buf)
    }

    pub fn write_manifest(&self) -> CliResult<PathBuf> {
        let mut text = serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
        text.push('\n');
        self.write("manifest.json", text.as_bytes())
    }

    fn write(&self, name: &str, bytes: &[u8]) -> CliResult<PathBuf> {
        let path = self.path.join(name);
        fs::write(&path, bytes).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(path)
    }
}
