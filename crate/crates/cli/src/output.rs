//! Deterministic file output: CSV with `#`-prefixed provenance headers, or
//! the same table as a JSON document. Cells are pre-formatted strings so the
//! byte stream is identical across runs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::config::OutputFormat;
use crate::CliError;

/// One output table: provenance parameters, column names, and stringly rows.
pub struct Table {
    pub command: &'static str,
    pub params: BTreeMap<String, String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Table { command, params: BTreeMap::new(), columns, rows: Vec::new() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# mbqc {} {}\n", env!("CARGO_PKG_VERSION"), self.command));
        for (k, v) in &self.params {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let mut doc = serde_json::Map::new();
        doc.insert("tool".into(), serde_json::json!(format!("mbqc {}", env!("CARGO_PKG_VERSION"))));
        doc.insert("command".into(), serde_json::json!(self.command));
        let params: serde_json::Map<String, serde_json::Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::json!(v)))
            .collect();
        doc.insert("params".into(), serde_json::Value::Object(params));
        doc.insert("columns".into(), serde_json::json!(self.columns));
        doc.insert("rows".into(), serde_json::json!(self.rows));
        let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
        text.push('\n');
        text
    }

    /// Write the table to `path` in the requested format.
    pub fn write(&self, path: &str, format: OutputFormat) -> Result<(), CliError> {
        let text = match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        };
        std::fs::write(path, text).map_err(|e| CliError::Io(format!("writing {path}: {e}")))
    }
}

/// Derive the companion-file path by appending `suffix` to the file stem
/// (memory_curves.csv → memory_curves_p.csv).
pub fn companion_path(path: &str, suffix: &str) -> String {
    let p = Path::new(path);
    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = p.extension().map(|s| s.to_string_lossy().into_owned());
    let mut name = format!("{stem}{suffix}");
    if let Some(ext) = ext {
        name.push('.');
        name.push_str(&ext);
    }
    let mut out = PathBuf::from(p.parent().unwrap_or_else(|| Path::new("")));
    out.push(name);
    out.to_string_lossy().into_owned()
}

/// Full-precision deterministic float formatting (shortest round-trip form).
pub fn raw(x: f64) -> String {
    format!("{x}")
}

/// Three-decimal presentation formatting.
pub fn presentation(x: f64) -> String {
    format!("{x:.3}")
}
