//! Result tables and their CSV / JSON emission.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::config::RunSpec;
use crate::error::{CliError, Result};

/// Named numeric columns of equal length plus the run that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    /// File stem of the emitted CSV and sidecar.
    pub name: String,
    pub columns: Vec<(String, Vec<f64>)>,
    pub metadata: RunSpec,
}

impl ResultTable {
    pub fn new(name: impl Into<String>, metadata: &RunSpec) -> Self {
        Self {
            name: name.into(),
            columns: Vec::new(),
            metadata: metadata.clone(),
        }
    }

    /// Appends a column. Panics if its length differs from the existing ones.
    pub fn with_column(mut self, name: impl Into<String>, values: Vec<f64>) -> Self {
        if let Some((first, col)) = self.columns.first() {
            assert_eq!(col.len(), values.len(), "column length differs from {first}");
        }
        self.columns.push((name.into(), values));
        self
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.as_slice())
    }

    /// CSV text: header row, then one line per row, `\n` terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in 0..self.rows() {
            for (k, (_, col)) in self.columns.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_number(&mut out, col[row]);
            }
            out.push('\n');
        }
        out
    }
}

/// 17 significant digits in scientific notation. Negative zero prints as zero.
fn write_number(out: &mut String, x: f64) {
    if x.is_nan() {
        out.push_str("NaN");
    } else {
        write!(out, "{:.16e}", x + 0.0).expect("writing to a String");
    }
}

/// Writes `<dir>/<name>.csv` and the `<dir>/<name>.json` sidecar. Returns the CSV path.
pub fn emit_csv(table: &ResultTable, dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let csv = dir.join(format!("{}.csv", table.name));
    std::fs::write(&csv, table.to_csv()).map_err(|e| CliError::io(&csv, e))?;
    let meta = dir.join(format!("{}.json", table.name));
    std::fs::write(&meta, table.metadata.to_json()).map_err(|e| CliError::io(&meta, e))?;
    Ok(csv)
}
