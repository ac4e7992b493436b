//! Tables, CSV/JSON persistence and the run sidecar.

use std::fs;
use std::path::{Path, PathBuf};

use boundcs::ConfidenceRegion;
use serde::Serialize;

use crate::error::Result;

/// An in-memory CSV table whose rows are already formatted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()?)?;
        Ok(())
    }
}

/// Shortest round-trip decimal form, so reruns are byte-identical.
pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Interval rows of a region: `(index, lo, hi)`, or one blank row when the
/// region is empty.
pub fn interval_cells(region: &ConfidenceRegion) -> Vec<[String; 3]> {
    if region.is_empty() {
        return vec![[String::new(), String::new(), String::new()]];
    }
    region.intervals().iter().enumerate().map(|(i, &(lo, hi))| [i.to_string(), num(lo), num(hi)]).collect()
}

/// JSON form of a region: `{"intervals": [[lo, hi], ...], "volume": v}`.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct RegionJson {
    pub intervals: Vec<[f64; 2]>,
    pub volume: f64,
}

impl From<&ConfidenceRegion> for RegionJson {
    fn from(r: &ConfidenceRegion) -> Self {
        Self { intervals: r.intervals().iter().map(|&(a, b)| [a, b]).collect(), volume: r.volume() }
    }
}

#[derive(Serialize)]
struct Sidecar<'a, C: Serialize> {
    command: &'a str,
    version: &'a str,
    core_version: &'a str,
    config: &'a C,
    #[serde(skip_serializing_if = "Option::is_none")]
    extra: Option<serde_json::Value>,
}

/// Writes `<path>.json` next to a CSV, recording the command, the full
/// configuration and the library versions.
pub fn write_sidecar<C: Serialize>(
    csv_path: &Path,
    command: &str,
    config: &C,
    extra: Option<serde_json::Value>,
) -> Result<()> {
    let sidecar =
        Sidecar { command, version: env!("CARGO_PKG_VERSION"), core_version: boundcs::VERSION, config, extra };
    let mut path: PathBuf = csv_path.to_path_buf();
    path.as_mut_os_string().push(".json");
    fs::write(path, serde_json::to_string_pretty(&sidecar)? + "\n")?;
    Ok(())
}

/// Writes each named table as `<out_dir>/<name>.csv` with a sidecar.
pub fn write_tables<C: Serialize>(out_dir: &Path, command: &str, config: &C, tables: &[(&str, Table)]) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    for (name, table) in tables {
        let path = out_dir.join(format!("{name}.csv"));
        table.write(&path)?;
        write_sidecar(&path, command, config, None)?;
    }
    Ok(())
}
