//! Deterministic table output.
//!
//! Numbers use the shortest representation that round-trips to the same
//! `f64` (at most 17 significant digits), so identical inputs give
//! byte-identical files on every platform.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::Format;

pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        ryu::Buffer::new().format_finite(x).to_owned()
    } else {
        x.to_string()
    }
}

/// Time as it appears in file names: `0.5` becomes `0_5`.
pub fn time_tag(t: f64) -> String {
    t.to_string().replace('.', "_")
}

/// A numeric table with a header row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        out.flush()
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        serde_json::to_writer(&mut out, self)?;
        writeln!(out)?;
        out.flush()
    }

    /// Write `<stem>.<ext>` into `dir` in the requested format.
    pub fn save(&self, dir: &Path, stem: &str, format: Format) -> io::Result<PathBuf> {
        let path = dir.join(format!("{stem}.{}", format.extension()));
        let out = BufWriter::new(fs::File::create(&path)?);
        match format {
            Format::Csv => self.write_csv(out)?,
            Format::Json => self.write_json(out)?,
        }
        Ok(path)
    }
}
