//! CSV writing with shortest round-trip float formatting.

use std::fs;
use std::path::Path;

use csv::{Reader, Writer};

use crate::error::{CliError, CliResult};

/// Column-major table with a header.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        let columns = vec![Vec::new(); header.len()];
        Self { header, columns }
    }

    pub fn push_row(&mut self, row: &[f64]) {
        debug_assert_eq!(row.len(), self.columns.len());
        for (c, v) in self.columns.iter_mut().zip(row) {
            c.push(*v);
        }
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.header.iter().position(|h| h == name).map(|n| self.columns[n].as_slice())
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let err = |e: csv::Error| CliError::io(path.display(), e);
        let mut w = Writer::from_path(path).map_err(err)?;
        w.write_record(&self.header).map_err(err)?;
        for r in 0..self.rows() {
            w.write_record(self.columns.iter().map(|c| c[r].to_string())).map_err(err)?;
        }
        w.flush().map_err(|e| CliError::io(path.display(), e))
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let err = |e: csv::Error| CliError::io(path.display(), e);
        let mut r = Reader::from_path(path).map_err(err)?;
        let header: Vec<String> = r.headers().map_err(err)?.iter().map(str::to_owned).collect();
        let mut table = Table::new(header);
        for (line, rec) in r.records().enumerate() {
            let rec = rec.map_err(err)?;
            let row = rec
                .iter()
                .map(|t| {
                    t.trim().parse::<f64>().map_err(|e| CliError::parse(format!("{}:{}: {t:?}: {e}", path.display(), line + 2)))
                })
                .collect::<CliResult<Vec<_>>>()?;
            table.push_row(&row);
        }
        Ok(table)
    }
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}

pub fn ensure_dir(path: &Path) -> CliResult<()> {
    fs::create_dir_all(path).map_err(|e| CliError::io(path.display(), e))
}
