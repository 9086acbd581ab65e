use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::CliResult;

/// One CSV file: a header naming columns with units, numeric rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub file_name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(file_name: &str, header: &[&str]) -> Self {
        Self { file_name: file_name.to_owned(), header: header.iter().map(|h| (*h).to_owned()).collect(), rows: vec![] }
    }

    pub fn with_header(file_name: &str, header: Vec<String>) -> Self {
        Self { file_name: file_name.to_owned(), header, rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// `%.16e` values, LF endings.
    pub fn write(&self, dir: &Path) -> CliResult<PathBuf> {
        let path = dir.join(&self.file_name);
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(&path)?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| format!("{v:.16e}")))?;
        }
        w.flush()?;
        Ok(path)
    }
}

/// Tables plus scalar diagnostics and notes for the manifest.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub diagnostics: Vec<(String, String)>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn table(&self, file_name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.file_name == file_name)
    }

    pub fn diagnostic(&self, key: &str) -> Option<&str> {
        self.diagnostics.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn diagnostic_f64(&self, key: &str) -> Option<f64> {
        self.diagnostic(key)?.parse().ok()
    }

    pub(crate) fn diag(&mut self, key: &str, value: impl ToString) {
        self.diagnostics.push((key.to_owned(), value.to_string()));
    }

    pub(crate) fn note(&mut self, text: &str) {
        self.notes.push(text.to_owned());
    }
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub(crate) fn write_manifest(
    dir: &Path,
    header: &[(&str, String)],
    canonical_params: &str,
    outcome: &Outcome,
    files: &[PathBuf],
    wall_time_s: f64,
) -> CliResult<PathBuf> {
    let mut text = String::new();
    for (k, v) in header {
        text.push_str(&format!("{k} = {v}\n"));
    }
    text.push_str(&format!("config_hash = sha256:{}\n", sha256_hex(canonical_params)));
    text.push_str("\n# resolved parameters\n");
    text.push_str(canonical_params);
    text.push_str("\n# diagnostics\n");
    for (k, v) in &outcome.diagnostics {
        text.push_str(&format!("{k} = {v}\n"));
    }
    if !outcome.notes.is_empty() {
        text.push_str("\n# implementation choices\n");
        for n in &outcome.notes {
            text.push_str(&format!("# {n}\n"));
        }
    }
    text.push_str("\n# outputs\n");
    for f in files {
        let name = f.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        text.push_str(&format!("file = {name}\n"));
    }
    text.push_str(&format!("wall_time_s = {wall_time_s:.3}\n"));
    let path = dir.join("manifest.txt");
    fs::write(&path, text)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_format() {
        let dir = tempfile::tempdir().unwrap();
        let mut t = Table::new("a.csv", &["t_ns", "P_g"]);
        t.push(vec![0.0, 1.0]);
        t.push(vec![0.5, 1.0 / 3.0]);
        let path = t.write(dir.path()).unwrap();
        let text = fs::read_to_string(path).unwrap();
        assert_eq!(
            text,
            "t_ns,P_g\n0.0000000000000000e0,1.0000000000000000e0\n5.0000000000000000e-1,3.3333333333333331e-1\n"
        );
        assert_eq!(t.column("P_g").unwrap()[1], 1.0 / 3.0);
    }

    #[test]
    fn hash_is_hex_sha256() {
        assert_eq!(
            sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
