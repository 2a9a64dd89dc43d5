//! Coefficient table files: one `<c|b|a|d> <i> <decimal>` entry per line,
//! `#` starts a comment.

use std::fmt::Write;
use std::path::Path;

use pdcert_core::ivreal::parse_decimal;
use pdcert_core::seedmap::{Column, SeedTable};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Table(#[from] pdcert_core::Error),
}

pub fn parse_table(text: &str) -> Result<SeedTable, TableError> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| TableError::Line { line: n + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [col, idx, val] = fields[..] else {
            return Err(err(format!("expected 3 fields, found {}", fields.len())));
        };
        let col = Column::from_letter(col).ok_or_else(|| err(format!("unknown column {col:?}")))?;
        let idx: usize = idx.parse().map_err(|_| err(format!("bad index {idx:?}")))?;
        let val = parse_decimal(val).map_err(|e| err(format!("bad value {val:?}: {e}")))?;
        entries.push((col, idx, val));
    }
    Ok(SeedTable::from_entries(&entries)?)
}

pub fn load_table(path: &Path) -> Result<SeedTable, TableError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| TableError::Io { path: path.display().to_string(), source })?;
    parse_table(&text)
}

/// The shipped table in file form.
pub fn builtin_table_text() -> String {
    let mut out = String::new();
    for (col, i, lit) in SeedTable::builtin_literals() {
        let _ = writeln!(out, "{} {i} {lit}", col.letter());
    }
    out
}

/// SHA-256 of the table's canonical enclosure listing, hex encoded.
pub fn table_hash(table: &SeedTable) -> String {
    hex::encode(Sha256::digest(table.canonical_text().as_bytes()))
}
