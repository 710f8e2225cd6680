use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// An identity that was checked, with a witness when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub input: String,
    /// SHA-256 of the canonical JSON of the input presentation.
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<(i32, i32)>,
    pub tables: Vec<Table>,
    pub identities: Vec<IdentityRecord>,
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl RunReport {
    pub fn new(command: &str, input: &str, input_digest: String, window: Option<(i32, i32)>) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input: input.to_string(),
            input_digest,
            window,
            tables: Vec::new(),
            identities: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>) {
        self.identities.push(IdentityRecord { name: name.into(), passed, witness: if passed { None } else { witness } });
    }

    pub fn passed(&self) -> bool {
        self.identities.iter().all(|r| r.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// The human-readable rendering printed to standard output.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} on {}", self.command, self.input);
        if let Some((lo, hi)) = self.window {
            let _ = writeln!(out, "window [{lo}, {hi}]");
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n{}", t.title);
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.len()).collect();
            for r in &t.rows {
                for (w, cell) in widths.iter_mut().zip(r) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "{}", line(&t.columns));
            for r in &t.rows {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        if !self.identities.is_empty() {
            let _ = writeln!(out);
            for r in &self.identities {
                match (&r.witness, r.passed) {
                    (_, true) => {
                        let _ = writeln!(out, "PASS  {}", r.name);
                    }
                    (Some(w), false) => {
                        let _ = writeln!(out, "FAIL  {}: {w}", r.name);
                    }
                    (None, false) => {
                        let _ = writeln!(out, "FAIL  {}", r.name);
                    }
                }
            }
        }
        out
    }
}
