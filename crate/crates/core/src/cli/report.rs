use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::{CliError, Command};
use crate::linalg::CMat;
use crate::suites::Check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Machine-readable outcome of one job.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: Command,
    pub seed: u64,
    pub tol: f64,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
}

impl Report {
    pub fn new(
        command: Command,
        seed: u64,
        tol: f64,
        checks: Vec<Check>,
        data: serde_json::Value,
    ) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        Self {
            command,
            seed,
            tol,
            checks,
            summary,
            data,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    /// Pretty JSON with a trailing newline. Numbers use the shortest
    /// round-trip representation, so equal reports are equal bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// `row,col,re,im` lines for every entry of the Gram matrix.
pub fn gram_csv(gram: &CMat) -> String {
    let mut out = String::from("row,col,re,im\n");
    for i in 0..gram.nrows() {
        for j in 0..gram.ncols() {
            let z = gram[(i, j)];
            writeln!(out, "{i},{j},{},{}", z.re, z.im).expect("writing to a String");
        }
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}
