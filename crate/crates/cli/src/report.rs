use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::Format;

pub const CSV_HEADER: [&str; 6] = ["name", "anchor", "pass", "observed", "expected", "tolerance"];

/// One verified statement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Stable identifier of the claim being checked, or `"plumbing"`.
    pub anchor: String,
    pub pass: bool,
    pub observed: Value,
    pub expected: Value,
    pub tolerance: Option<f64>,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        anchor: &str,
        pass: bool,
        observed: impl Into<Value>,
        expected: impl Into<Value>,
        tolerance: Option<f64>,
    ) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.to_string(),
            pass,
            observed: observed.into(),
            expected: expected.into(),
            tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub trials: u64,
    pub pairs: u64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub parameters: Parameters,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, seed: u64, parameters: Parameters, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        Self {
            command: command.to_string(),
            seed,
            parameters,
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for c in &self.checks {
            w.write_record([
                c.name.as_str(),
                c.anchor.as_str(),
                if c.pass { "true" } else { "false" },
                &c.observed.to_string(),
                &c.expected.to_string(),
                &c.tolerance.map(|t| t.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Human-readable lines, one per check.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!("{mark}  {:<40} [{}]\n", c.name, c.anchor));
        }
        s.push_str(&format!(
            "{}: {}/{} checks passed\n",
            self.command, self.summary.passed, self.summary.total
        ));
        s
    }
}

/// Writes `r` to `path`, or to standard output when `path` is `None`.
pub fn emit_report(r: &Report, format: Format, path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            let mut w = BufWriter::new(f);
            write_to(r, format, &mut w).with_context(|| format!("cannot write {}", p.display()))?;
            w.flush().with_context(|| format!("cannot write {}", p.display()))?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_to(r, format, &mut lock).context("cannot write to standard output")?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn write_to<W: Write>(r: &Report, format: Format, w: &mut W) -> anyhow::Result<()> {
    match format {
        Format::Json => w.write_all(r.to_json()?.as_bytes())?,
        Format::Csv => r.write_csv(w)?,
    }
    Ok(())
}
