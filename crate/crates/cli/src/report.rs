use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Outcome of one CLI invocation. Exact values are always strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub result: Value,
    pub fixpoints: usize,
    pub weights: Vec<i64>,
    pub elapsed_ms: u64,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        match &self.result {
            Value::String(s) => {
                let _ = writeln!(out, "result: {s}");
            }
            Value::Array(items) => {
                let _ = writeln!(out, "result:");
                for item in items {
                    match item {
                        Value::String(s) => {
                            let _ = writeln!(out, "  {s}");
                        }
                        other => {
                            let _ = writeln!(out, "  {other}");
                        }
                    }
                }
            }
            other => {
                let _ = writeln!(out, "result: {other}");
            }
        }
        let w: Vec<String> = self.weights.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "fixpoints: {}", self.fixpoints);
        let _ = writeln!(out, "weights: {}", w.join(","));
        let _ = writeln!(out, "elapsed_ms: {}", self.elapsed_ms);
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                let _ = writeln!(out, "  [{mark}] {}: {}", c.name, c.detail);
            }
        }
        out
    }
}
