//! Machine-readable verification reports.
//!
//! A report is one JSON object per line with a versioned `schema` field.
//! Cases may stand for a whole batch of checked instances (`checked`); a
//! failing case always carries a counterexample that reproduces it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA: &str = "extremal-report/v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    pub values: BTreeMap<String, Value>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub passed: bool,
    /// Number of instances this case stands for.
    pub checked: u64,
    pub values: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Failing instances beyond the one reported.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub further_failures: u64,
}

fn is_zero(n: &u64) -> bool {
    *n == 0
}

impl Case {
    pub fn pass(id: impl Into<String>, checked: u64) -> Self {
        Case {
            id: id.into(),
            passed: true,
            checked,
            values: BTreeMap::new(),
            counterexample: None,
            further_failures: 0,
        }
    }

    pub fn fail(id: impl Into<String>, checked: u64, counterexample: Counterexample) -> Self {
        Case {
            id: id.into(),
            passed: false,
            checked,
            values: BTreeMap::new(),
            counterexample: Some(counterexample),
            further_failures: 0,
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), value.into());
        self
    }
}

impl Counterexample {
    pub fn new(note: impl Into<String>) -> Self {
        Counterexample { graph6: None, values: BTreeMap::new(), note: note.into() }
    }

    pub fn graph(mut self, graph6: String) -> Self {
        self.graph6 = Some(graph6);
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), value.into());
        self
    }
}

/// Collects batch results: counts every instance and keeps the first failure.
#[derive(Debug, Clone)]
pub struct Tally {
    id: String,
    checked: u64,
    failures: u64,
    first: Option<Counterexample>,
}

impl Tally {
    pub fn new(id: impl Into<String>) -> Self {
        Tally { id: id.into(), checked: 0, failures: 0, first: None }
    }

    pub fn ok(&mut self) {
        self.checked += 1;
    }

    /// Records one instance; the counterexample is built only on failure.
    pub fn check(&mut self, holds: bool, counterexample: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !holds {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(counterexample());
            }
        }
    }

    pub fn failures(&self) -> u64 {
        self.failures
    }

    pub fn finish(self) -> Case {
        match self.first {
            None => Case::pass(self.id, self.checked),
            Some(cx) => {
                let mut case = Case::fail(self.id, self.checked, cx);
                case.further_failures = self.failures - 1;
                case
            }
        }
        .with("failures", self.failures)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub suite: String,
    pub parameters: BTreeMap<String, Value>,
    pub citations: Vec<String>,
    pub passed: bool,
    pub cases: Vec<Case>,
    /// Wall-clock time; left out of reports meant to be byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, citations: &[&str]) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA.to_string(),
            suite: suite.into(),
            parameters: BTreeMap::new(),
            citations: citations.iter().map(|c| c.to_string()).collect(),
            passed: true,
            cases: Vec::new(),
            runtime_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, case: Case) {
        self.passed &= case.passed;
        self.cases.push(case);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed)
    }

    pub fn to_jsonl(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn from_jsonl(line: &str) -> Result<Self, ReportParseError> {
        let report: VerificationReport = serde_json::from_str(line)?;
        if report.schema != REPORT_SCHEMA {
            return Err(ReportParseError::Schema(report.schema));
        }
        Ok(report)
    }

    /// Fixed-width text rendering: one row per case, values in key order.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "suite {} [{}]  cites: {}", self.suite, verdict, self.citations.join(", "));
        if !self.parameters.is_empty() {
            let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            let _ = writeln!(out, "  {}", params.join(" "));
        }
        let keys: Vec<&String> = {
            let mut keys: Vec<&String> = self.cases.iter().flat_map(|c| c.values.keys()).collect();
            keys.sort();
            keys.dedup();
            keys
        };
        let id_width = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(2).max(4);
        let widths: Vec<usize> = keys
            .iter()
            .map(|k| {
                self.cases
                    .iter()
                    .filter_map(|c| c.values.get(*k))
                    .map(|v| plain(v).len())
                    .max()
                    .unwrap_or(0)
                    .max(k.len())
            })
            .collect();
        let mut header = format!("  {:<id_width$}  {:>8}  ok  ", "case", "checked");
        for (k, w) in keys.iter().zip(&widths) {
            let _ = write!(header, " {:>w$}", k, w = *w);
        }
        let _ = writeln!(out, "{}", header.trim_end());
        for case in &self.cases {
            let mut line =
                format!("  {:<id_width$}  {:>8}  {}", case.id, case.checked, if case.passed { "ok  " } else { "FAIL" });
            for (k, w) in keys.iter().zip(&widths) {
                let cell = case.values.get(*k).map(plain).unwrap_or_default();
                let _ = write!(line, " {:>w$}", cell, w = *w);
            }
            let _ = writeln!(out, "{}", line.trim_end());
            if let Some(cx) = &case.counterexample {
                let vals: Vec<String> = cx.values.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
                let g = cx.graph6.as_deref().map(|g| format!(" graph6={g}")).unwrap_or_default();
                let _ = writeln!(out, "    counterexample:{g} {} ({})", vals.join(" "), cx.note);
            }
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportParseError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported report schema {0:?}")]
    Schema(String),
}
