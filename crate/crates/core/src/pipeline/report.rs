use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use crate::linalg::{fmt_q, RationalMatrix};

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ObstructionCertified,
    Failed,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::ObstructionCertified => 0,
            Verdict::Failed => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ObstructionCertified => "obstruction_certified",
            Verdict::Failed => "failed",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub schema_version: &'static str,
    pub pipeline: String,
    pub polynomial: String,
    pub seed: u64,
    pub steps: Vec<StepRecord>,
    pub verdict: Verdict,
    pub diagnosis: Option<String>,
}

impl ObstructionReport {
    pub fn new(pipeline: &str, polynomial: String, seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            pipeline: pipeline.into(),
            polynomial,
            seed,
            steps: Vec::new(),
            verdict: Verdict::Inconclusive,
            diagnosis: None,
        }
    }

    /// Record a step; returns whether it passed.
    pub fn push(
        &mut self,
        name: &str,
        status: Status,
        summary: impl Into<String>,
        data: impl Serialize,
    ) -> bool {
        let data = serde_json::to_value(data).unwrap_or(Value::Null);
        self.steps.push(StepRecord {
            name: name.into(),
            status,
            summary: summary.into(),
            data,
        });
        status == Status::Passed
    }

    pub fn check(
        &mut self,
        name: &str,
        ok: bool,
        summary: impl Into<String>,
        data: impl Serialize,
    ) -> bool {
        self.push(
            name,
            if ok { Status::Passed } else { Status::Failed },
            summary,
            data,
        )
    }

    /// An error raised by a step: the run stops and is inconclusive.
    pub fn error(&mut self, name: &str, err: &crate::Error) {
        self.push(name, Status::Inconclusive, err.to_string(), Value::Null);
    }

    /// The overall verdict: certified only if every step passed.
    pub fn finish(mut self) -> Self {
        let first = |s: Status| self.steps.iter().find(|r| r.status == s);
        let (verdict, bad) = if let Some(r) = first(Status::Failed) {
            (Verdict::Failed, Some(r))
        } else if let Some(r) = first(Status::Inconclusive) {
            (Verdict::Inconclusive, Some(r))
        } else if self.steps.is_empty() {
            (Verdict::Inconclusive, None)
        } else {
            (Verdict::ObstructionCertified, None)
        };
        self.diagnosis = bad.map(|r| format!("{}: {}", r.name, r.summary));
        self.verdict = verdict;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} for {} (seed {})",
            self.pipeline, self.polynomial, self.seed
        );
        for r in &self.steps {
            let tag = match r.status {
                Status::Passed => "ok  ",
                Status::Failed => "FAIL",
                Status::Inconclusive => "??  ",
            };
            let _ = writeln!(s, "  [{tag}] {}: {}", r.name, r.summary);
        }
        let _ = writeln!(s, "verdict: {}", self.verdict.as_str());
        if let Some(d) = &self.diagnosis {
            let _ = writeln!(s, "diagnosis: {d}");
        }
        s
    }
}

/// Rows of a rational matrix as strings, for report payloads.
pub fn matrix_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(fmt_q).collect())
        .collect()
}
