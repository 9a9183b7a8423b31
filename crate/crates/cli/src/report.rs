use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A documented discrepancy in the printed source; does not fail the run.
    Flagged,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAG",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub artifacts: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::from_bool(ok), detail: detail.into(), artifacts: Value::Null }
    }

    pub fn flagged(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Flagged, detail: detail.into(), artifacts: Value::Null }
    }

    pub fn with_artifacts(mut self, artifacts: Value) -> Self {
        self.artifacts = artifacts;
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "title": self.title, "passed": !self.failed(), "checks": self.checks })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            if c.detail.is_empty() {
                writeln!(f, "  [{}] {}", c.status, c.name)?;
            } else {
                writeln!(f, "  [{}] {}: {}", c.status, c.name, c.detail)?;
            }
        }
        let (p, x, g) = self.checks.iter().fold((0, 0, 0), |(p, x, g), c| match c.status {
            Status::Pass => (p + 1, x, g),
            Status::Fail => (p, x + 1, g),
            Status::Flagged => (p, x, g + 1),
        });
        write!(f, "{} passed, {} failed, {} flagged", p, x, g)
    }
}
