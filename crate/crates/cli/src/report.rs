use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use accmod_core::check::Check;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub name: String,
    pub status: Status,
}

/// Machine-readable outcome of one invocation. Contains nothing that
/// varies between runs with the same arguments. Keys are in sorted order
/// at every level, so generic JSON tools re-serialize it unchanged.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub cap: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub certificates: BTreeMap<String, Value>,
    pub checks: Vec<CheckEntry>,
    pub command: String,
    pub field: String,
    pub passed: bool,
    pub seed: u64,
}

#[derive(Debug, Default)]
pub struct Builder {
    checks: Vec<CheckEntry>,
    certificates: BTreeMap<String, Value>,
}

impl Builder {
    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(CheckEntry {
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail,
        });
    }

    pub fn error(&mut self, name: impl Into<String>, err: impl ToString) {
        self.checks.push(CheckEntry {
            name: name.into(),
            status: Status::Error,
            detail: Some(err.to_string()),
        });
    }

    /// Adds each of `checks` under `prefix`.
    pub fn extend(&mut self, prefix: &str, checks: &[Check]) {
        for c in checks {
            self.check(format!("{prefix}{}", c.name), c.passed, c.detail.clone());
        }
    }

    pub fn certificate(&mut self, key: impl Into<String>, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("certificates serialize");
        self.certificates.insert(key.into(), v);
    }

    pub fn finish(mut self, command: String, field: String, seed: u64, cap: usize) -> Report {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed =
            !self.checks.is_empty() && self.checks.iter().all(|c| c.status == Status::Pass);
        Report {
            command,
            field,
            seed,
            cap,
            passed,
            checks: self.checks,
            certificates: self.certificates,
        }
    }
}

impl Report {
    /// 0 when every check passed, 2 when any check errored, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Error) {
            2
        } else if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, elapsed: Duration) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "accmod {}", self.command);
        let _ = writeln!(
            out,
            "field {}, seed {:#x}, cap {}",
            self.field, self.seed, self.cap
        );
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS ",
                Status::Fail => "FAIL ",
                Status::Error => "ERROR",
            };
            match &c.detail {
                Some(d) => {
                    let _ = writeln!(out, "{tag} {} ({d})", c.name);
                }
                None => {
                    let _ = writeln!(out, "{tag} {}", c.name);
                }
            }
        }
        for (k, v) in &self.certificates {
            let _ = writeln!(out, "{k}: {v}");
        }
        let failed = self
            .checks
            .iter()
            .filter(|c| c.status != Status::Pass)
            .count();
        let verdict = if self.passed { "pass" } else { "fail" };
        let _ = writeln!(
            out,
            "{verdict}: {} checks, {failed} not passing, {:.3}s",
            self.checks.len(),
            elapsed.as_secs_f64()
        );
        out
    }
}
