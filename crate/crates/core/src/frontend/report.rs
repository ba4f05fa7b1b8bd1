//! JSON run reports.
//!
//! Failures list 1-based indices and canonical residual text. At most
//! [`MAX_LISTED_FAILURES`] are listed per check; `failure_count` is always
//! the full count.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::report::{Check, VerificationReport};

pub const MAX_LISTED_FAILURES: usize = 8;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InputInfo {
    pub source: String,
    pub digest: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FailureEntry {
    pub index: Vec<usize>,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub verdict: &'static str,
    pub failure_count: usize,
    pub failures: Vec<FailureEntry>,
    pub truncated: bool,
}

impl CheckEntry {
    pub fn from_check(c: &Check) -> Self {
        CheckEntry {
            name: c.name.clone(),
            verdict: verdict(c.passed()),
            failure_count: c.failures.len(),
            failures: c
                .failures
                .iter()
                .take(MAX_LISTED_FAILURES)
                .map(|f| FailureEntry {
                    index: f.index.iter().map(|i| i + 1).collect(),
                    residual: f.residual.to_string(),
                })
                .collect(),
            truncated: c.failures.len() > MAX_LISTED_FAILURES,
        }
    }
}

/// One document per run.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub input: InputInfo,
    pub verdict: &'static str,
    pub checks: Vec<CheckEntry>,
    pub outputs: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

/// `sha256:<hex>` of the input bytes.
pub fn digest(contents: &[u8]) -> String {
    let hash = Sha256::digest(contents);
    let mut s = String::with_capacity(7 + 64);
    s.push_str("sha256:");
    for b in hash {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

impl RunReport {
    pub fn new(command: &str, source: &str, contents: &[u8]) -> Self {
        RunReport {
            command: command.to_string(),
            input: InputInfo {
                source: source.to_string(),
                digest: digest(contents),
            },
            verdict: "pass",
            checks: Vec::new(),
            outputs: Map::new(),
            elapsed_ms: None,
        }
    }

    pub fn push_check(&mut self, c: &Check) {
        self.checks.push(CheckEntry::from_check(c));
        self.verdict = verdict(self.passed());
    }

    pub fn push_report(&mut self, r: &VerificationReport) {
        for c in &r.checks {
            self.push_check(c);
        }
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) {
        self.outputs.insert(key.to_string(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == "pass")
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            digest(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn failures_are_one_based_and_truncated() {
        let mut c = Check::new("x");
        for i in 0..10 {
            c.record(&[i, 0], Poly::one(1));
        }
        let e = CheckEntry::from_check(&c);
        assert_eq!(e.failure_count, 10);
        assert_eq!(e.failures.len(), MAX_LISTED_FAILURES);
        assert_eq!(e.failures[0].index, vec![1, 1]);
        assert_eq!(e.failures[0].residual, "1");
        assert!(e.truncated);

        let mut r = RunReport::new("test", "mem", b"");
        assert_eq!(r.verdict, "pass");
        r.push_check(&c);
        assert_eq!(r.verdict, "fail");
        assert!(r.to_json().ends_with("}\n"));
    }
}
