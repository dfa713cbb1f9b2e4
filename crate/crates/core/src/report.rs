//! Verification reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Accepted on the strength of a caller-supplied certificate, not decided.
    Certified,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Certified => "certified",
            Status::Skipped => "skipped",
        };
        f.write_str(s)
    }
}

/// One verdict. A failing check always carries a witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub law: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    /// True iff no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn pass(&mut self, law: &str, anchor: &str, instances: usize) {
        self.push(Check {
            law: law.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            instances: Some(instances),
            witness: None,
            note: None,
        });
    }

    pub fn fail(&mut self, law: &str, anchor: &str, witness: Value) {
        self.push(Check {
            law: law.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            instances: None,
            witness: Some(witness),
            note: None,
        });
    }

    pub fn certified(&mut self, law: &str, anchor: &str, note: &str) {
        self.push(Check {
            law: law.into(),
            anchor: anchor.into(),
            status: Status::Certified,
            instances: None,
            witness: None,
            note: Some(note.into()),
        });
    }

    pub fn skipped(&mut self, law: &str, anchor: &str, note: &str) {
        self.push(Check {
            law: law.into(),
            anchor: anchor.into(),
            status: Status::Skipped,
            instances: None,
            witness: None,
            note: Some(note.into()),
        });
    }

    /// Appends another report's checks, prefixing their anchors.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.anchor = format!("{prefix}/{}", c.anchor);
            }
            self.checks.push(c);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned plain-text rendering, one line per check.
    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.anchor.len()).max().unwrap_or(0);
        let mut out = format!("report: {}\n", self.subject);
        for c in &self.checks {
            out.push_str(&format!("  {:<9} {:<width$}  {}", c.status.to_string(), c.anchor, c.law));
            if let Some(n) = c.instances {
                out.push_str(&format!(" [{n} instances]"));
            }
            if let Some(note) = &c.note {
                out.push_str(&format!(" ({note})"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!("\n            witness: {w}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "  summary: {} pass, {} fail, {} certified, {} skipped\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Certified),
            self.count(Status::Skipped)
        ));
        out
    }
}

/// Accumulates instance counts and failures for a single law.
pub(crate) struct LawTally {
    law: &'static str,
    anchor: String,
    instances: usize,
    failures: Vec<Value>,
}

impl LawTally {
    pub fn new(law: &'static str, anchor: impl Into<String>) -> Self {
        LawTally {
            law,
            anchor: anchor.into(),
            instances: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn fail(&mut self, witness: Value) {
        self.instances += 1;
        self.failures.push(witness);
    }

    pub fn failures(&self) -> usize {
        self.failures.len()
    }

    pub fn finish(self, report: &mut VerificationReport) {
        if self.failures.is_empty() {
            report.pass(self.law, &self.anchor, self.instances);
        } else {
            for w in self.failures {
                report.fail(self.law, &self.anchor, w);
            }
        }
    }
}
