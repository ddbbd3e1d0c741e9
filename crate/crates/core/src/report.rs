//! Structured pass/fail records for checked statements.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Witness for a failure, or the reason a check was skipped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Outcome of a batch of checks about one subject.
///
/// `overall` is the conjunction of the non-skipped checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport { subject: subject.into(), checks: Vec::new(), overall: true }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: Status::Pass, witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.overall = false;
        self.checks.push(Check { name: name.into(), status: Status::Fail, witness: Some(witness.into()) });
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: Status::Skipped, witness: Some(reason.into()) });
    }

    /// Record a check; `witness` is only evaluated on failure.
    pub fn record(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(name)
        } else {
            self.fail(name, witness())
        }
    }

    /// Pull in every check from `other`, prefixing names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            if c.status == Status::Fail {
                self.overall = false;
            }
            self.checks.push(c);
        }
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks.iter().find(|c| c.status == Status::Fail).map(|c| c.name.as_str())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn has_skips(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Skipped)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.subject, if self.overall { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            match &c.witness {
                Some(w) => writeln!(f, "  [{tag}] {} ({w})", c.name)?,
                None => writeln!(f, "  [{tag}] {}", c.name)?,
            }
        }
        Ok(())
    }
}

/// Collects up to a handful of witnesses for one named check.
#[derive(Default)]
pub(crate) struct Witnesses {
    items: Vec<String>,
    count: usize,
}

impl Witnesses {
    const KEEP: usize = 4;

    pub fn push(&mut self, w: impl FnOnce() -> String) {
        if self.items.len() < Self::KEEP {
            self.items.push(w());
        }
        self.count += 1;
    }

    pub fn into_report(self, report: &mut VerificationReport, name: &str) {
        if self.count == 0 {
            report.pass(name);
        } else {
            let mut w = self.items.join("; ");
            if self.count > self.items.len() {
                w.push_str(&format!("; ... {} failures total", self.count));
            }
            report.fail(name, w);
        }
    }
}
