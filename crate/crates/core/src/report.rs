//! Check outcomes and reports.
//!
//! Every checker returns a list of named outcomes; a failing outcome carries the
//! first failing witness in enumeration order, so reports are deterministic even
//! when the sweep runs in parallel.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn pass(name: impl Into<String>, checked: u64) -> Self {
        CheckOutcome { name: name.into(), passed: true, checked, failures: 0, witness: None, detail: None }
    }

    pub fn fail(name: impl Into<String>, witness: Value) -> Self {
        CheckOutcome { name: name.into(), passed: false, checked: 1, failures: 1, witness: Some(witness), detail: None }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Self::pass(name, 1)
        } else {
            Self::fail(name, witness())
        }
    }

    pub fn from_sweep(name: impl Into<String>, checked: u64, failures: Vec<Value>) -> Self {
        let n = failures.len() as u64;
        CheckOutcome {
            name: name.into(),
            passed: n == 0,
            checked,
            failures: n,
            witness: failures.into_iter().next(),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: CheckOutcome) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = CheckOutcome>) {
        self.checks.extend(cs);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One line per check, for terminals.
    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let mut line = format!("[{status}] {} ({} checked, {} failed)", c.name, c.checked, c.failures);
                if let Some(d) = &c.detail {
                    line.push_str(&format!(" - {d}"));
                }
                line
            })
            .collect()
    }
}

/// Running count of a sweep: checks done, failures seen, first failing witness.
#[derive(Clone, Default, Debug)]
pub struct Tally {
    pub checked: u64,
    pub failures: u64,
    pub first: Option<Value>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(witness());
            }
        }
    }

    /// Merge a later tally into this one (order matters for the witness).
    pub fn merge(mut self, later: Tally) -> Tally {
        self.checked += later.checked;
        self.failures += later.failures;
        if self.first.is_none() {
            self.first = later.first;
        }
        self
    }

    pub fn outcome(self, name: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            name: name.into(),
            passed: self.failures == 0,
            checked: self.checked,
            failures: self.failures,
            witness: self.first,
            detail: None,
        }
    }
}

/// Run `f` for every index in 0..n in parallel and merge the tallies in index order.
pub fn par_tally<F>(n: usize, f: F) -> Tally
where
    F: Fn(usize, &mut Tally) + Sync + Send,
{
    let parts: Vec<Tally> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            f(i, &mut t);
            t
        })
        .collect();
    parts.into_iter().fold(Tally::default(), Tally::merge)
}
