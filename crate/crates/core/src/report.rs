//! Pass/fail/flagged check lists produced by the verifiers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A discrepancy attributed to a suspected misprint; never fails a run.
    Flagged,
}

pub type Witness = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), status: Status::Pass, witness: None, note: None }
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Self {
        Self { name: name.into(), status: Status::Fail, witness: Some(witness), note: None }
    }

    pub fn flagged(name: impl Into<String>, note: impl Into<String>) -> Self {
        Self { name: name.into(), status: Status::Flagged, witness: None, note: Some(note.into()) }
    }

    pub fn from_outcome(name: impl Into<String>, outcome: Option<Witness>) -> Self {
        match outcome {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Turns a failure into a flag carrying `note`; passes are left alone.
    pub fn flag_failure(mut self, note: &str) -> Self {
        if self.status == Status::Fail {
            self.status = Status::Flagged;
            self.note = Some(note.to_string());
        }
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends `other`'s checks with `prefix/` prepended to their names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Flagged => s.flagged += 1,
            }
        }
        s
    }

    /// No check failed (flags allowed).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Builds a witness map from `(key, value)` pairs.
pub fn witness<K: Into<String>, V: ToString>(pairs: impl IntoIterator<Item = (K, V)>) -> Witness {
    pairs.into_iter().map(|(k, v)| (k.into(), v.to_string())).collect()
}
