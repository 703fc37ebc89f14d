//! Per-check verdicts collected by the verification operations.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::freealg::{GeneratorTable, Membership};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not derivable within the completion bound; neither proof nor refutation.
    Undecided { bound: usize },
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undecided { .. } => "undecided-at-bound",
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    /// Printed nonzero remainder for anything other than a pass.
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub entries: Vec<CheckEntry>,
    /// Named certificate payloads (solved scalars, systems used, …).
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(title: &str) -> Self {
        Report { title: title.to_string(), ..Report::default() }
    }

    pub fn push(&mut self, name: &str, status: Status, residual: Option<String>) {
        self.entries.push(CheckEntry { name: name.to_string(), status, residual });
    }

    pub fn pass(&mut self, name: &str) {
        self.push(name, Status::Pass, None);
    }

    /// Pass or fail on an exact equality, with a residual on failure.
    pub fn check(&mut self, name: &str, ok: bool, residual: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.push(name, Status::Fail, Some(residual()));
        }
    }

    pub fn push_membership(&mut self, name: &str, m: &Membership, table: &GeneratorTable) {
        match m {
            Membership::Member => self.pass(name),
            Membership::NotMember { residual } => {
                self.push(name, Status::Fail, Some(residual.display(table).to_string()))
            }
            Membership::Undecided { bound, residual } => self.push(
                name,
                Status::Undecided { bound: *bound },
                Some(residual.display(table).to_string()),
            ),
        }
    }

    pub fn note(&mut self, key: &str, value: String) {
        self.notes.push((key.to_string(), value));
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status.is_pass())
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Appends another report's entries, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut e in other.entries {
            e.name = alloc::format!("{prefix}{}", e.name);
            self.entries.push(e);
        }
        for (k, v) in other.notes {
            self.notes.push((alloc::format!("{prefix}{k}"), v));
        }
    }
}
