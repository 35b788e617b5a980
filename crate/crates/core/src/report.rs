//! Structured check reports.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
        }
    }

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
        f.write_str(self.as_str())
    }
}

/// One named sub-check.
#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub name: String,
    pub status: Status,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub details: Vec<Finding>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report { check: check.to_string(), status: Status::Pass, details: Vec::new() }
    }

    /// Adds a finding. The overall status is the worst one seen, `Fail` beating `Unknown`.
    pub fn push(&mut self, name: &str, status: Status, message: impl Into<String>) {
        self.status = match (self.status, status) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Unknown, _) | (_, Status::Unknown) => Status::Unknown,
            _ => Status::Pass,
        };
        self.details.push(Finding { name: name.to_string(), status, message: message.into() });
    }

    pub fn check(&mut self, name: &str, ok: bool, message: impl Into<String>) {
        self.push(name, Status::from_bool(ok), message);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn finding(&self, name: &str) -> Option<&Finding> {
        self.details.iter().find(|f| f.name == name)
    }

    /// Folds another report in, prefixing its finding names.
    pub fn absorb(&mut self, other: Report) {
        for f in other.details {
            let name = alloc::format!("{}.{}", other.check, f.name);
            self.push(&name, f.status, f.message);
        }
        if other.status != Status::Pass && self.status == Status::Pass {
            self.status = other.status;
        }
    }
}
