//! Check records shared by every verification routine, and the JSON run
//! report.

use serde::Serialize;

use crate::freealg::Element;
use crate::print::format_element;

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational record (raw residuals, unclaimed orders); never fails.
    Info,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The identity being checked, written as a formula.
    pub paper_eq: String,
    pub status: Status,
    pub residual: String,
    pub millis: u64,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, tag: impl Into<String>, status: Status, residual: impl Into<String>) -> Self {
        Self { name: name.into(), paper_eq: tag.into(), status, residual: residual.into(), millis: 0 }
    }

    /// Passes iff `residual` is exactly zero.
    pub fn zero(name: impl Into<String>, tag: impl Into<String>, residual: &Element) -> Self {
        let status = if residual.is_zero() { Status::Pass } else { Status::Fail };
        Self::new(name, tag, status, format_element(residual))
    }

    pub fn ok(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Ordered list of records; `ok` iff none failed.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckReport {
    pub records: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn zero(&mut self, name: impl Into<String>, tag: impl Into<String>, residual: &Element) {
        self.push(CheckRecord::zero(name, tag, residual));
    }

    pub fn info(&mut self, name: impl Into<String>, tag: impl Into<String>, value: &Element) {
        self.push(CheckRecord::new(name, tag, Status::Info, format_element(value)));
    }

    pub fn skipped(&mut self, name: impl Into<String>, tag: impl Into<String>, why: impl Into<String>) {
        self.push(CheckRecord::new(name, tag, Status::Skipped, why));
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.records.extend(other.records);
    }

    pub fn ok(&self) -> bool {
        self.records.iter().all(CheckRecord::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// Top-level JSON document: `{version, config, checks}`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport<C: Serialize> {
    pub version: &'static str,
    pub config: C,
    pub checks: Vec<CheckRecord>,
}

impl<C: Serialize> RunReport<C> {
    pub fn new(config: C, checks: Vec<CheckRecord>) -> Self {
        Self { version: REPORT_VERSION, config, checks }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One line per record: `status  name  [tag]  residual`.
pub fn format_text(records: &[CheckRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!("{:<7} {}  [{}]  {}\n", r.status.as_str(), r.name, r.paper_eq, r.residual));
    }
    let fails = records.iter().filter(|r| r.status == Status::Fail).count();
    let passes = records.iter().filter(|r| r.status == Status::Pass).count();
    out.push_str(&format!("{passes} passed, {fails} failed, {} total\n", records.len()));
    out
}
