//! Structured pass/fail records emitted by every verification suite.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportItem {
    pub id: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    /// Empty iff the item passed.
    pub residual: String,
    pub ms: u64,
}

impl ReportItem {
    /// Status is derived from the residual: empty means pass.
    pub fn from_residual(id: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, residual: impl Into<String>) -> Self {
        let residual = residual.into();
        let status = if residual.is_empty() { Status::Pass } else { Status::Fail };
        ReportItem { id: id.into(), status, lhs: lhs.into(), rhs: rhs.into(), residual, ms: 0 }
    }

    pub fn check(id: impl Into<String>, ok: bool, lhs: impl Into<String>, rhs: impl Into<String>, why: impl Into<String>) -> Self {
        let mut why = why.into();
        if !ok && why.is_empty() {
            why = "mismatch".into();
        }
        if ok {
            why.clear();
        }
        ReportItem::from_residual(id, lhs, rhs, why)
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        ReportItem { id: id.into(), status: Status::Skipped, lhs: reason.into(), rhs: String::new(), residual: String::new(), ms: 0 }
    }

    pub fn with_ms(mut self, ms: u64) -> Self {
        self.ms = ms;
        self
    }
}

/// Runs `f` and stamps the elapsed time on the resulting item.
pub fn timed(f: impl FnOnce() -> ReportItem) -> ReportItem {
    let start = Instant::now();
    let item = f();
    let ms = start.elapsed().as_millis() as u64;
    item.with_ms(ms)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub items: Vec<ReportItem>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport { suite: suite.into(), items: Vec::new(), summary: Summary::default() }
    }

    pub fn from_items(suite: impl Into<String>, items: impl IntoIterator<Item = ReportItem>) -> Self {
        let mut r = VerificationReport::new(suite);
        for it in items {
            r.push(it);
        }
        r
    }

    pub fn push(&mut self, item: ReportItem) {
        match item.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Skipped => self.summary.skipped += 1,
        }
        self.items.push(item);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for it in other.items {
            self.push(it);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    /// True when the stored summary agrees with the item list and every
    /// residual is nonempty exactly on failures.
    pub fn is_consistent(&self) -> bool {
        let mut s = Summary::default();
        for it in &self.items {
            match it.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
            }
            if (it.status == Status::Fail) == it.residual.is_empty() {
                return false;
            }
        }
        s == self.summary
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("== {} ==\n", self.suite);
        for it in &self.items {
            let tag = match it.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("[{tag}] {} ({} ms)", it.id, it.ms));
            if !it.lhs.is_empty() {
                out.push_str(&format!("  {}", it.lhs));
                if !it.rhs.is_empty() {
                    out.push_str(&format!(" = {}", it.rhs));
                }
            }
            if !it.residual.is_empty() {
                out.push_str(&format!("\n       residual: {}", it.residual));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "-- {} pass, {} fail, {} skipped\n",
            self.summary.pass, self.summary.fail, self.summary.skipped
        ));
        out
    }
}
