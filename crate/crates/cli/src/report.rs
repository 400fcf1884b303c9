use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    HypothesisViolated,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::HypothesisViolated => "HYPOTHESIS_VIOLATED",
            Status::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckResult {
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub entry: String,
    pub checks: BTreeMap<String, CheckResult>,
    /// An invariant that holds on every instance was found broken.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub certification_broken: bool,
}

impl VerificationReport {
    pub fn count(&self, status: Status) -> usize {
        self.checks.values().filter(|c| c.status == status).count()
    }

    pub fn failed(&self) -> bool {
        self.count(Status::Fail) > 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct Document<'a> {
    reports: &'a [VerificationReport],
}

/// Canonical rendering: reports sorted by entry name, checks by key.
pub fn emit_report(reports: &[VerificationReport], format: Format) -> String {
    let mut sorted = reports.to_vec();
    sorted.sort_by(|a, b| a.entry.cmp(&b.entry));
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Document { reports: &sorted }).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &sorted {
                let _ = writeln!(s, "== {}", r.entry);
                for (key, c) in &r.checks {
                    let _ = write!(s, "  {:<19} {key}: {}", c.status.label(), c.computed);
                    if c.status != Status::Pass {
                        let _ = write!(s, " (expected {})", c.expected);
                    }
                    if let Some(n) = &c.note {
                        let _ = write!(s, " [{n}]");
                    }
                    s.push('\n');
                }
                if r.certification_broken {
                    s.push_str("  certification broken\n");
                }
            }
            let total = |st| sorted.iter().map(|r| r.count(st)).sum::<usize>();
            let _ = writeln!(
                s,
                "{} entries: {} pass, {} fail, {} hypothesis violated, {} skipped",
                sorted.len(),
                total(Status::Pass),
                total(Status::Fail),
                total(Status::HypothesisViolated),
                total(Status::Skipped)
            );
            s
        }
    }
}
