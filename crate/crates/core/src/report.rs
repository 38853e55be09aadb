//! Verdict reports shared by the proposition suites and the CLI.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Unknown,
    NotApplicable,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
            Status::NotApplicable => "N/A",
        }
    }

    /// Exit status contribution: failures dominate unknowns.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::NotApplicable => 0,
            Status::Fail => 1,
            Status::Unknown => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub proposition: String,
    pub verdict: Status,
    pub summary: String,
    pub witnesses: BTreeMap<String, String>,
    pub bounds: BTreeMap<String, u64>,
    pub oracle_agreement: Option<bool>,
}

impl PropositionReport {
    pub fn new(proposition: impl Into<String>, verdict: Status, summary: impl Into<String>) -> Self {
        PropositionReport {
            proposition: proposition.into(),
            verdict,
            summary: summary.into(),
            witnesses: BTreeMap::new(),
            bounds: BTreeMap::new(),
            oracle_agreement: None,
        }
    }

    pub fn witness(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.witnesses.insert(key.into(), value.into());
        self
    }

    pub fn bound(mut self, key: impl Into<String>, value: u64) -> Self {
        self.bounds.insert(key.into(), value);
        self
    }

    pub fn oracle(mut self, agrees: bool) -> Self {
        self.oracle_agreement = Some(agrees);
        if !agrees && self.verdict == Status::Pass {
            self.verdict = Status::Fail;
        }
        self
    }

    pub fn render(&self) -> String {
        let mut out = format!("[{}] {}: {}\n", self.verdict.label(), self.proposition, self.summary);
        for (k, v) in &self.witnesses {
            let _ = writeln!(out, "    {k} = {v}");
        }
        if !self.bounds.is_empty() {
            let b: Vec<String> = self.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "    bounds: {}", b.join(", "));
        }
        if let Some(a) = self.oracle_agreement {
            let _ = writeln!(out, "    oracle: {}", if a { "agrees" } else { "DISAGREES" });
        }
        out
    }
}

/// Worst status over a list: any failure, else any unknown, else pass.
pub fn overall(reports: &[PropositionReport]) -> Status {
    let mut worst = Status::Pass;
    for r in reports {
        match r.verdict {
            Status::Fail => return Status::Fail,
            Status::Unknown => worst = Status::Unknown,
            _ => {}
        }
    }
    worst
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub timestamp: u64,
}

impl Meta {
    pub fn now() -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Meta { tool: "germforge".into(), version: env!("CARGO_PKG_VERSION").into(), timestamp }
    }
}

/// Machine-readable output of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub meta: Option<Meta>,
    pub reports: Vec<PropositionReport>,
}

impl Document {
    pub fn render(&self) -> String {
        self.reports.iter().map(PropositionReport::render).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_preserves_rendering() {
        let r = PropositionReport::new("demo", Status::Pass, "ok")
            .witness("x", "(6,0)")
            .bound("mult", 40)
            .oracle(true);
        let doc = Document { meta: None, reports: vec![r] };
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back: Document = serde_json::from_str(&text).unwrap();
        assert_eq!(back.render(), doc.render());
        assert!(text.contains("\"oracle_agreement\": true"));
    }

    #[test]
    fn disagreement_downgrades_pass() {
        let r = PropositionReport::new("demo", Status::Pass, "ok").oracle(false);
        assert_eq!(r.verdict, Status::Fail);
        assert_eq!(overall(&[r]), Status::Fail);
    }
}
