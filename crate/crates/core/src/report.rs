//! Claim-by-claim reports and their JSON, CSV and Markdown renderings.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Verified,
    Refuted,
    Measured,
    Skipped,
    /// Agrees with a conjectured formula on the instance checked.
    VerifiedAsConjectureInstance,
}

impl ClaimStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimStatus::Verified => "verified",
            ClaimStatus::Refuted => "refuted",
            ClaimStatus::Measured => "measured",
            ClaimStatus::Skipped => "skipped",
            ClaimStatus::VerifiedAsConjectureInstance => "verified-as-conjecture-instance",
        }
    }
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub group: String,
    /// e.g. `F_25`
    pub field: String,
    pub status: ClaimStatus,
    pub expected: Option<String>,
    pub observed: String,
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl ClaimReport {
    fn base(id: &str, group: &str, field: &str, status: ClaimStatus) -> Self {
        ClaimReport {
            claim_id: id.to_string(),
            group: group.to_string(),
            field: field.to_string(),
            status,
            expected: None,
            observed: String::new(),
            counterexample: None,
            runtime_ms: None,
        }
    }

    /// Verified when `expected == observed`, otherwise refuted with the
    /// mismatch as counterexample.
    pub fn compare(id: &str, group: &str, field: &str, expected: impl fmt::Display, observed: impl fmt::Display) -> Self {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let mut r = if expected == observed {
            Self::base(id, group, field, ClaimStatus::Verified)
        } else {
            let mut r = Self::base(id, group, field, ClaimStatus::Refuted);
            r.counterexample = Some(format!("expected {expected}, observed {observed}"));
            r
        };
        r.expected = Some(expected);
        r.observed = observed;
        r
    }

    /// Verified or refuted by an explicit verdict; a refutation must carry a
    /// counterexample.
    pub fn verdict(
        id: &str,
        group: &str,
        field: &str,
        expected: impl fmt::Display,
        observed: impl fmt::Display,
        counterexample: Option<String>,
    ) -> Self {
        let status = if counterexample.is_none() { ClaimStatus::Verified } else { ClaimStatus::Refuted };
        let mut r = Self::base(id, group, field, status);
        r.expected = Some(expected.to_string());
        r.observed = observed.to_string();
        r.counterexample = counterexample;
        r
    }

    pub fn measured(id: &str, group: &str, field: &str, observed: impl fmt::Display) -> Self {
        let mut r = Self::base(id, group, field, ClaimStatus::Measured);
        r.observed = observed.to_string();
        r
    }

    pub fn skipped(id: &str, group: &str, field: &str, reason: impl fmt::Display) -> Self {
        let mut r = Self::base(id, group, field, ClaimStatus::Skipped);
        r.observed = reason.to_string();
        r
    }

    /// Downgrades a verified claim to a conjecture instance.
    pub fn as_conjecture_instance(mut self) -> Self {
        if self.status == ClaimStatus::Verified {
            self.status = ClaimStatus::VerifiedAsConjectureInstance;
        }
        self
    }

    pub fn with_runtime(mut self, ms: u64) -> Self {
        self.runtime_ms = Some(ms);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::Parse(format!("unknown report format {other:?}"))),
        }
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: u32,
    claims: Vec<JsonClaim<'a>>,
}

#[derive(Serialize)]
struct JsonClaim<'a> {
    claim_id: &'a str,
    group: &'a str,
    field: &'a str,
    status: ClaimStatus,
    expected: Option<&'a str>,
    observed: &'a str,
    counterexample: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    runtime_ms: Option<u64>,
}

/// Renders claims in a stable field order. Runtimes are included only with
/// `timings`, so that default output is byte-identical between runs.
pub fn emit_report(reports: &[ClaimReport], format: ReportFormat, timings: bool) -> String {
    match format {
        ReportFormat::Json => {
            let claims = reports
                .iter()
                .map(|r| JsonClaim {
                    claim_id: &r.claim_id,
                    group: &r.group,
                    field: &r.field,
                    status: r.status,
                    expected: r.expected.as_deref(),
                    observed: &r.observed,
                    counterexample: r.counterexample.as_deref(),
                    runtime_ms: if timings { r.runtime_ms } else { None },
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&JsonReport { schema: SCHEMA_VERSION, claims })
                .expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["claim_id", "group", "field", "status", "expected", "observed", "counterexample"];
            if timings {
                header.push("runtime_ms");
            }
            w.write_record(&header).expect("in-memory write");
            for r in reports {
                let mut row = vec![
                    r.claim_id.clone(),
                    r.group.clone(),
                    r.field.clone(),
                    r.status.to_string(),
                    r.expected.clone().unwrap_or_default(),
                    r.observed.clone(),
                    r.counterexample.clone().unwrap_or_default(),
                ];
                if timings {
                    row.push(r.runtime_ms.map(|t| t.to_string()).unwrap_or_default());
                }
                w.write_record(&row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
        }
        ReportFormat::Markdown => markdown(reports, timings),
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn markdown(reports: &[ClaimReport], timings: bool) -> String {
    let mut out = String::from("# Claim report\n");
    let mut groups: Vec<&str> = Vec::new();
    for r in reports {
        if !groups.contains(&r.group.as_str()) {
            groups.push(&r.group);
        }
    }
    for g in groups {
        out.push_str(&format!("\n## {g}\n\n"));
        out.push_str("| claim | field | status | expected | observed | counterexample |");
        out.push_str(if timings { " runtime (ms) |\n" } else { "\n" });
        out.push_str("|---|---|---|---|---|---|");
        out.push_str(if timings { "---|\n" } else { "\n" });
        for r in reports.iter().filter(|r| r.group == g) {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |",
                cell(&r.claim_id),
                cell(&r.field),
                r.status,
                cell(r.expected.as_deref().unwrap_or("")),
                cell(&r.observed),
                cell(r.counterexample.as_deref().unwrap_or("")),
            ));
            if timings {
                out.push_str(&format!(" {} |", r.runtime_ms.map(|t| t.to_string()).unwrap_or_default()));
            }
            out.push('\n');
        }
    }
    out
}
