use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::finding::{Category, Finding, FindingKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Buggy,
    Clean,
}

/// A per-view failure that was skipped instead of aborting the page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub phase: String,
    pub views: Vec<String>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportStats {
    pub views_default: usize,
    pub views_scaled: usize,
    pub paired: usize,
    pub visible_default: usize,
    pub visible_scaled: usize,
    pub leaf_pairs_checked: usize,
    pub by_category: BTreeMap<Category, usize>,
    pub by_kind: BTreeMap<FindingKind, usize>,
}

/// Wall-clock time per phase, in milliseconds. Not part of the canonical form.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub pairing_ms: f64,
    pub inter_view_ms: f64,
    pub intra_view_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub verdict: Verdict,
    pub findings: Vec<Finding>,
    pub stats: ReportStats,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Report {
    pub fn new(
        findings: Vec<Finding>,
        mut stats: ReportStats,
        diagnostics: Vec<Diagnostic>,
        timings: Timings,
    ) -> Self {
        stats.by_category = Category::ALL.iter().map(|c| (*c, 0)).collect();
        stats.by_kind.clear();
        for f in &findings {
            *stats.by_category.entry(f.category).or_default() += 1;
            *stats.by_kind.entry(f.kind).or_default() += 1;
        }
        Report {
            verdict: if findings.is_empty() {
                Verdict::Clean
            } else {
                Verdict::Buggy
            },
            findings,
            stats,
            diagnostics,
            timings: Some(timings),
        }
    }

    /// Report JSON without timings; stable across runs on the same inputs.
    pub fn canonical_json(&self) -> String {
        let canonical = Report {
            timings: None,
            ..self.clone()
        };
        serde_json::to_string(&canonical).expect("report serializes")
    }

    /// SHA-256 of [`Report::canonical_json`], hex encoded.
    pub fn canonical_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary, one line per finding.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verdict: {:?} ({} finding{})",
            self.verdict,
            self.findings.len(),
            if self.findings.len() == 1 { "" } else { "s" }
        );
        for f in &self.findings {
            let _ = write!(
                out,
                "  {:?} [{:?}] default={} scaled={}",
                f.category,
                f.kind,
                f.views.default.join(","),
                f.views.scaled.join(",")
            );
            for (k, v) in &f.evidence {
                let _ = write!(out, " {k}={v}");
            }
            out.push('\n');
        }
        for d in &self.diagnostics {
            let _ = writeln!(
                out,
                "  note: {} [{}]: {}",
                d.phase,
                d.views.join(","),
                d.message
            );
        }
        let _ = writeln!(
            out,
            "views: {} default / {} scaled, {} paired, {} leaf pairs checked",
            self.stats.views_default,
            self.stats.views_scaled,
            self.stats.paired,
            self.stats.leaf_pairs_checked
        );
        out
    }
}
