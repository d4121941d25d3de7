use std::collections::BTreeSet;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{analyze, AnalysisConfig, Report, Verdict};
use crate::snapshot::{load_snapshot, preorder, Snapshot, SnapshotError};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("case {case}: label references unknown view {uid:?}")]
    LabelMismatch { case: String, uid: String },
    #[error("case {case}: {source}")]
    Snapshot {
        case: String,
        #[source]
        source: SnapshotError,
    },
    #[error("cannot read labels {path}: {message}")]
    Labels { path: String, message: String },
}

/// Ground truth for one page, as written to `labels.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseLabels {
    /// Case directory name, relative to the corpus root.
    pub case: String,
    pub verdict: Verdict,
    #[serde(default)]
    pub buggy_views: Vec<String>,
    /// Free-form record of what was injected; not used for scoring.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub injections: Vec<serde_json::Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusLabels {
    pub cases: Vec<CaseLabels>,
}

pub fn load_labels(path: impl AsRef<Path>) -> Result<CorpusLabels, EvalError> {
    let path = path.as_ref();
    let err = |message: String| EvalError::Labels {
        path: path.display().to_string(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| err(e.to_string()))
}

/// Confusion counts with Bug as the positive class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl Confusion {
    pub fn add(&mut self, truth: bool, predicted: bool) {
        match (truth, predicted) {
            (true, true) => self.tp += 1,
            (false, true) => self.fp += 1,
            (true, false) => self.fn_ += 1,
            (false, false) => self.tn += 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl ClassMetrics {
    pub fn from_counts(tp: u64, fp: u64, fn_: u64) -> Self {
        let ratio = |n: u64, d: u64| if d == 0 { 0.0 } else { n as f64 / d as f64 };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        ClassMetrics {
            precision,
            recall,
            f1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GranularityMetrics {
    pub bug: ClassMetrics,
    pub clean: ClassMetrics,
    pub confusion: Confusion,
}

impl GranularityMetrics {
    pub fn from_confusion(c: Confusion) -> Self {
        GranularityMetrics {
            bug: ClassMetrics::from_counts(c.tp, c.fp, c.fn_),
            // Clean as the positive class swaps the roles
            clean: ClassMetrics::from_counts(c.tn, c.fn_, c.fp),
            confusion: c,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusMetrics {
    pub cases: usize,
    pub page: GranularityMetrics,
    pub view: GranularityMetrics,
}

/// Prediction and truth for one page, reduced to what scoring needs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub case: String,
    pub truth: Verdict,
    pub predicted: Verdict,
    /// Every view uid of either tree.
    pub universe: BTreeSet<String>,
    pub labeled_views: BTreeSet<String>,
    /// Union of the uids named by the findings.
    pub predicted_views: BTreeSet<String>,
}

impl CaseOutcome {
    pub fn new(
        labels: &CaseLabels,
        default: &Snapshot,
        scaled: &Snapshot,
        report: &Report,
    ) -> Result<Self, EvalError> {
        let universe: BTreeSet<String> = preorder(&default.root)
            .into_iter()
            .chain(preorder(&scaled.root))
            .map(|n| n.uid.clone())
            .collect();
        if let Some(uid) = labels.buggy_views.iter().find(|u| !universe.contains(*u)) {
            return Err(EvalError::LabelMismatch {
                case: labels.case.clone(),
                uid: uid.clone(),
            });
        }
        Ok(CaseOutcome {
            case: labels.case.clone(),
            truth: labels.verdict,
            predicted: report.verdict,
            labeled_views: labels.buggy_views.iter().cloned().collect(),
            predicted_views: report
                .findings
                .iter()
                .flat_map(|f| f.uids())
                .map(String::from)
                .collect(),
            universe,
        })
    }
}

/// Page- and view-level metrics over scored cases. An empty slice gives all zeros.
pub fn score_outcomes(outcomes: &[CaseOutcome]) -> CorpusMetrics {
    let mut page = Confusion::default();
    let mut view = Confusion::default();
    for o in outcomes {
        page.add(o.truth == Verdict::Buggy, o.predicted == Verdict::Buggy);
        for uid in &o.universe {
            view.add(
                o.labeled_views.contains(uid),
                o.predicted_views.contains(uid),
            );
        }
    }
    CorpusMetrics {
        cases: outcomes.len(),
        page: GranularityMetrics::from_confusion(page),
        view: GranularityMetrics::from_confusion(view),
    }
}

/// An in-memory case: both snapshots and their ground truth.
pub struct EvalCase {
    pub default: Snapshot,
    pub scaled: Snapshot,
    pub labels: CaseLabels,
}

/// Analyzes every case (in parallel) and scores the results.
pub fn evaluate_corpus(
    cases: &[EvalCase],
    cfg: &AnalysisConfig,
) -> Result<(CorpusMetrics, Vec<CaseOutcome>), EvalError> {
    let outcomes = cases
        .par_iter()
        .map(|c| {
            let report = analyze(&c.default, &c.scaled, cfg);
            CaseOutcome::new(&c.labels, &c.default, &c.scaled, &report)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((score_outcomes(&outcomes), outcomes))
}

/// Loads `<corpus>/<case>/default` and `<corpus>/<case>/scaled` for every
/// labeled case, analyzes them in parallel, and scores the results.
pub fn evaluate_dir(
    corpus: impl AsRef<Path>,
    labels: &CorpusLabels,
    cfg: &AnalysisConfig,
) -> Result<(CorpusMetrics, Vec<CaseOutcome>), EvalError> {
    let corpus = corpus.as_ref();
    let outcomes = labels
        .cases
        .par_iter()
        .map(|l| {
            let load = |side: &str| {
                load_snapshot(corpus.join(&l.case).join(side)).map_err(|source| {
                    EvalError::Snapshot {
                        case: l.case.clone(),
                        source,
                    }
                })
            };
            let (a, b) = (load("default")?, load("scaled")?);
            let report = analyze(&a, &b, cfg);
            CaseOutcome::new(l, &a, &b, &report)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((score_outcomes(&outcomes), outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(truth: Verdict, predicted: Verdict) -> CaseOutcome {
        CaseOutcome {
            case: String::new(),
            truth,
            predicted,
            universe: BTreeSet::new(),
            labeled_views: BTreeSet::new(),
            predicted_views: BTreeSet::new(),
        }
    }

    #[test]
    fn perfect_classifier() {
        let cases = [
            outcome(Verdict::Buggy, Verdict::Buggy),
            outcome(Verdict::Clean, Verdict::Clean),
        ];
        let m = score_outcomes(&cases);
        for c in [m.page.bug, m.page.clean] {
            assert_eq!((c.precision, c.recall, c.f1), (1.0, 1.0, 1.0));
        }
    }

    #[test]
    fn ninety_seven_of_a_hundred() {
        let mut cases = Vec::new();
        cases.extend((0..94).map(|_| outcome(Verdict::Buggy, Verdict::Buggy)));
        cases.extend((0..3).map(|_| outcome(Verdict::Buggy, Verdict::Clean)));
        cases.extend((0..3).map(|_| outcome(Verdict::Clean, Verdict::Buggy)));
        cases.extend((0..50).map(|_| outcome(Verdict::Clean, Verdict::Clean)));
        let m = score_outcomes(&cases);
        // 97 buggy pages, 97 flagged, 94 of them right
        assert!((m.page.bug.precision - 94.0 / 97.0).abs() < 1e-12);
        assert!((m.page.bug.recall - 94.0 / 97.0).abs() < 1e-12);
        assert!((m.page.bug.precision - 0.97).abs() < 0.005);
        assert_eq!(
            m.page.confusion,
            Confusion {
                tp: 94,
                fp: 3,
                fn_: 3,
                tn: 50
            }
        );
    }

    #[test]
    fn empty_corpus_is_all_zero() {
        let m = score_outcomes(&[]);
        assert_eq!(m, CorpusMetrics::default());
    }

    #[test]
    fn view_level_uses_uid_universe() {
        let mut o = outcome(Verdict::Buggy, Verdict::Buggy);
        o.universe = ["a", "b", "c", "d"].map(String::from).into();
        o.labeled_views = ["a", "b"].map(String::from).into();
        o.predicted_views = ["b", "c"].map(String::from).into();
        let m = score_outcomes(&[o]);
        assert_eq!(
            m.view.confusion,
            Confusion {
                tp: 1,
                fp: 1,
                fn_: 1,
                tn: 1
            }
        );
        assert_eq!(m.view.bug.precision, 0.5);
        assert_eq!(m.view.clean.recall, 0.5);
    }

    #[test]
    fn f1_is_harmonic_mean() {
        let c = ClassMetrics::from_counts(3, 1, 5);
        let (p, r) = (0.75, 3.0 / 8.0);
        assert!((c.f1 - 2.0 * p * r / (p + r)).abs() < 1e-12);
        assert_eq!(ClassMetrics::from_counts(0, 0, 4).f1, 0.0);
    }

    #[test]
    fn labels_json_shape() {
        let text = r#"{"cases":[{"case":"case-0001","verdict":"Buggy","buggy_views":["v3"]},
                       {"case":"case-0002","verdict":"Clean"}]}"#;
        let labels: CorpusLabels = serde_json::from_str(text).unwrap();
        assert_eq!(labels.cases[1].buggy_views.len(), 0);
        assert_eq!(labels.cases[0].verdict, Verdict::Buggy);
    }
}
