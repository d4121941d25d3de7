//! End-to-end analysis of a snapshot pair and corpus-level scoring.

mod config;
mod evaluate;
mod report;

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

pub use crate::finding::{Category, Finding, FindingKind, FindingViews};
use crate::interview::{analyze_tree, compare_inter, TreeAnalysis};
use crate::intraview::{check_pair, ViewImage};
use crate::pairing::pair_views;
use crate::snapshot::{load_snapshot, Snapshot, SnapshotError};
pub use config::{AnalysisConfig, ConfigError};
pub use evaluate::{
    evaluate_corpus, evaluate_dir, load_labels, score_outcomes, CaseLabels, CaseOutcome,
    ClassMetrics, Confusion, CorpusLabels, CorpusMetrics, EvalCase, EvalError, GranularityMetrics,
};
pub use report::{Diagnostic, Report, ReportStats, Timings, Verdict};

/// Compares a default-scale snapshot `a` with a larger-scale snapshot `b`.
///
/// Pairs the views, runs the inter-view phase on both trees, compares them,
/// then checks every paired leaf that is visible in both trees. A check that
/// fails on one view is recorded as a diagnostic and the analysis continues.
pub fn analyze(a: &Snapshot, b: &Snapshot, cfg: &AnalysisConfig) -> Report {
    let start = Instant::now();
    let pairing = pair_views(a, b);
    let t_pairing = start.elapsed();

    let (state_a, state_b) = rayon::join(
        || analyze_tree(a, &cfg.exemptions),
        || analyze_tree(b, &cfg.exemptions),
    );
    let tree_a = TreeAnalysis {
        snapshot: a,
        state: state_a,
    };
    let tree_b = TreeAnalysis {
        snapshot: b,
        state: state_b,
    };
    let mut findings = compare_inter(&tree_a, &tree_b, &pairing);
    let t_inter = start.elapsed();

    let idx_a = a.index();
    let idx_b = b.index();
    let leaf_pairs: Vec<_> = pairing
        .pairs
        .iter()
        .filter(|(ua, ub)| tree_a.state.visible.contains(ua) && tree_b.state.visible.contains(ub))
        .filter_map(|(ua, ub)| Some((idx_a.get(ua)?, idx_b.get(ub)?)))
        .filter(|(na, nb)| na.is_leaf() && nb.is_leaf())
        .collect();
    let outcomes: Vec<_> = leaf_pairs
        .par_iter()
        .map(|(na, nb)| {
            let va = ViewImage {
                node: na,
                image: a.image_of(na),
            };
            let vb = ViewImage {
                node: nb,
                image: b.image_of(nb),
            };
            check_pair(va, vb, &cfg.intra)
        })
        .collect();
    let mut diagnostics = Vec::new();
    for ((na, nb), outcome) in leaf_pairs.iter().zip(outcomes) {
        match outcome {
            Ok(Some(f)) => findings.push(f),
            Ok(None) => {}
            Err(e) => diagnostics.push(Diagnostic {
                phase: "intra-view".into(),
                views: vec![na.uid.clone(), nb.uid.clone()],
                message: e.to_string(),
            }),
        }
    }
    let t_total = start.elapsed();

    let stats = ReportStats {
        views_default: idx_a.len(),
        views_scaled: idx_b.len(),
        paired: pairing.pairs.len(),
        visible_default: tree_a.state.visible.len(),
        visible_scaled: tree_b.state.visible.len(),
        leaf_pairs_checked: leaf_pairs.len(),
        ..Default::default()
    };
    let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
    let timings = Timings {
        pairing_ms: ms(t_pairing),
        inter_view_ms: ms(t_inter - t_pairing),
        intra_view_ms: ms(t_total - t_inter),
        total_ms: ms(t_total),
    };
    Report::new(findings, stats, diagnostics, timings)
}

/// Loads both snapshot directories and analyzes them.
pub fn analyze_dirs(
    default_dir: impl AsRef<Path>,
    scaled_dir: impl AsRef<Path>,
    cfg: &AnalysisConfig,
) -> Result<Report, SnapshotError> {
    let (da, db) = (default_dir.as_ref(), scaled_dir.as_ref());
    let (a, b) = rayon::join(|| load_snapshot(da), || load_snapshot(db));
    Ok(analyze(&a?, &b?, cfg))
}
