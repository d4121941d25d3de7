use std::collections::{BTreeMap, BTreeSet};

use super::{ordered_pair, TreeAnalysis};
use crate::finding::{Category, Finding, FindingKind};
use crate::pairing::ViewPairing;

/// Cross-tree consistency of visibility, overlap and crop status.
///
/// `a` is the default-scale tree and `b` the larger-scale one. Statuses that
/// agree emit nothing.
pub fn compare_inter(
    a: &TreeAnalysis<'_>,
    b: &TreeAnalysis<'_>,
    pairing: &ViewPairing,
) -> Vec<Finding> {
    let idx_a = a.snapshot.index();
    let idx_b = b.snapshot.index();
    let a_to_b = pairing.a_to_b();
    let b_to_a = pairing.b_to_a();
    let (sa, sb) = (&a.state, &b.state);
    let mut findings = Vec::new();

    for (ua, ub) in &pairing.pairs {
        let (va, vb) = (sa.visible.contains(ua), sb.visible.contains(ub));
        if va != vb {
            findings.push(
                Finding::new(
                    FindingKind::VisibilityInconsistency,
                    Category::ComponentMissing,
                    vec![ua.clone()],
                    vec![ub.clone()],
                )
                .with("visible_default", va)
                .with("visible_scaled", vb),
            );
        }
    }

    // a duplicate key is ambiguous rather than missing
    let duplicates: BTreeSet<&str> = pairing.duplicates_a.iter().map(String::as_str).collect();
    for ua in &pairing.unmatched_a {
        if sa.visible.contains(ua) && !duplicates.contains(ua.as_str()) {
            findings.push(Finding::new(
                FindingKind::MissingCounterpart,
                Category::ComponentMissing,
                vec![ua.clone()],
                vec![],
            ));
        }
    }

    // overlap pairs expressed in tree-a uids, with the area seen on each side
    let mut overlap_pairs: BTreeMap<(String, String), (u64, u64)> = BTreeMap::new();
    for ((x, y), &area) in &sa.overlaps {
        if let (Some(bx), Some(by)) = (a_to_b.get(x.as_str()), a_to_b.get(y.as_str())) {
            let other = sb.overlapping(bx, by).unwrap_or(0);
            overlap_pairs.insert((x.clone(), y.clone()), (area, other));
        }
    }
    for ((x, y), &area) in &sb.overlaps {
        if let (Some(ax), Some(ay)) = (b_to_a.get(x.as_str()), b_to_a.get(y.as_str())) {
            let key = ordered_pair(ax, ay);
            let before = sa.overlapping(ax, ay).unwrap_or(0);
            overlap_pairs.insert(key, (before, area));
        }
    }
    let mut overlap_findings: Vec<(usize, usize, Finding)> = Vec::new();
    for ((x, y), (area_a, area_b)) in overlap_pairs {
        if (area_a > 0) == (area_b > 0) {
            continue;
        }
        // list the pair in draw position order of tree a
        let (px, py) = (
            idx_a.position(&x).unwrap_or(usize::MAX),
            idx_a.position(&y).unwrap_or(usize::MAX),
        );
        let (first, second) = if px <= py { (x, y) } else { (y, x) };
        let both_text = [&first, &second]
            .iter()
            .all(|u| idx_a.get(u).is_some_and(|n| n.is_text()));
        let bf = a_to_b[first.as_str()].to_string();
        let bs = a_to_b[second.as_str()].to_string();
        let both_text = both_text
            && [&bf, &bs]
                .iter()
                .all(|u| idx_b.get(u).is_some_and(|n| n.is_text()));
        overlap_findings.push((
            px.min(py),
            px.max(py),
            Finding::new(
                FindingKind::OverlapInconsistency,
                Category::of(FindingKind::OverlapInconsistency, both_text),
                vec![first, second],
                vec![bf, bs],
            )
            .with("overlap_area_default", area_a)
            .with("overlap_area_scaled", area_b),
        ));
    }
    overlap_findings.sort_by_key(|(p, q, _)| (*p, *q));
    findings.extend(overlap_findings.into_iter().map(|(_, _, f)| f));

    for (ua, ub) in &pairing.pairs {
        let ca = sa.crops.get(ua).copied();
        let cb = sb.crops.get(ub).copied();
        if ca.is_some() != cb.is_some() {
            findings.push(
                Finding::new(
                    FindingKind::CropInconsistency,
                    Category::ComponentCropping,
                    vec![ua.clone()],
                    vec![ub.clone()],
                )
                .with("cropped_area_default", ca.unwrap_or(0))
                .with("cropped_area_scaled", cb.unwrap_or(0)),
            );
        }
    }
    findings
}
