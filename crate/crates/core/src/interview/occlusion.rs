use std::collections::{BTreeSet, HashMap};

use super::{ordered_pair, ExemptionConfig, InterViewState};
use crate::imaging::{visible_matrix, BinaryMatrix};
use crate::snapshot::{draw_order, preorder, Snapshot, ViewNode};

/// Records content overlaps between visible siblings and erodes visible matrices.
///
/// Every visible view starts from its alpha-derived visible matrix. Siblings
/// are compared in draw order from the topmost down: for each later-drawn view
/// and each view drawn before it, the visible cells inside their shared bounding
/// box are ANDed. A non-empty result is an overlap, and the contested cells are
/// removed from the earlier-drawn view, since the later one covers them on
/// screen. Pairs involving a collapsible view are skipped.
pub fn detect_overlaps(
    snap: &Snapshot,
    visible: &BTreeSet<String>,
    cfg: &ExemptionConfig,
) -> InterViewState {
    let mut state = InterViewState {
        visible: visible.clone(),
        ..Default::default()
    };
    for node in preorder(&snap.root) {
        if visible.contains(&node.uid) {
            state
                .matrices
                .insert(node.uid.clone(), visible_matrix(snap.image_of(node)));
        }
    }

    for parent in preorder(&snap.root) {
        if !visible.contains(&parent.uid) {
            continue;
        }
        let kids: Vec<&ViewNode> = draw_order(parent)
            .into_iter()
            .filter(|c| visible.contains(&c.uid))
            .collect();
        for later in (1..kids.len()).rev() {
            for earlier in (0..later).rev() {
                let (a, b) = (kids[earlier], kids[later]);
                if cfg.is_collapsible(a) || cfg.is_collapsible(b) {
                    continue;
                }
                let Some(shared) = a.bounds.intersect(&b.bounds) else {
                    continue;
                };
                let ra = shared.relative_to(&a.bounds);
                let rb = shared.relative_to(&b.bounds);
                let sa = state.matrices[&a.uid]
                    .slice(&ra)
                    .expect("shared region inside a");
                let sb = state.matrices[&b.uid]
                    .slice(&rb)
                    .expect("shared region inside b");
                let contested = sa.and(&sb);
                let area = contested.area();
                if area == 0 {
                    continue;
                }
                state.overlaps.insert(ordered_pair(&a.uid, &b.uid), area);
                let remaining = sa.subtract(&contested);
                state
                    .matrices
                    .get_mut(&a.uid)
                    .expect("visible view has a matrix")
                    .replace_region(ra.x as u32, ra.y as u32, &remaining);
            }
        }
    }
    state
}

/// Records children whose visible content is cut off by their parent.
///
/// For each visible child of a non-scrollable parent, the child's visible
/// cells outside the parent's bounds are lost, and so are cells over parts of
/// the parent that the parent itself has lost (occluded or cropped higher up).
/// A crop is recorded when this loses at least one cell; the child's matrix is
/// replaced by what survives. Parents are processed before their children.
pub fn detect_crops(
    snap: &Snapshot,
    mut state: InterViewState,
    cfg: &ExemptionConfig,
) -> InterViewState {
    // cells each view has lost so far: initial & !current
    let mut lost_cache: HashMap<String, BinaryMatrix> = HashMap::new();
    for parent in preorder(&snap.root) {
        if !state.visible.contains(&parent.uid) || cfg.is_scrollable(parent) {
            continue;
        }
        for child in &parent.children {
            if !state.visible.contains(&child.uid) {
                continue;
            }
            let lost_parent = lost_cache.entry(parent.uid.clone()).or_insert_with(|| {
                let initial = visible_matrix(snap.image_of(parent));
                initial.subtract(&state.matrices[&parent.uid])
            });
            let current = &state.matrices[&child.uid];
            let before = current.area();
            let mut kept = BinaryMatrix::zeros(current.width(), current.height());
            if let Some(inside) = child.bounds.intersect(&parent.bounds) {
                let rc = inside.relative_to(&child.bounds);
                let rp = inside.relative_to(&parent.bounds);
                let slice = current.slice(&rc).expect("inside child");
                let blocked = lost_parent.slice(&rp).expect("inside parent");
                kept.replace_region(rc.x as u32, rc.y as u32, &slice.subtract(&blocked));
            }
            let after = kept.area();
            if after < before {
                state.crops.insert(child.uid.clone(), before - after);
            }
            state.matrices.insert(child.uid.clone(), kept);
        }
    }
    state
}
