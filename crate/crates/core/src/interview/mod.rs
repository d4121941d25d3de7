//! Inter-view analysis: which views are visible, which siblings overlap,
//! which children are cropped by their parents, and whether those facts agree
//! across the two trees.

mod compare;
mod occlusion;
mod visibility;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::imaging::BinaryMatrix;
use crate::snapshot::{Snapshot, ViewNode};

pub use compare::compare_inter;
pub use occlusion::{detect_crops, detect_overlaps};
pub use visibility::{detect_visibility, is_child_visible};

/// Class-name based exemptions. Matching is a case-sensitive substring test,
/// so subclasses such as `NestedScrollView` are covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExemptionConfig {
    /// Parents whose overflowing children can be scrolled into view.
    pub scrollable_classes: Vec<String>,
    /// Views that can be collapsed out of the way; skipped for overlaps.
    pub collapsible_classes: Vec<String>,
}

impl Default for ExemptionConfig {
    fn default() -> Self {
        ExemptionConfig {
            scrollable_classes: ["ScrollView", "RecyclerView", "ListView", "ViewPager"]
                .map(String::from)
                .to_vec(),
            collapsible_classes: vec!["DrawerLayout".into()],
        }
    }
}

impl ExemptionConfig {
    pub fn is_scrollable(&self, node: &ViewNode) -> bool {
        node.scroll_hint.unwrap_or_else(|| {
            self.scrollable_classes
                .iter()
                .any(|c| node.class_name.contains(c.as_str()))
        })
    }

    pub fn is_collapsible(&self, node: &ViewNode) -> bool {
        self.collapsible_classes
            .iter()
            .any(|c| node.class_name.contains(c.as_str()))
    }
}

/// Per-tree results of the inter-view phase.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InterViewState {
    pub visible: BTreeSet<String>,
    /// Current visible matrix of every visible view, in view-local coordinates.
    pub matrices: BTreeMap<String, BinaryMatrix>,
    /// Overlapping visible sibling pairs (uids sorted within the pair) and the contested area.
    pub overlaps: BTreeMap<(String, String), u64>,
    /// Children cropped by their parent and the number of visible cells lost.
    pub crops: BTreeMap<String, u64>,
}

impl InterViewState {
    pub fn overlapping(&self, a: &str, b: &str) -> Option<u64> {
        self.overlaps.get(&ordered_pair(a, b)).copied()
    }
}

pub(crate) fn ordered_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Runs visibility, overlap and crop detection on one tree, in that order.
pub fn analyze_tree(snap: &Snapshot, cfg: &ExemptionConfig) -> InterViewState {
    let visible = detect_visibility(snap);
    let state = detect_overlaps(snap, &visible, cfg);
    detect_crops(snap, state, cfg)
}

/// A tree together with its inter-view results.
pub struct TreeAnalysis<'a> {
    pub snapshot: &'a Snapshot,
    pub state: InterViewState,
}
