use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Which check produced a finding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FindingKind {
    VisibilityInconsistency,
    MissingCounterpart,
    OverlapInconsistency,
    CropInconsistency,
    TextScaleAnomaly,
    NonTextAnomaly,
}

/// User-facing issue category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    ComponentOverlapping,
    ContentOverlapping,
    ComponentCropping,
    ContentCropping,
    ComponentMissing,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::ComponentOverlapping,
        Category::ContentOverlapping,
        Category::ComponentCropping,
        Category::ContentCropping,
        Category::ComponentMissing,
    ];

    /// Category for a finding kind. `both_text` only matters for overlaps.
    pub fn of(kind: FindingKind, both_text: bool) -> Category {
        match kind {
            FindingKind::OverlapInconsistency if both_text => Category::ContentOverlapping,
            FindingKind::OverlapInconsistency => Category::ComponentOverlapping,
            FindingKind::CropInconsistency => Category::ComponentCropping,
            FindingKind::TextScaleAnomaly | FindingKind::NonTextAnomaly => {
                Category::ContentCropping
            }
            FindingKind::VisibilityInconsistency | FindingKind::MissingCounterpart => {
                Category::ComponentMissing
            }
        }
    }
}

/// Uids of the affected views in each tree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindingViews {
    pub default: Vec<String>,
    pub scaled: Vec<String>,
}

/// One detected cross-scale inconsistency.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub category: Category,
    pub views: FindingViews,
    pub evidence: BTreeMap<String, Value>,
}

impl Finding {
    pub fn new(
        kind: FindingKind,
        category: Category,
        default: Vec<String>,
        scaled: Vec<String>,
    ) -> Self {
        Finding {
            kind,
            category,
            views: FindingViews { default, scaled },
            evidence: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.evidence.insert(key.to_string(), value.into());
        self
    }

    /// Every uid named by the finding, default tree first.
    pub fn uids(&self) -> impl Iterator<Item = &str> {
        self.views
            .default
            .iter()
            .chain(&self.views.scaled)
            .map(String::as_str)
    }
}
