//! View-tree snapshots: the data model and its on-disk directory format.
//!
//! A snapshot directory holds `tree.json` and the PNG files it references:
//!
//! ```text
//! snapshot/
//!   tree.json
//!   images/<name>.png
//! ```

mod io;
mod tree;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::geometry::Rect;
use crate::imaging::RgbaImage;
pub use io::{load_snapshot, write_snapshot};
pub use tree::{draw_order, preorder, TreeIndex};

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("missing file {0}")]
    MissingFile(String),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("{path}: image is {actual:?} but bounds are {expected:?}")]
    DimensionMismatch {
        path: String,
        expected: (u32, u32),
        actual: (u32, u32),
    },
    #[error("image {path}: {source}")]
    Image {
        path: String,
        #[source]
        source: image::ImageError,
    },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Which pair of system settings a snapshot was captured under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScaleLabel {
    /// Default display size, default font size.
    DD,
    /// Largest display size, default font size.
    LD,
    /// Largest display size, largest font size.
    LL,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScaleSetting {
    pub label: ScaleLabel,
    pub display_scale: f64,
    pub font_scale: f64,
}

impl ScaleSetting {
    pub const DEFAULT: ScaleSetting = ScaleSetting {
        label: ScaleLabel::DD,
        display_scale: 1.0,
        font_scale: 1.0,
    };

    pub fn new(
        label: ScaleLabel,
        display_scale: f64,
        font_scale: f64,
    ) -> Result<Self, SnapshotError> {
        let s = ScaleSetting {
            label,
            display_scale,
            font_scale,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), SnapshotError> {
        let finite = self.display_scale.is_finite() && self.font_scale.is_finite();
        if !finite || self.display_scale < 1.0 || self.font_scale < 1.0 {
            return Err(SnapshotError::SchemaViolation(format!(
                "scale factors must be finite and >= 1, got display {} font {}",
                self.display_scale, self.font_scale
            )));
        }
        if self.label == ScaleLabel::DD && (self.display_scale != 1.0 || self.font_scale != 1.0) {
            return Err(SnapshotError::SchemaViolation(
                "DD scale must have display and font scale 1".into(),
            ));
        }
        Ok(())
    }
}

/// One view in the hierarchy. Bounds are absolute screen coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ViewNode {
    pub uid: String,
    pub mapping_id: Option<String>,
    pub class_name: String,
    pub bounds: Rect,
    pub z_order: i32,
    pub text: Option<String>,
    /// Effective rendered text size in pixels.
    pub text_size: Option<f64>,
    pub ellipsized: bool,
    /// Declared scrollability; overrides class-name detection when present.
    pub scroll_hint: Option<bool>,
    /// Key into [`Snapshot::images`]; also the PNG path relative to the snapshot directory.
    pub image_ref: String,
    pub children: Vec<ViewNode>,
}

impl ViewNode {
    pub fn is_text(&self) -> bool {
        self.text.is_some()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(ViewNode::node_count)
            .sum::<usize>()
    }
}

/// A captured page: the view tree plus every view's rendered image.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub scale: ScaleSetting,
    pub screen: Rect,
    pub root: ViewNode,
    pub images: BTreeMap<String, RgbaImage>,
}

impl Snapshot {
    pub fn image_of(&self, node: &ViewNode) -> &RgbaImage {
        &self.images[&node.image_ref]
    }

    pub fn index(&self) -> TreeIndex<'_> {
        TreeIndex::new(&self.root)
    }

    /// Checks uid uniqueness, text-size presence, image resolution and image sizes.
    pub fn validate(&self) -> Result<(), SnapshotError> {
        self.scale.validate()?;
        let mut seen = std::collections::HashSet::new();
        for node in preorder(&self.root) {
            if !seen.insert(node.uid.as_str()) {
                return Err(SnapshotError::SchemaViolation(format!(
                    "duplicate uid {:?}",
                    node.uid
                )));
            }
            if node.text.is_some() {
                match node.text_size {
                    Some(s) if s.is_finite() && s > 0.0 => {}
                    _ => {
                        return Err(SnapshotError::SchemaViolation(format!(
                            "text view {:?} needs a positive textSize",
                            node.uid
                        )))
                    }
                }
            }
            let img = self
                .images
                .get(&node.image_ref)
                .ok_or_else(|| SnapshotError::MissingFile(node.image_ref.clone()))?;
            if img.dimensions() != (node.bounds.w, node.bounds.h) {
                return Err(SnapshotError::DimensionMismatch {
                    path: node.image_ref.clone(),
                    expected: (node.bounds.w, node.bounds.h),
                    actual: img.dimensions(),
                });
            }
        }
        Ok(())
    }
}
