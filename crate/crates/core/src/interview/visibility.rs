use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::geometry::{iou, Rect};
use crate::imaging::{ImagingError, Matcher, RgbaImage};
use crate::snapshot::{Snapshot, ViewNode};

/// Uids of the views an end user can see.
///
/// The root is visible. Walking down, a child of an invisible parent is
/// invisible; otherwise the part of the child inside its parent is searched for
/// in the parent's image and the child is visible only if the best match sits
/// exactly where the child was laid out.
pub fn detect_visibility(snap: &Snapshot) -> BTreeSet<String> {
    let mut visible = BTreeSet::new();
    visible.insert(snap.root.uid.clone());
    collect_visible(snap, &snap.root, &mut visible);
    visible
}

fn collect_visible(snap: &Snapshot, parent: &ViewNode, out: &mut BTreeSet<String>) {
    if parent.children.is_empty() {
        return;
    }
    let matcher = Matcher::new(snap.image_of(parent));
    let verdicts: Vec<bool> = parent
        .children
        .par_iter()
        .map(|child| is_child_visible(parent, &matcher, child, snap.image_of(child)))
        .collect();
    let shown: Vec<&ViewNode> = parent
        .children
        .iter()
        .zip(verdicts)
        .filter_map(|(c, v)| v.then_some(c))
        .collect();
    drop(matcher);
    for child in shown {
        out.insert(child.uid.clone());
        collect_visible(snap, child, out);
    }
}

/// Visibility of one child against its parent's rendered image.
pub fn is_child_visible(
    parent: &ViewNode,
    parent_matcher: &Matcher,
    child: &ViewNode,
    child_img: &RgbaImage,
) -> bool {
    let Some(inside) = child.bounds.intersect(&parent.bounds) else {
        return false;
    };
    let Some(template) = child_img.crop(&inside.relative_to(&child.bounds)) else {
        return false;
    };
    let expected = inside.relative_to(&parent.bounds);
    match parent_matcher.match_template(&template) {
        Ok(m) => {
            let found = Rect::new(
                m.best_loc.0 as i32,
                m.best_loc.1 as i32,
                template.width(),
                template.height(),
            );
            iou(&found, &expected) == 1.0
        }
        // a uniform view looks the same at every offset; treat it as shown
        Err(ImagingError::DegenerateTemplate) => true,
        Err(_) => false,
    }
}
