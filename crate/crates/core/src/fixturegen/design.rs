//! Scale-independent page designs and the random page builder.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::glyphs::{glyph_drop, glyph_factors};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ShapeKind {
    Rect,
    Ellipse,
}

/// Icon shape in unit coordinates of the icon's box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Shape {
    pub kind: ShapeKind,
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Shape {
    /// Whether the unit point lies inside.
    pub fn covers(&self, u: f64, v: f64) -> bool {
        match self.kind {
            ShapeKind::Rect => u >= self.x0 && u < self.x1 && v >= self.y0 && v < self.y1,
            ShapeKind::Ellipse => {
                let (cx, cy) = ((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0);
                let (rx, ry) = ((self.x1 - self.x0) / 2.0, (self.y1 - self.y0) / 2.0);
                let (dx, dy) = ((u - cx) / rx, (v - cy) / ry);
                dx * dx + dy * dy <= 1.0
            }
        }
    }
}

/// Sizes are in density-independent units; text sizes in scale-independent units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DesignKind {
    Container {
        orientation: Orientation,
        padding: f64,
        spacing: f64,
    },
    /// Single-child scrollable viewport; takes the height left over in its parent.
    Scroll,
    /// Full-height strip pinned to the right edge of its parent, drawn on top.
    EdgeOverlay {
        width: f64,
    },
    Text {
        text: String,
        size: f64,
    },
    Icon {
        size: f64,
        shapes: Vec<Shape>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignNode {
    pub uid: String,
    pub mapping_id: Option<String>,
    pub class_name: String,
    pub kind: DesignKind,
    pub z: i32,
    pub scroll_hint: Option<bool>,
    pub children: Vec<DesignNode>,
}

impl DesignNode {
    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(DesignNode::node_count)
            .sum::<usize>()
    }
}

pub const TEXT_CLASS: &str = "android.widget.TextView";
pub const BUTTON_CLASS: &str = "android.widget.Button";
pub const IMAGE_CLASS: &str = "android.widget.ImageView";
pub const IMAGE_BUTTON_CLASS: &str = "android.widget.ImageButton";
pub const LINEAR_CLASS: &str = "android.widget.LinearLayout";
pub const SCROLL_CLASS: &str = "android.widget.ScrollView";
pub const DRAWER_CLASS: &str = "androidx.drawerlayout.widget.DrawerLayout";
pub const ROW_ID: &str = "row";

/// Knobs for the random page builder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TreeShape {
    /// Inclusive range for the number of items in the scrolling content.
    pub items: (usize, usize),
    /// Item mix weights: list row, paragraph, heading, image, chip row.
    pub weights: [u32; 5],
    /// Probability of a collapsible drawer strip on the right edge.
    pub drawer_probability: f64,
    /// Declare the scroll container through `scrollHint` instead of its class name.
    pub scroll_hint: bool,
    /// Inclusive range of body text sizes.
    pub text_size: (f64, f64),
}

impl Default for TreeShape {
    fn default() -> Self {
        TreeShape {
            items: (5, 9),
            weights: [4, 2, 2, 1, 1],
            drawer_probability: 0.3,
            scroll_hint: false,
            text_size: (14.0, 20.0),
        }
    }
}

struct Builder<'r, R: Rng> {
    rng: &'r mut R,
    next_uid: usize,
    texts: BTreeSet<Vec<(u32, u32)>>,
}

/// Block shape of each character in units of the text size; spaces map to zero.
fn glyph_signature(text: &str) -> Vec<(u32, u32)> {
    text.chars()
        .map(|c| match c {
            ' ' => (0, 0),
            c => {
                let (w, _) = glyph_factors(c);
                (
                    (w * 100.0).round() as u32,
                    (glyph_drop(c) * 100.0).round() as u32 + 1,
                )
            }
        })
        .collect()
}

impl<R: Rng> Builder<'_, R> {
    fn node(
        &mut self,
        mapping_id: Option<String>,
        class: &str,
        kind: DesignKind,
        children: Vec<DesignNode>,
    ) -> DesignNode {
        // uids are assigned after building so they follow pre-order
        DesignNode {
            uid: String::new(),
            mapping_id,
            class_name: class.to_string(),
            kind,
            z: 0,
            scroll_hint: None,
            children,
        }
    }

    fn word(&mut self) -> String {
        const ONSETS: [&str; 14] = [
            "b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z",
        ];
        const VOWELS: [&str; 5] = ["a", "e", "i", "o", "u"];
        let syllables = self.rng.gen_range(1..=3);
        let mut w = String::new();
        for _ in 0..syllables {
            w.push_str(ONSETS.choose(self.rng).unwrap());
            w.push_str(VOWELS.choose(self.rng).unwrap());
        }
        if self.rng.gen_bool(0.3) {
            w.push_str(ONSETS.choose(self.rng).unwrap());
        }
        w
    }

    /// A page-unique phrase of `min..=max` words (at least three glyphs).
    fn phrase(&mut self, min: usize, max: usize, capitalize: bool) -> String {
        loop {
            let n = self.rng.gen_range(min..=max);
            let words: Vec<String> = (0..n).map(|_| self.word()).collect();
            let mut s = words.join(" ");
            if capitalize {
                s = s[..1].to_uppercase() + &s[1..];
            }
            // two strings drawn with identical blocks would be indistinguishable views
            let shape = glyph_signature(&s);
            if s.chars().filter(|c| !c.is_whitespace()).count() >= 3 && self.texts.insert(shape) {
                return s;
            }
        }
    }

    fn text(&mut self, id: String, class: &str, text: String, size: f64) -> DesignNode {
        self.node(Some(id), class, DesignKind::Text { text, size }, vec![])
    }

    fn icon(&mut self, id: String, class: &str, size: f64) -> DesignNode {
        let shapes = self.shapes();
        self.node(Some(id), class, DesignKind::Icon { size, shapes }, vec![])
    }

    /// One to three shapes stacked in the left part of the box plus a bar on
    /// the right. Shapes keep a gap of at least 0.12 so they stay separate
    /// components at any size of 24 px or more.
    fn shapes(&mut self) -> Vec<Shape> {
        let mut out = Vec::new();
        let k = self.rng.gen_range(1..=3);
        let slot = 0.84 / k as f64;
        for i in 0..k {
            let top = 0.08 + slot * i as f64;
            let bottom = top + slot - if i + 1 < k { 0.12 } else { 0.0 };
            let x0 = self.rng.gen_range(0.08..0.3);
            let x1 = self.rng.gen_range(x0 + 0.18..=0.62);
            let kind = if self.rng.gen_bool(0.5) {
                ShapeKind::Rect
            } else {
                ShapeKind::Ellipse
            };
            out.push(Shape {
                kind,
                x0,
                y0: top,
                x1,
                y1: bottom,
            });
        }
        let x0 = self.rng.gen_range(0.74..0.78);
        let x1 = self.rng.gen_range(x0 + 0.15..=0.94);
        let y0 = self.rng.gen_range(0.06..0.4);
        let y1 = self.rng.gen_range(y0 + 0.3..=0.94);
        out.push(Shape {
            kind: ShapeKind::Rect,
            x0,
            y0,
            x1,
            y1,
        });
        out
    }

    fn body_size(&mut self, shape: &TreeShape) -> f64 {
        let (lo, hi) = shape.text_size;
        if hi > lo {
            (self.rng.gen_range(lo..=hi) * 2.0).round() / 2.0
        } else {
            lo
        }
    }

    fn row(&mut self, k: usize, shape: &TreeShape) -> DesignNode {
        let icon_size = self.rng.gen_range(32..=44) as f64;
        let icon = self.icon(format!("row{k}_icon"), IMAGE_CLASS, icon_size);
        let size = self.body_size(shape);
        let title = self.phrase(1, 3, true);
        let title = self.text(format!("row{k}_title"), TEXT_CLASS, title, size + 2.0);
        let mut col = vec![title];
        if self.rng.gen_bool(0.7) {
            let sub = self.phrase(2, 5, false);
            col.push(self.text(format!("row{k}_subtitle"), TEXT_CLASS, sub, size));
        }
        let column = self.node(
            Some(format!("row{k}_body")),
            LINEAR_CLASS,
            DesignKind::Container {
                orientation: Orientation::Vertical,
                padding: 0.0,
                spacing: 2.0,
            },
            col,
        );
        self.node(
            Some(ROW_ID.into()),
            LINEAR_CLASS,
            DesignKind::Container {
                orientation: Orientation::Horizontal,
                padding: 6.0,
                spacing: 10.0,
            },
            vec![icon, column],
        )
    }

    fn chips(&mut self, k: usize) -> DesignNode {
        let n = self.rng.gen_range(2..=4);
        let size = self.rng.gen_range(13..=16) as f64;
        let chips = (0..n)
            .map(|j| {
                let label = self.phrase(1, 1, true);
                self.text(format!("chip{k}_{j}"), BUTTON_CLASS, label, size)
            })
            .collect();
        self.node(
            Some(format!("chips{k}")),
            LINEAR_CLASS,
            DesignKind::Container {
                orientation: Orientation::Horizontal,
                padding: 4.0,
                spacing: 8.0,
            },
            chips,
        )
    }

    fn item(&mut self, k: usize, shape: &TreeShape) -> DesignNode {
        let total: u32 = shape.weights.iter().sum::<u32>().max(1);
        let mut pick = self.rng.gen_range(0..total);
        let mut which = 0;
        for (i, w) in shape.weights.iter().enumerate() {
            if pick < *w {
                which = i;
                break;
            }
            pick -= w;
        }
        match which {
            0 => self.row(k, shape),
            1 => {
                let size = self.body_size(shape);
                let text = self.phrase(4, 12, true);
                self.text(format!("para{k}"), TEXT_CLASS, text, size)
            }
            2 => {
                let text = self.phrase(1, 3, true);
                let size = self.rng.gen_range(20..=24) as f64;
                self.text(format!("heading{k}"), TEXT_CLASS, text, size)
            }
            3 => {
                let size = self.rng.gen_range(48..=96) as f64;
                self.icon(format!("image{k}"), IMAGE_CLASS, size)
            }
            _ => self.chips(k),
        }
    }
}

fn assign_uids(node: &mut DesignNode, next: &mut usize) {
    node.uid = format!("v{next}");
    *next += 1;
    for c in &mut node.children {
        assign_uids(c, next);
    }
}

/// Builds a random page: a toolbar, a scrolling content column with list
/// rows, paragraphs, headings, images and chip rows, and optionally a drawer
/// strip on the right edge.
pub fn build_page<R: Rng>(shape: &TreeShape, rng: &mut R) -> DesignNode {
    let mut b = Builder {
        rng,
        next_uid: 0,
        texts: BTreeSet::new(),
    };
    let nav_size = b.rng.gen_range(24..=32) as f64;
    let nav = b.icon("nav".into(), IMAGE_BUTTON_CLASS, nav_size);
    let title_text = b.phrase(1, 2, true);
    let title_size = b.rng.gen_range(18..=22) as f64;
    let title = b.text("title".into(), TEXT_CLASS, title_text, title_size);
    let action_size = b.rng.gen_range(24..=32) as f64;
    let action = b.icon("action".into(), IMAGE_BUTTON_CLASS, action_size);
    let toolbar = b.node(
        Some("toolbar".into()),
        LINEAR_CLASS,
        DesignKind::Container {
            orientation: Orientation::Horizontal,
            padding: 8.0,
            spacing: 12.0,
        },
        vec![nav, title, action],
    );

    let (lo, hi) = shape.items;
    let n = b.rng.gen_range(lo.max(1)..=hi.max(lo.max(1)));
    let items: Vec<DesignNode> = (0..n).map(|k| b.item(k, shape)).collect();
    let content = b.node(
        Some("content".into()),
        LINEAR_CLASS,
        DesignKind::Container {
            orientation: Orientation::Vertical,
            padding: 8.0,
            spacing: 6.0,
        },
        items,
    );
    let mut scroll = b.node(
        Some("scroll".into()),
        SCROLL_CLASS,
        DesignKind::Scroll,
        vec![content],
    );
    if shape.scroll_hint {
        scroll.class_name = "android.widget.FrameLayout".into();
        scroll.scroll_hint = Some(true);
    }

    let mut children = vec![toolbar, scroll];
    if b.rng.gen_bool(shape.drawer_probability.clamp(0.0, 1.0)) {
        let width = b.rng.gen_range(10..=16) as f64;
        let mut drawer = b.node(
            Some("drawer".into()),
            DRAWER_CLASS,
            DesignKind::EdgeOverlay { width },
            vec![],
        );
        drawer.z = 1;
        children.push(drawer);
    }
    let mut root = b.node(
        Some("root".into()),
        LINEAR_CLASS,
        DesignKind::Container {
            orientation: Orientation::Vertical,
            padding: 0.0,
            spacing: 0.0,
        },
        children,
    );
    let mut next = b.next_uid;
    assign_uids(&mut root, &mut next);
    root
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pages_are_deterministic_and_uniquely_keyed() {
        let shape = TreeShape::default();
        let a = build_page(&shape, &mut ChaCha8Rng::seed_from_u64(7));
        let b = build_page(&shape, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        let mut uids = BTreeSet::new();
        let mut texts = BTreeSet::new();
        let mut stack = vec![&a];
        while let Some(n) = stack.pop() {
            assert!(uids.insert(n.uid.clone()));
            if let DesignKind::Text { text, .. } = &n.kind {
                assert!(texts.insert(glyph_signature(text)), "repeated text {text}");
            }
            stack.extend(&n.children);
        }
        assert_eq!(a.uid, "v0");
    }

    #[test]
    fn icon_shapes_keep_their_gaps() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let page = build_page(&TreeShape::default(), &mut rng);
            let mut stack = vec![&page];
            while let Some(n) = stack.pop() {
                if let DesignKind::Icon { shapes, .. } = &n.kind {
                    for (i, a) in shapes.iter().enumerate() {
                        assert!(a.x1 - a.x0 >= 0.15 && a.y1 - a.y0 >= 0.15);
                        for b in &shapes[i + 1..] {
                            let gap_x = (b.x0 - a.x1).max(a.x0 - b.x1);
                            let gap_y = (b.y0 - a.y1).max(a.y0 - b.y1);
                            assert!(gap_x.max(gap_y) >= 0.1199, "{a:?} {b:?}");
                        }
                    }
                }
                stack.extend(&n.children);
            }
        }
    }
}
