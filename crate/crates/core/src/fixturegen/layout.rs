//! Resolves a design at one scale setting into pixel geometry.
//!
//! Everything is measured in whole pixels and positions accumulate integer
//! sizes, so siblings never overlap and children stay inside their parents
//! (scroll content excepted). A horizontal container whose children no longer
//! fit on one line is laid out vertically instead, and text wraps to the
//! width it gets.

use serde::{Deserialize, Serialize};

use super::design::{DesignKind, DesignNode, Orientation, Shape};
use super::glyphs::{layout_text, GlyphRun};
use super::FixtureError;
use crate::geometry::Rect;
use crate::snapshot::ScaleSetting;

const TEXT_PADDING: f64 = 4.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TextContent {
    pub text: String,
    /// Effective size in pixels, as reported in the snapshot.
    pub size: f64,
    /// Size the glyphs are actually drawn at; equals `size` unless a bug froze it.
    pub render_size: f64,
    pub padding: u32,
    /// Trailing glyphs left undrawn.
    pub dropped: usize,
}

impl TextContent {
    pub fn glyphs(&self, width: u32) -> GlyphRun {
        layout_text(
            &self.text,
            self.render_size,
            Some(width.saturating_sub(2 * self.padding)),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IconContent {
    pub shapes: Vec<Shape>,
    /// Shapes are drawn only inside this top-left box, when set.
    pub clip: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Content {
    Fill,
    Text(TextContent),
    Icon(IconContent),
}

/// A view with final pixel geometry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolvedNode {
    pub uid: String,
    pub mapping_id: Option<String>,
    pub class_name: String,
    pub bounds: Rect,
    pub z: i32,
    pub scroll_hint: Option<bool>,
    /// Orientation actually used, for containers.
    pub orientation: Option<Orientation>,
    pub content: Content,
    pub children: Vec<ResolvedNode>,
}

impl ResolvedNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn find(&self, uid: &str) -> Option<&ResolvedNode> {
        if self.uid == uid {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(uid))
    }

    pub fn find_mut(&mut self, uid: &str) -> Option<&mut ResolvedNode> {
        if self.uid == uid {
            return Some(self);
        }
        self.children.iter_mut().find_map(|c| c.find_mut(uid))
    }

    /// Moves this view and its whole subtree.
    pub fn translate(&mut self, dx: i32, dy: i32) {
        self.bounds = self.bounds.translate(dx, dy);
        for c in &mut self.children {
            c.translate(dx, dy);
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(ResolvedNode::node_count)
            .sum::<usize>()
    }
}

struct Ctx {
    display: f64,
    font: f64,
}

impl Ctx {
    fn dp(&self, v: f64) -> u32 {
        (v * self.display).round() as u32
    }

    fn text_px(&self, sp: f64) -> f64 {
        sp * self.display * self.font
    }

    fn text_padding(&self) -> u32 {
        self.dp(TEXT_PADDING)
    }

    /// Unconstrained size: text on one line, horizontal containers horizontal.
    fn measure(&self, node: &DesignNode) -> (u32, u32) {
        match &node.kind {
            DesignKind::Text { text, size } => {
                let size = self.text_px(*size);
                let run = layout_text(text, size, None);
                let pad = self.text_padding();
                (run.width + 2 * pad, run.height(size) + 2 * pad)
            }
            DesignKind::Icon { size, .. } => (self.dp(*size), self.dp(*size)),
            DesignKind::EdgeOverlay { width } => (self.dp(*width), 0),
            DesignKind::Scroll => node
                .children
                .first()
                .map(|c| self.measure(c))
                .unwrap_or((0, 0)),
            DesignKind::Container {
                orientation,
                padding,
                spacing,
            } => {
                let sizes: Vec<(u32, u32)> =
                    node.children.iter().map(|c| self.measure(c)).collect();
                let (pad, gap) = (self.dp(*padding), self.dp(*spacing));
                let gaps = gap * (sizes.len() as u32).saturating_sub(1);
                let (w, h) = match orientation {
                    Orientation::Horizontal => (
                        sizes.iter().map(|s| s.0).sum::<u32>() + gaps,
                        sizes.iter().map(|s| s.1).max().unwrap_or(0),
                    ),
                    Orientation::Vertical => (
                        sizes.iter().map(|s| s.0).max().unwrap_or(0),
                        sizes.iter().map(|s| s.1).sum::<u32>() + gaps,
                    ),
                };
                (w + 2 * pad, h + 2 * pad)
            }
        }
    }

    fn resolved(&self, node: &DesignNode, bounds: Rect, content: Content) -> ResolvedNode {
        ResolvedNode {
            uid: node.uid.clone(),
            mapping_id: node.mapping_id.clone(),
            class_name: node.class_name.clone(),
            bounds,
            z: node.z,
            scroll_hint: node.scroll_hint,
            orientation: None,
            content,
            children: Vec::new(),
        }
    }

    /// Places `node` at (x, y) within `avail` pixels of width. With `fill`
    /// the node takes the whole width (icons keep their own size).
    fn place(
        &self,
        node: &DesignNode,
        x: i32,
        y: i32,
        avail: u32,
        fill: bool,
        height: Option<u32>,
    ) -> ResolvedNode {
        match &node.kind {
            DesignKind::Text { text, size } => {
                let size = self.text_px(*size);
                let pad = self.text_padding();
                let natural = self.measure(node).0;
                let w = if fill { avail } else { natural.min(avail) };
                let run = layout_text(text, size, Some(w.saturating_sub(2 * pad)));
                let h = run.height(size) + 2 * pad;
                let content = Content::Text(TextContent {
                    text: text.clone(),
                    size,
                    render_size: size,
                    padding: pad,
                    dropped: 0,
                });
                self.resolved(node, Rect::new(x, y, w, h), content)
            }
            DesignKind::Icon { size, shapes } => {
                let s = self.dp(*size);
                let content = Content::Icon(IconContent {
                    shapes: shapes.clone(),
                    clip: None,
                });
                self.resolved(node, Rect::new(x, y, s, s), content)
            }
            DesignKind::EdgeOverlay { .. } => {
                let w = self.measure(node).0;
                self.resolved(node, Rect::new(x, y, w, height.unwrap_or(0)), Content::Fill)
            }
            DesignKind::Scroll => {
                let h = height.unwrap_or_else(|| self.measure(node).1);
                let mut out = self.resolved(node, Rect::new(x, y, avail, h), Content::Fill);
                out.children = node
                    .children
                    .iter()
                    .map(|c| self.place(c, x, y, avail, true, None))
                    .collect();
                out
            }
            DesignKind::Container {
                orientation,
                padding,
                spacing,
            } => self.place_container(
                node,
                *orientation,
                *padding,
                *spacing,
                x,
                y,
                avail,
                fill,
                height,
            ),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn place_container(
        &self,
        node: &DesignNode,
        orientation: Orientation,
        padding: f64,
        spacing: f64,
        x: i32,
        y: i32,
        avail: u32,
        fill: bool,
        height: Option<u32>,
    ) -> ResolvedNode {
        let (pad, gap) = (self.dp(padding), self.dp(spacing));
        let w = if fill {
            avail
        } else {
            self.measure(node).0.min(avail)
        };
        let inner = w.saturating_sub(2 * pad);
        let flow: Vec<&DesignNode> = node
            .children
            .iter()
            .filter(|c| !matches!(c.kind, DesignKind::EdgeOverlay { .. }))
            .collect();
        let fits = {
            let widths: u32 = flow.iter().map(|c| self.measure(c).0).sum();
            widths + gap * (flow.len() as u32).saturating_sub(1) <= inner
        };
        let used = match orientation {
            Orientation::Horizontal if fits => Orientation::Horizontal,
            _ => Orientation::Vertical,
        };

        let (cx, mut cy) = (x + pad as i32, y + pad as i32);
        let mut children = Vec::new();
        match used {
            Orientation::Horizontal => {
                let mut px = cx;
                for c in &flow {
                    let placed = self.place(c, px, cy, inner, false, None);
                    px = placed.bounds.right() as i32 + gap as i32;
                    children.push(placed);
                }
            }
            Orientation::Vertical => {
                // only a fixed-height column hands leftover height to a scroll child
                let fixed = || {
                    flow.iter()
                        .filter(|c| !matches!(c.kind, DesignKind::Scroll))
                        .map(|c| self.measure_in(c, inner).1)
                        .sum::<u32>()
                        + gap * (flow.len() as u32).saturating_sub(1)
                };
                for c in &flow {
                    let slot = match (&c.kind, height) {
                        (DesignKind::Scroll, Some(h)) => {
                            Some(h.saturating_sub(2 * pad).saturating_sub(fixed()))
                        }
                        _ => None,
                    };
                    let placed = self.place(c, cx, cy, inner, true, slot);
                    cy = placed.bounds.bottom() as i32 + gap as i32;
                    children.push(placed);
                }
            }
        }
        let h = height.unwrap_or_else(|| {
            let extent = match used {
                Orientation::Horizontal => children.iter().map(|c| c.bounds.h).max().unwrap_or(0),
                Orientation::Vertical => {
                    let sum: u32 = children.iter().map(|c| c.bounds.h).sum();
                    sum + gap * (children.len() as u32).saturating_sub(1)
                }
            };
            extent + 2 * pad
        });
        let bounds = Rect::new(x, y, w, h);
        for c in node
            .children
            .iter()
            .filter(|c| matches!(c.kind, DesignKind::EdgeOverlay { .. }))
        {
            let cw = self.measure(c).0;
            children.push(self.place(c, bounds.right() as i32 - cw as i32, y, cw, false, Some(h)));
        }
        let mut out = self.resolved(node, bounds, Content::Fill);
        out.orientation = Some(used);
        out.children = children;
        out
    }

    /// Size when placed with `fill` in a column `width` pixels wide.
    fn measure_in(&self, node: &DesignNode, width: u32) -> (u32, u32) {
        let placed = self.place(node, 0, 0, width, true, None);
        (placed.bounds.w, placed.bounds.h)
    }
}

/// Lays out `design` on `screen` at `scale`. The root fills the screen and a
/// scroll child takes whatever height the other children leave.
pub fn layout(
    design: &DesignNode,
    scale: &ScaleSetting,
    screen: Rect,
) -> Result<ResolvedNode, FixtureError> {
    let ctx = Ctx {
        display: scale.display_scale,
        font: scale.font_scale,
    };
    let root = ctx.place(design, screen.x, screen.y, screen.w, true, Some(screen.h));
    check_geometry(&root, &screen)?;
    Ok(root)
}

const MAX_EXTENT: u32 = 1 << 14;

fn check_geometry(node: &ResolvedNode, screen: &Rect) -> Result<(), FixtureError> {
    let b = node.bounds;
    if b.is_empty() || b.w > MAX_EXTENT || b.h > MAX_EXTENT || b.bottom() > i32::MAX as i64 / 2 {
        return Err(FixtureError::GeometryOverflow(format!(
            "view {} has bounds {:?}",
            node.uid, b
        )));
    }
    if node.uid.is_empty() {
        return Err(FixtureError::GeometryOverflow("view without uid".into()));
    }
    let _ = screen;
    node.children
        .iter()
        .try_for_each(|c| check_geometry(c, screen))
}
