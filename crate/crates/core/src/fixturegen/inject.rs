//! Labeled scaling bugs applied to a resolved larger-scale tree.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::design::{Orientation, DRAWER_CLASS, SCROLL_CLASS};
use super::glyphs::layout_text;
use super::layout::{Content, ResolvedNode};
use super::FixtureError;
use crate::finding::Category;

/// How an injection picks its victim among the eligible views (pre-order).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetSelector {
    /// Chosen by the case's random stream.
    #[default]
    Auto,
    /// The n-th eligible candidate.
    Index(usize),
    /// The candidate involving this uid.
    Uid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BugInjection {
    pub kind: Category,
    #[serde(default)]
    pub target: TargetSelector,
    /// Shift or overhang in pixels, or glyphs dropped; a per-kind default when absent.
    #[serde(default)]
    pub magnitude: Option<u32>,
}

impl BugInjection {
    pub fn new(kind: Category) -> Self {
        BugInjection {
            kind,
            target: TargetSelector::Auto,
            magnitude: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InjectionMode {
    /// A sibling moved over its predecessor.
    Shift,
    /// The last child moved past its parent's edge.
    Overhang,
    /// Glyphs drawn at the default size.
    Freeze,
    /// Trailing glyphs not drawn.
    Truncate,
    /// Icon content drawn only inside the default-size box.
    Clip,
    /// View removed from the tree.
    Delete,
    /// View moved entirely outside its parent.
    PushOut,
}

/// What was done, and the views that are buggy because of it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InjectionRecord {
    pub kind: Category,
    pub mode: InjectionMode,
    pub views: Vec<String>,
    pub magnitude: u32,
}

/// Ratios between the scaled and default settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleRatios {
    pub display: f64,
    pub text: f64,
}

const OVERLAP_DEPTH: u32 = 10;
const OVERHANG: u32 = 12;
const PUSH_GAP: u32 = 4;

struct Candidate {
    parent: String,
    views: Vec<String>,
}

struct Scan<'a> {
    repetitive: BTreeSet<&'a str>,
}

fn exempt(n: &ResolvedNode) -> bool {
    n.class_name.contains(DRAWER_CLASS)
        || n.class_name.contains(SCROLL_CLASS)
        || n.scroll_hint == Some(true)
}

fn is_text(n: &ResolvedNode) -> bool {
    matches!(n.content, Content::Text(_))
}

fn glyph_count(n: &ResolvedNode) -> usize {
    match &n.content {
        Content::Text(t) => t.text.chars().filter(|c| !c.is_whitespace()).count(),
        _ => 0,
    }
}

impl<'a> Scan<'a> {
    fn new(root: &'a ResolvedNode) -> Self {
        let mut counts: HashMap<&str, usize> = HashMap::new();
        let mut stack = vec![root];
        while let Some(n) = stack.pop() {
            if let Some(id) = &n.mapping_id {
                *counts.entry(id.as_str()).or_default() += 1;
            }
            stack.extend(&n.children);
        }
        Scan {
            repetitive: counts
                .into_iter()
                .filter(|(_, c)| *c > 1)
                .map(|(id, _)| id)
                .collect(),
        }
    }

    /// Eligible targets for `kind` in pre-order, skipping claimed parents.
    fn candidates(
        &self,
        root: &ResolvedNode,
        kind: Category,
        m: u32,
        ratios: ScaleRatios,
        claimed: &BTreeSet<String>,
    ) -> Vec<Candidate> {
        let mut out = Vec::new();
        self.walk(root, false, kind, m, ratios, claimed, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        p: &ResolvedNode,
        in_repeat: bool,
        kind: Category,
        m: u32,
        ratios: ScaleRatios,
        claimed: &BTreeSet<String>,
        out: &mut Vec<Candidate>,
    ) {
        let open = !exempt(p) && !claimed.contains(&p.uid);
        let kids: Vec<&ResolvedNode> = p
            .children
            .iter()
            .filter(|c| !exempt(c) && c.z == 0)
            .collect();
        let leaf = |c: &ResolvedNode| c.is_leaf() && !exempt(c);
        let cand = |views: Vec<&str>| Candidate {
            parent: p.uid.clone(),
            views: views.into_iter().map(String::from).collect(),
        };
        if open {
            match kind {
                Category::ComponentOverlapping | Category::ContentOverlapping => {
                    for w in kids.windows(2) {
                        let (a, b) = (w[0], w[1]);
                        let both_text = is_text(a) && is_text(b);
                        if !leaf(a)
                            || !leaf(b)
                            || both_text != (kind == Category::ContentOverlapping)
                        {
                            continue;
                        }
                        let extent = |n: &ResolvedNode| match p.orientation {
                            Some(Orientation::Horizontal) => n.bounds.w,
                            _ => n.bounds.h,
                        };
                        // a view mostly buried under its neighbour stops being findable at all
                        if extent(a) >= 3 * m && extent(b) >= m + 8 {
                            out.push(cand(vec![&a.uid, &b.uid]));
                        }
                    }
                }
                Category::ComponentCropping => {
                    if let Some(c) = kids.last() {
                        if leaf(c) && c.bounds.w >= 2 * m + 8 {
                            out.push(cand(vec![&c.uid]));
                        }
                    }
                }
                Category::ContentCropping => {
                    for c in &kids {
                        let ok = match &c.content {
                            Content::Text(_) => leaf(c) && glyph_count(c) >= 3,
                            Content::Icon(_) => leaf(c) && ratios.display > 1.05,
                            Content::Fill => false,
                        };
                        if ok {
                            out.push(cand(vec![&c.uid]));
                        }
                    }
                }
                Category::ComponentMissing => {
                    for c in &kids {
                        // removing a text view under a repeated id would change that ancestor's key
                        if leaf(c) && !(in_repeat && is_text(c)) {
                            out.push(cand(vec![&c.uid]));
                        }
                    }
                }
            }
        }
        for c in &p.children {
            let repeat = in_repeat
                || c.mapping_id
                    .as_deref()
                    .is_some_and(|id| self.repetitive.contains(id));
            self.walk(c, repeat, kind, m, ratios, claimed, out);
        }
    }
}

fn default_magnitude(kind: Category) -> u32 {
    match kind {
        Category::ComponentOverlapping | Category::ContentOverlapping => OVERLAP_DEPTH,
        Category::ComponentCropping => OVERHANG,
        Category::ContentCropping | Category::ComponentMissing => 0,
    }
}

/// Applies `injections` in order to the scaled tree `root`. Each injection
/// claims its target's parent, so later ones pick disjoint parts of the page.
pub fn apply_injections<R: Rng>(
    root: &mut ResolvedNode,
    injections: &[BugInjection],
    ratios: ScaleRatios,
    rng: &mut R,
) -> Result<Vec<InjectionRecord>, FixtureError> {
    let mut claimed = BTreeSet::new();
    let mut records = Vec::new();
    for inj in injections {
        let m = inj.magnitude.unwrap_or_else(|| default_magnitude(inj.kind));
        let candidates = Scan::new(root).candidates(root, inj.kind, m, ratios, &claimed);
        let chosen = match &inj.target {
            TargetSelector::Auto => candidates.choose(rng),
            TargetSelector::Index(i) => candidates.get(*i),
            TargetSelector::Uid(u) => candidates.iter().find(|c| c.views.contains(u)),
        };
        let Some(chosen) = chosen else {
            return Err(FixtureError::InjectionInfeasible {
                kind: inj.kind,
                selector: format!("{:?}", inj.target),
            });
        };
        let (parent, views) = (chosen.parent.clone(), chosen.views.clone());
        let record = apply_one(root, inj.kind, m, &parent, views, ratios, rng);
        claimed.insert(parent);
        records.push(record);
    }
    Ok(records)
}

fn apply_one<R: Rng>(
    root: &mut ResolvedNode,
    kind: Category,
    m: u32,
    parent_uid: &str,
    views: Vec<String>,
    ratios: ScaleRatios,
    rng: &mut R,
) -> InjectionRecord {
    let parent = root.find_mut(parent_uid).expect("candidate parent exists");
    let pb = parent.bounds;
    let horizontal = parent.orientation == Some(Orientation::Horizontal);
    let record = |mode, magnitude, views: Vec<String>| InjectionRecord {
        kind,
        mode,
        views,
        magnitude,
    };
    match kind {
        Category::ComponentOverlapping | Category::ContentOverlapping => {
            let a = parent.find(&views[0]).expect("a").bounds;
            let b = parent.find_mut(&views[1]).expect("b");
            if horizontal {
                let dx = (a.right() - m as i64) - b.bounds.x as i64;
                b.translate(dx as i32, 0);
            } else {
                let dy = (a.bottom() - m as i64) - b.bounds.y as i64;
                b.translate(0, dy as i32);
            }
            record(InjectionMode::Shift, m, views)
        }
        Category::ComponentCropping => {
            let c = parent.find_mut(&views[0]).expect("c");
            let dx = pb.right() + m as i64 - c.bounds.right();
            c.translate(dx as i32, 0);
            record(InjectionMode::Overhang, m, views)
        }
        Category::ContentCropping => {
            let c = parent.find_mut(&views[0]).expect("c");
            match &mut c.content {
                Content::Text(t) => {
                    let n = layout_text(&t.text, t.render_size, None).blocks.len();
                    let freeze_ok = ratios.text >= 1.2;
                    if freeze_ok && m == 0 && rng.gen_bool(0.5) {
                        t.render_size = t.size / ratios.text;
                        record(InjectionMode::Freeze, 0, views)
                    } else {
                        let drop = if m > 0 {
                            (m as usize).min(n)
                        } else {
                            (n * 2).div_ceil(5)
                        };
                        t.dropped = drop;
                        record(InjectionMode::Truncate, drop as u32, views)
                    }
                }
                Content::Icon(icon) => {
                    let (w, h) = (c.bounds.w, c.bounds.h);
                    let clip = (
                        (w as f64 / ratios.display).round() as u32,
                        (h as f64 / ratios.display).round() as u32,
                    );
                    icon.clip = Some(clip);
                    record(InjectionMode::Clip, 0, views)
                }
                Content::Fill => unreachable!("fills are not candidates"),
            }
        }
        Category::ComponentMissing => {
            if rng.gen_bool(0.5) {
                parent.children.retain(|c| c.uid != views[0]);
                record(InjectionMode::Delete, 0, views)
            } else {
                let gap = if m > 0 { m } else { PUSH_GAP };
                let c = parent.find_mut(&views[0]).expect("c");
                let dx = pb.right() + gap as i64 - c.bounds.x as i64;
                c.translate(dx as i32, 0);
                record(InjectionMode::PushOut, gap, views)
            }
        }
    }
}
