//! Renders resolved trees into snapshots. Each view's image is its own
//! content with every descendant composited on top in draw order, clipped to
//! the view's bounds.

use std::collections::BTreeMap;

use super::layout::{Content, ResolvedNode};
use super::FixtureError;
use crate::geometry::Rect;
use crate::imaging::{composite_in_place, RgbaImage};
use crate::snapshot::{ScaleSetting, Snapshot, ViewNode};

fn fnv(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

fn tone(key: &str, lo: u8, hi: u8) -> [u8; 4] {
    let h = fnv(key);
    let span = (hi - lo) as u64 + 1;
    let c = |shift: u32| lo + ((h >> shift) % span) as u8;
    [c(0), c(16), c(32), 255]
}

/// Colours come from the mapping id (or uid), so a view looks the same at
/// every scale.
fn palette(node: &ResolvedNode) -> ([u8; 4], [u8; 4]) {
    let key = node.mapping_id.as_deref().unwrap_or(&node.uid);
    match node.content {
        Content::Fill => (tone(key, 70, 200), [0, 0, 0, 0]),
        Content::Text(_) => (tone(key, 215, 250), tone(&format!("{key}/fg"), 15, 60)),
        Content::Icon(_) => (tone(key, 200, 245), tone(&format!("{key}/fg"), 20, 90)),
    }
}

/// The view's own pixels, before any child is drawn.
pub fn own_image(node: &ResolvedNode) -> RgbaImage {
    let (bg, fg) = palette(node);
    let (w, h) = (node.bounds.w, node.bounds.h);
    let mut img = RgbaImage::filled(w, h, bg);
    match &node.content {
        Content::Fill => {}
        Content::Text(t) => {
            let run = t.glyphs(w);
            let keep = run.blocks.len().saturating_sub(t.dropped);
            for b in &run.blocks[..keep] {
                img.fill_rect(&b.translate(t.padding as i32, t.padding as i32), fg);
            }
        }
        Content::Icon(icon) => {
            let (cw, ch) = icon.clip.unwrap_or((w, h));
            for y in 0..h.min(ch) {
                for x in 0..w.min(cw) {
                    let (u, v) = ((x as f64 + 0.5) / w as f64, (y as f64 + 0.5) / h as f64);
                    if icon.shapes.iter().any(|s| s.covers(u, v)) {
                        img.put(x, y, fg);
                    }
                }
            }
        }
    }
    img
}

/// Which view supplied each pixel of one view's image.
#[derive(Clone, Debug, PartialEq)]
pub struct OwnerMap {
    pub width: u32,
    pub height: u32,
    owners: Vec<u32>,
}

impl OwnerMap {
    pub fn owner_index(&self, x: u32, y: u32) -> u32 {
        self.owners[(y * self.width + x) as usize]
    }
}

/// Per-pixel provenance for every view image of a rendered snapshot.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Provenance {
    pub uids: Vec<String>,
    pub maps: BTreeMap<String, OwnerMap>,
}

impl Provenance {
    /// Uid of the view that owns pixel (x, y) of `uid`'s image.
    pub fn owner(&self, uid: &str, x: u32, y: u32) -> Option<&str> {
        let map = self.maps.get(uid)?;
        (x < map.width && y < map.height)
            .then(|| self.uids[map.owner_index(x, y) as usize].as_str())
    }
}

struct Renderer<'a> {
    images: BTreeMap<String, RgbaImage>,
    provenance: Option<&'a mut Provenance>,
}

impl Renderer<'_> {
    fn render(&mut self, node: &ResolvedNode) -> Result<ViewNode, FixtureError> {
        let mut img = own_image(node);
        let mut owners = self.provenance.as_mut().map(|p| {
            let idx = p.uids.len() as u32;
            p.uids.push(node.uid.clone());
            vec![idx; (node.bounds.w * node.bounds.h) as usize]
        });
        let mut children = Vec::with_capacity(node.children.len());
        for child in &node.children {
            children.push(self.render(child)?);
        }
        let mut order: Vec<&ResolvedNode> = node.children.iter().collect();
        order.sort_by_key(|c| c.z);
        for child in order {
            let Some(region) = child.bounds.intersect(&node.bounds) else {
                continue;
            };
            let child_img = &self.images[&image_ref(&child.uid)];
            let part = child_img
                .crop(&region.relative_to(&child.bounds))
                .expect("intersection lies inside the child");
            let at = region.relative_to(&node.bounds);
            composite_in_place(&mut img, &part, (at.x, at.y))
                .map_err(|e| FixtureError::GeometryOverflow(e.to_string()))?;
            if let (Some(owners), Some(p)) = (owners.as_mut(), self.provenance.as_ref()) {
                let child_map = &p.maps[&child.uid];
                let rc = region.relative_to(&child.bounds);
                for y in 0..region.h {
                    for x in 0..region.w {
                        if part.get(x, y)[3] > 0 {
                            let o = child_map.owner_index(rc.x as u32 + x, rc.y as u32 + y);
                            owners
                                [((at.y as u32 + y) * node.bounds.w + at.x as u32 + x) as usize] =
                                o;
                        }
                    }
                }
            }
        }
        if let (Some(owners), Some(p)) = (owners, self.provenance.as_mut()) {
            p.maps.insert(
                node.uid.clone(),
                OwnerMap {
                    width: node.bounds.w,
                    height: node.bounds.h,
                    owners,
                },
            );
        }
        let image = image_ref(&node.uid);
        self.images.insert(image.clone(), img);
        let (text, text_size) = match &node.content {
            Content::Text(t) => (Some(t.text.clone()), Some(t.size)),
            _ => (None, None),
        };
        Ok(ViewNode {
            uid: node.uid.clone(),
            mapping_id: node.mapping_id.clone(),
            class_name: node.class_name.clone(),
            bounds: node.bounds,
            z_order: node.z,
            text,
            text_size,
            ellipsized: false,
            scroll_hint: node.scroll_hint,
            image_ref: image,
            children,
        })
    }
}

fn image_ref(uid: &str) -> String {
    format!("img/{uid}.png")
}

/// Renders a resolved tree into a snapshot.
pub fn render_snapshot(
    root: &ResolvedNode,
    scale: ScaleSetting,
    screen: Rect,
) -> Result<Snapshot, FixtureError> {
    let mut r = Renderer {
        images: BTreeMap::new(),
        provenance: None,
    };
    let root = r.render(root)?;
    Ok(Snapshot {
        scale,
        screen,
        root,
        images: r.images,
    })
}

/// Like [`render_snapshot`], also returning per-pixel provenance.
pub fn render_with_provenance(
    root: &ResolvedNode,
    scale: ScaleSetting,
    screen: Rect,
) -> Result<(Snapshot, Provenance), FixtureError> {
    let mut prov = Provenance::default();
    let mut r = Renderer {
        images: BTreeMap::new(),
        provenance: Some(&mut prov),
    };
    let root = r.render(root)?;
    let snap = Snapshot {
        scale,
        screen,
        root,
        images: r.images,
    };
    Ok((snap, prov))
}
