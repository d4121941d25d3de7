//! Independent oracles and fixture builders shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use scalediff::fixturegen::layout_text;
use scalediff::imaging::{BinaryMatrix, RgbaImage};
use scalediff::snapshot::{ScaleSetting, Snapshot};
use scalediff::{Rect, ViewNode};

/// Components as (bbox, area), ordered by first cell in row-major order,
/// found by breadth-first flood fill.
pub fn flood_fill_components(m: &BinaryMatrix) -> Vec<(Rect, u64)> {
    let (w, h) = (m.width() as i64, m.height() as i64);
    let mut seen = vec![false; (w * h) as usize];
    let mut out = Vec::new();
    for sy in 0..h {
        for sx in 0..w {
            let i = (sy * w + sx) as usize;
            if seen[i] || !m.get(sx as u32, sy as u32) {
                continue;
            }
            seen[i] = true;
            let mut queue = VecDeque::from([(sx, sy)]);
            let (mut x0, mut y0, mut x1, mut y1, mut area) = (sx, sy, sx, sy, 0u64);
            while let Some((x, y)) = queue.pop_front() {
                area += 1;
                x0 = x0.min(x);
                y0 = y0.min(y);
                x1 = x1.max(x);
                y1 = y1.max(y);
                for dy in -1..=1 {
                    for dx in -1..=1 {
                        let (nx, ny) = (x + dx, y + dy);
                        if nx < 0 || ny < 0 || nx >= w || ny >= h {
                            continue;
                        }
                        let j = (ny * w + nx) as usize;
                        if !seen[j] && m.get(nx as u32, ny as u32) {
                            seen[j] = true;
                            queue.push_back((nx, ny));
                        }
                    }
                }
            }
            out.push((
                Rect::new(
                    x0 as i32,
                    y0 as i32,
                    (x1 - x0 + 1) as u32,
                    (y1 - y0 + 1) as u32,
                ),
                area,
            ));
        }
    }
    out
}

/// Otsu by trying every threshold, comparing between-class variances exactly.
/// Class 0 holds values `<= t`; the smallest maximizing `t` wins.
pub fn otsu_exhaustive(hist: &[u64; 256]) -> u8 {
    let n: u128 = hist.iter().map(|&c| c as u128).sum();
    let s: u128 = hist
        .iter()
        .enumerate()
        .map(|(v, &c)| v as u128 * c as u128)
        .sum();
    // variance is proportional to (n*s0 - n0*s)^2 / (n0 * (n - n0))
    let mut best: Option<(u8, u128, u128)> = None;
    for t in 0..256usize {
        let n0: u128 = hist[..=t].iter().map(|&c| c as u128).sum();
        let s0: u128 = hist[..=t]
            .iter()
            .enumerate()
            .map(|(v, &c)| v as u128 * c as u128)
            .sum();
        if n0 == 0 || n0 == n {
            continue;
        }
        let d = (n * s0).abs_diff(n0 * s);
        let (num, den) = (d * d, n0 * (n - n0));
        let better = match best {
            None => true,
            Some((_, bn, bd)) => num * bd > bn * den,
        };
        if better {
            best = Some((t as u8, num, den));
        }
    }
    best.expect("at least two occupied bins").0
}

/// Source-over in straight alpha, computed in f64 and rounded once.
pub fn src_over_oracle(d: [u8; 4], s: [u8; 4]) -> [u8; 4] {
    let sa = s[3] as f64 / 255.0;
    let da = d[3] as f64 / 255.0;
    let oa = sa + da * (1.0 - sa);
    let mut out = [0u8; 4];
    if oa == 0.0 {
        return out;
    }
    for c in 0..3 {
        let premul = s[c] as f64 * sa + d[c] as f64 * da * (1.0 - sa);
        out[c] = (premul / oa).round().clamp(0.0, 255.0) as u8;
    }
    out[3] = (oa * 255.0).round() as u8;
    out
}

/// Direct normalized cross-coefficient at one window, on BT.601 luma.
pub fn ncc_at(target: &RgbaImage, template: &RgbaImage, ox: u32, oy: u32) -> f64 {
    let luma = |p: [u8; 4]| {
        ((299 * p[0] as u32 + 587 * p[1] as u32 + 114 * p[2] as u32 + 500) / 1000) as f64
    };
    let (w, h) = template.dimensions();
    let n = (w * h) as f64;
    let mut t = Vec::new();
    let mut i = Vec::new();
    for y in 0..h {
        for x in 0..w {
            t.push(luma(template.get(x, y)));
            i.push(luma(target.get(ox + x, oy + y)));
        }
    }
    let mt = t.iter().sum::<f64>() / n;
    let mi = i.iter().sum::<f64>() / n;
    let num: f64 = t.iter().zip(&i).map(|(a, b)| (a - mt) * (b - mi)).sum();
    let dt: f64 = t.iter().map(|a| (a - mt).powi(2)).sum();
    let di: f64 = i.iter().map(|b| (b - mi).powi(2)).sum();
    if dt == 0.0 || di == 0.0 {
        0.0
    } else {
        num / (dt * di).sqrt()
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, w: u32, h: u32, density: f64) -> BinaryMatrix {
    BinaryMatrix::from_fn(w, h, |_, _| rng.gen_bool(density))
}

pub fn random_image<R: Rng>(rng: &mut R, w: u32, h: u32) -> RgbaImage {
    RgbaImage::from_fn(w, h, |_, _| [rng.gen(), rng.gen(), rng.gen(), 255])
}

pub fn load_png(path: impl AsRef<std::path::Path>) -> RgbaImage {
    let img = image::open(path).expect("readable png").to_rgba8();
    let (w, h) = img.dimensions();
    RgbaImage::from_raw(w, h, img.into_raw()).expect("rgba buffer")
}

const PAD: u32 = 4;
const BG: [u8; 4] = [236, 236, 232, 255];
const FG: [u8; 4] = [30, 30, 40, 255];

/// A lone text view: the box fits `text` at `box_size`, glyphs are drawn at
/// `draw_size`, and the declared text size is `box_size`.
pub fn text_view(uid: &str, text: &str, box_size: f64, draw_size: f64) -> (ViewNode, RgbaImage) {
    let frame = layout_text(text, box_size, None);
    let run = layout_text(text, draw_size, None);
    let w = frame.width.max(run.width) + 2 * PAD;
    let h = frame.height(box_size).max(run.height(draw_size)) + 2 * PAD;
    let mut img = RgbaImage::filled(w, h, BG);
    for b in &run.blocks {
        img.fill_rect(&b.translate(PAD as i32, PAD as i32), FG);
    }
    let node = ViewNode {
        uid: uid.into(),
        mapping_id: Some("label".into()),
        class_name: "android.widget.TextView".into(),
        bounds: Rect::new(0, 0, w, h),
        z_order: 0,
        text: Some(text.into()),
        text_size: Some(box_size),
        ellipsized: false,
        scroll_hint: None,
        image_ref: format!("img/{uid}.png"),
        children: vec![],
    };
    (node, img)
}

/// Wraps a single view into a one-node snapshot.
pub fn single_view_snapshot(node: ViewNode, img: RgbaImage, scale: ScaleSetting) -> Snapshot {
    let screen = node.bounds;
    let mut images = BTreeMap::new();
    images.insert(node.image_ref.clone(), img);
    Snapshot {
        scale,
        screen,
        root: node,
        images,
    }
}

pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> String {
    (0..len)
        .map(|i| {
            let c = rng.gen_range(b'a'..=b'z') as char;
            if i == 0 {
                c.to_ascii_uppercase()
            } else {
                c
            }
        })
        .collect()
}

pub fn random_phrase<R: Rng>(rng: &mut R) -> String {
    let words = rng.gen_range(1..=4);
    (0..words)
        .map(|_| {
            let len = rng.gen_range(3..=8);
            random_word(rng, len)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub mod suites;
