//! Pseudo-glyphs: every visible character is one filled rectangle whose
//! width and height are fixed fractions of the text size.

use crate::geometry::Rect;

/// Width and height of a character's block as fractions of the text size.
///
/// Every block has the same height. With two height classes a short block at
/// 1.5x would come within a pixel of a tall block at 1x, and the unchanged
/// component matcher could pair glyphs of different characters.
pub fn glyph_factors(c: char) -> (f64, f64) {
    let code = c as u32;
    let mut w = 0.36 + 0.05 * (code.wrapping_mul(7) % 6) as f64;
    if c.is_uppercase() {
        w += 0.08;
    }
    (w, 0.6)
}

/// Vertical offset of a character's block below the line's glyph band top,
/// as a fraction of the text size. Varies by character so that words differ
/// in shape, not just in block widths.
pub fn glyph_drop(c: char) -> f64 {
    0.04 * ((c as u32).wrapping_mul(13) % 4) as f64
}

/// Block size in pixels for a character at `size` px.
pub fn glyph_size(c: char, size: f64) -> (u32, u32) {
    let (fw, fh) = glyph_factors(c);
    (px(fw * size), px(fh * size))
}

fn px(v: f64) -> u32 {
    (v.round() as u32).max(1)
}

/// Horizontal gap between blocks of one word.
pub fn glyph_gap(size: f64) -> u32 {
    ((0.14 * size).round() as u32).max(2)
}

pub fn space_advance(size: f64) -> u32 {
    ((0.32 * size).round() as u32).max(3)
}

/// Vertical metrics: (top pad, glyph band height, bottom pad), summing to the line height.
fn line_metrics(size: f64) -> (u32, u32, u32) {
    (
        ((0.16 * size).round() as u32).max(1),
        px(0.72 * size),
        ((0.2 * size).round() as u32).max(1),
    )
}

pub fn line_height(size: f64) -> u32 {
    let (a, b, c) = line_metrics(size);
    a + b + c
}

/// Positioned blocks of a laid-out text, relative to the text origin.
#[derive(Clone, Debug, PartialEq)]
pub struct GlyphRun {
    pub blocks: Vec<Rect>,
    pub width: u32,
    pub lines: u32,
}

impl GlyphRun {
    pub fn height(&self, size: f64) -> u32 {
        self.lines * line_height(size)
    }

    pub fn area(&self) -> u64 {
        self.blocks.iter().map(Rect::area).sum()
    }
}

fn word_width(word: &[char], size: f64) -> u32 {
    let gap = glyph_gap(size);
    let w: u32 = word.iter().map(|&c| glyph_size(c, size).0).sum();
    w + gap * (word.len() as u32).saturating_sub(1)
}

/// Lays out `text` at `size` px, wrapping at word boundaries so no line is
/// wider than `max_width` (`None` keeps everything on one line). Words wider
/// than a line are broken between characters.
pub fn layout_text(text: &str, size: f64, max_width: Option<u32>) -> GlyphRun {
    let gap = glyph_gap(size);
    let space = space_advance(size);
    let (top, tall, _) = line_metrics(size);
    let lh = line_height(size);
    let limit = max_width.unwrap_or(u32::MAX);

    let mut blocks = Vec::new();
    let (mut x, mut line, mut width) = (0u32, 0u32, 0u32);
    let mut line_used = false;
    let words: Vec<Vec<char>> = text
        .split_whitespace()
        .map(|w| w.chars().collect())
        .collect();
    for word in &words {
        let ww = word_width(word, size);
        if line_used && x + space + ww > limit {
            line += 1;
            x = 0;
            line_used = false;
        } else if line_used {
            x += space;
        }
        for (i, &c) in word.iter().enumerate() {
            let (w, h) = glyph_size(c, size);
            let step = if i == 0 { 0 } else { gap };
            if line_used && x + step + w > limit {
                line += 1;
                x = 0;
            } else {
                x += step;
            }
            let y = line * lh + top + ((glyph_drop(c) * size).round() as u32).min(tall - h);
            blocks.push(Rect::new(x as i32, y as i32, w, h));
            x += w;
            width = width.max(x);
            line_used = true;
        }
    }
    GlyphRun {
        blocks,
        width,
        lines: if line_used || line > 0 { line + 1 } else { 1 },
    }
}
