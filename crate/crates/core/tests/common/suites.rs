//! Randomized kernel checks. Each returns the failures it saw, so the same
//! suite backs both a plain test and the acceptance report.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scalediff::imaging::{
    composite_src_over, connected_components, otsu_from_histogram, ssim, template_match, RgbaImage,
};
use serde::Deserialize;

use super::*;

pub fn components_suite(seed: u64, cases: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..cases {
        let (w, h) = (rng.gen_range(1..=64), rng.gen_range(1..=64));
        let density = rng.gen_range(0.05..0.7);
        let m = random_matrix(&mut rng, w, h, density);
        let got: Vec<(Rect, u64)> = connected_components(&m)
            .iter()
            .map(|c| (c.bbox, c.area))
            .collect();
        let labels_dense = connected_components(&m)
            .iter()
            .enumerate()
            .all(|(k, c)| c.label == k as u32 + 1);
        if got != flood_fill_components(&m) || !labels_dense {
            failures.push(format!("components case {i} ({w}x{h})"));
        }
    }
    failures
}

pub fn template_suite(seed: u64, cases: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..cases {
        // every fourth target is large enough for the spectral path
        let (tw, th) = if i % 4 == 0 {
            (rng.gen_range(200..320), rng.gen_range(160..260))
        } else {
            (rng.gen_range(8..90), rng.gen_range(8..90))
        };
        let target = random_image(&mut rng, tw, th);
        let (sw, sh) = (rng.gen_range(3..=tw.min(40)), rng.gen_range(3..=th.min(40)));
        let (ox, oy) = (rng.gen_range(0..=tw - sw), rng.gen_range(0..=th - sh));
        let template = target
            .crop(&Rect::new(ox as i32, oy as i32, sw, sh))
            .expect("inside");
        match template_match(&target, &template) {
            Ok(r) if r.best_loc == (ox, oy) && r.best_score >= 1.0 - 1e-6 => {}
            Ok(r) => failures.push(format!(
                "template case {i}: planted {:?}, found {:?} at {}",
                (ox, oy),
                r.best_loc,
                r.best_score
            )),
            Err(e) => failures.push(format!("template case {i}: {e}")),
        }
    }
    failures
}

#[derive(Deserialize)]
struct SsimCase {
    a: String,
    b: String,
    ssim: f64,
}

/// Self-similarity on random images, then agreement with reference values
/// stored next to the test images.
pub fn ssim_suite(seed: u64, data: &Path) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let cases: Vec<SsimCase> = serde_json::from_str(
        &std::fs::read_to_string(data.join("expected.json")).expect("expected.json"),
    )
    .expect("reference json");
    for (i, c) in cases.iter().enumerate() {
        let r = {
            let (w, h) = (rng.gen_range(1..60), rng.gen_range(1..60));
            random_image(&mut rng, w, h)
        };
        let own = ssim(&r, &r).expect("same size");
        if (own - 1.0).abs() > 1e-9 {
            failures.push(format!("ssim(a, a) = {own} on case {i}"));
        }
        let (a, b) = (load_png(data.join(&c.a)), load_png(data.join(&c.b)));
        let got = ssim(&a, &b).expect("same size");
        if (got - c.ssim).abs() > 1e-3 {
            failures.push(format!("ssim {}: got {got}, reference {}", c.a, c.ssim));
        }
    }
    (cases.len(), failures)
}

pub fn composite_suite(seed: u64, cases: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..cases {
        let px = |rng: &mut ChaCha8Rng| -> [u8; 4] {
            let a = match rng.gen_range(0..6) {
                0 => 0,
                1 => 255,
                _ => rng.gen(),
            };
            [rng.gen(), rng.gen(), rng.gen(), a]
        };
        // destination, first layer, second layer
        let (d, s1, s2) = (px(&mut rng), px(&mut rng), px(&mut rng));
        let dest = RgbaImage::filled(1, 1, d);
        let once = composite_src_over(&dest, &RgbaImage::filled(1, 1, s1), (0, 0)).expect("fits");
        let twice = composite_src_over(&once, &RgbaImage::filled(1, 1, s2), (0, 0)).expect("fits");
        let want1 = src_over_oracle(d, s1);
        let want2 = src_over_oracle(want1, s2);
        let close = |got: [u8; 4], want: [u8; 4]| {
            // colour is undefined where the result is fully transparent
            if got[3] == 0 && want[3] == 0 {
                return true;
            }
            got.iter().zip(want).all(|(g, w)| g.abs_diff(w) <= 1)
        };
        if !close(once.get(0, 0), want1) || !close(twice.get(0, 0), want2) {
            failures.push(format!(
                "composite case {i}: {d:?} + {s1:?} + {s2:?} gave {:?}/{:?}, oracle {want1:?}/{want2:?}",
                once.get(0, 0),
                twice.get(0, 0)
            ));
        }
    }
    failures
}

pub fn otsu_suite(seed: u64, cases: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..cases {
        let mut hist = [0u64; 256];
        match i % 3 {
            0 => {
                for v in hist.iter_mut() {
                    *v = rng.gen_range(0..50);
                }
            }
            1 => {
                // two humps, the usual shape of a text crop
                let (m0, m1) = (rng.gen_range(10..100), rng.gen_range(150..250));
                let n = rng.gen_range(50..3000);
                for _ in 0..n {
                    let m = if rng.gen_bool(0.3) { m0 } else { m1 };
                    let v = (m as i32 + rng.gen_range(-12..=12)).clamp(0, 255);
                    hist[v as usize] += 1;
                }
            }
            _ => {
                // a handful of spikes, where ties are likely
                for _ in 0..rng.gen_range(2..6) {
                    let (v, c) = (rng.gen_range(0..256), rng.gen_range(1..4));
                    hist[v] += c;
                }
            }
        }
        if hist.iter().filter(|&&c| c > 0).count() < 2 {
            hist[0] += 1;
            hist[255] += 1;
        }
        let want = otsu_exhaustive(&hist);
        match otsu_from_histogram(&hist) {
            Ok(t) if t == want => {}
            other => failures.push(format!("otsu case {i}: got {other:?}, exhaustive {want}")),
        }
    }
    failures
}
