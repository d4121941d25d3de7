mod common;

use std::path::Path;

use common::suites::*;
use common::*;
use proptest::prelude::*;
use scalediff::imaging::{
    binarize, connected_components, histogram, otsu_threshold, resize_area, ssim, template_match,
    to_gray, BinaryMatrix, RgbaImage,
};
use scalediff::Rect;

fn ssim_data() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/ssim")
}

#[test]
fn components_match_flood_fill() {
    assert_eq!(components_suite(11, 200), Vec::<String>::new());
}

#[test]
fn planted_templates_are_found() {
    assert_eq!(template_suite(12, 100), Vec::<String>::new());
}

#[test]
fn ssim_matches_reference_values() {
    let (n, failures) = ssim_suite(13, &ssim_data());
    assert_eq!(n, 50);
    assert_eq!(failures, Vec::<String>::new());
}

#[test]
fn composite_matches_scalar_oracle() {
    assert_eq!(composite_suite(14, 100), Vec::<String>::new());
}

#[test]
fn otsu_matches_exhaustive_search() {
    assert_eq!(otsu_suite(15, 100), Vec::<String>::new());
}

#[test]
fn ncc_scores_match_direct_formula() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(16);
    for _ in 0..20 {
        let target = {
            let (w, h) = (rng.gen_range(10..40), rng.gen_range(10..40));
            random_image(&mut rng, w, h)
        };
        let template = {
            let (w, h) = (rng.gen_range(2..10), rng.gen_range(2..10));
            random_image(&mut rng, w, h)
        };
        let r = template_match(&target, &template).unwrap();
        for y in 0..r.height {
            for x in 0..r.width {
                let want = ncc_at(&target, &template, x, y);
                assert!(
                    (r.score_at(x, y) - want).abs() < 1e-9,
                    "({x},{y}) {} vs {want}",
                    r.score_at(x, y)
                );
            }
        }
    }
}

#[test]
fn spectral_and_direct_paths_agree() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let target = random_image(&mut rng, 300, 240);
    let template = random_image(&mut rng, 40, 30);
    let r = template_match(&target, &template).unwrap();
    for _ in 0..200 {
        let (x, y) = (rng.gen_range(0..r.width), rng.gen_range(0..r.height));
        assert!((r.score_at(x, y) - ncc_at(&target, &template, x, y)).abs() < 1e-9);
    }
}

#[test]
fn known_otsu_split() {
    let img = RgbaImage::from_fn(4, 1, |x, _| {
        if x < 2 {
            [20, 20, 20, 255]
        } else {
            [220, 220, 220, 255]
        }
    });
    let g = to_gray(&img);
    let t = otsu_threshold(&g).unwrap();
    assert!((20..220).contains(&t));
    assert_eq!(binarize(&g, t).cells(), &[true, true, false, false]);
    assert_eq!(histogram(&g)[20], 2);
}

#[test]
fn ssim_drops_with_noise() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(18);
    let a = random_image(&mut rng, 30, 30);
    let b = RgbaImage::filled(30, 30, [128, 128, 128, 255]);
    assert!(ssim(&a, &b).unwrap() < 0.1);
    assert!(ssim(&a, &RgbaImage::new(3, 3)).is_err());
}

proptest! {
    #[test]
    fn component_areas_partition_the_set_cells(w in 1u32..40, h in 1u32..40, seed: u64, density in 0.0f64..1.0) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, w, h, density);
        let comps = connected_components(&m);
        prop_assert_eq!(comps.iter().map(|c| c.area).sum::<u64>(), m.area());
        for c in &comps {
            prop_assert!(Rect::new(0, 0, w, h).contains(&c.bbox));
            prop_assert!(c.area <= c.bbox.area());
        }
    }

    #[test]
    fn components_survive_transposition(w in 1u32..30, h in 1u32..30, seed: u64) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, w, h, 0.4);
        let t = BinaryMatrix::from_fn(h, w, |x, y| m.get(y, x));
        let mut a: Vec<u64> = connected_components(&m).iter().map(|c| c.area).collect();
        let mut b: Vec<u64> = connected_components(&t).iter().map(|c| c.area).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn ssim_is_symmetric_and_bounded(w in 1u32..30, h in 1u32..30, seed: u64) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = random_image(&mut rng, w, h);
        let b = random_image(&mut rng, w, h);
        let ab = ssim(&a, &b).unwrap();
        let ba = ssim(&b, &a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((-1.0..=1.0 + 1e-12).contains(&ab));
    }

    #[test]
    fn resize_preserves_constant_images(w in 1u32..40, h in 1u32..40, nw in 1u32..40, nh in 1u32..40, px: [u8; 4]) {
        let img = RgbaImage::filled(w, h, px);
        let out = resize_area(&img, nw, nh);
        prop_assert_eq!(out.dimensions(), (nw, nh));
        prop_assert!(out.pixels().all(|p| p == px));
    }

    #[test]
    fn ncc_is_invariant_to_affine_intensity(seed: u64, gain in 1u8..3, offset in 0u8..40) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let target = RgbaImage::from_fn(24, 20, |_, _| { let v: u8 = rng.gen_range(0..100); [v, v, v, 255] });
        let tpl = target.crop(&Rect::new(5, 4, 8, 7)).unwrap();
        let shifted = RgbaImage::from_fn(8, 7, |x, y| {
            let v = tpl.get(x, y)[0] * gain + offset;
            [v, v, v, 255]
        });
        let r = template_match(&target, &shifted).unwrap();
        prop_assert_eq!(r.best_loc, (5, 4));
        prop_assert!(r.best_score > 1.0 - 1e-9);
    }
}
