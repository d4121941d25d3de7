//! The pixel kernels on a small synthetic image: luma, Otsu, connected
//! components, template matching, SSIM and area resizing.

use scalediff::imaging::{
    connected_components, foreground, otsu_threshold, resize_area, ssim, template_match, to_gray,
    RgbaImage,
};
use scalediff::Rect;

fn main() {
    // three dark marks on a light card
    let mut card = RgbaImage::filled(60, 30, [235, 232, 220, 255]);
    card.fill_rect(&Rect::new(4, 6, 10, 14), [30, 30, 30, 255]);
    card.fill_rect(&Rect::new(20, 6, 6, 14), [30, 30, 30, 255]);
    card.fill_rect(&Rect::new(34, 10, 18, 6), [90, 20, 20, 255]);

    let t = otsu_threshold(&to_gray(&card)).expect("two tones");
    println!("otsu threshold: {t}");
    for c in connected_components(&foreground(&card)) {
        println!("component {}: bbox {:?}, area {}", c.label, c.bbox, c.area);
    }

    let patch = card.crop(&Rect::new(18, 4, 12, 18)).unwrap();
    let m = template_match(&card, &patch).unwrap();
    println!(
        "template found at {:?} with score {:.6}",
        m.best_loc, m.best_score
    );

    let doubled = resize_area(&card, 120, 60);
    let back = resize_area(&doubled, 60, 30);
    println!(
        "ssim after 2x up and down: {:.4}",
        ssim(&card, &back).unwrap()
    );
    let mut smudged = card.clone();
    smudged.fill_rect(&Rect::new(34, 10, 18, 6), [235, 232, 220, 255]);
    println!(
        "ssim with one mark erased: {:.4}",
        ssim(&card, &smudged).unwrap()
    );
}
