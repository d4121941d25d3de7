//! Build a two-view snapshot by hand, write it to disk and read it back.

use std::collections::BTreeMap;

use scalediff::imaging::RgbaImage;
use scalediff::snapshot::{preorder, ScaleSetting};
use scalediff::{load_snapshot, write_snapshot, Rect, Snapshot, ViewNode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let label = ViewNode {
        uid: "v1".into(),
        mapping_id: Some("title".into()),
        class_name: "android.widget.TextView".into(),
        bounds: Rect::new(8, 8, 64, 20),
        z_order: 0,
        text: Some("Hello".into()),
        text_size: Some(16.0),
        ellipsized: false,
        scroll_hint: None,
        image_ref: "img/v1.png".into(),
        children: vec![],
    };
    let root = ViewNode {
        uid: "v0".into(),
        mapping_id: Some("root".into()),
        class_name: "android.widget.FrameLayout".into(),
        bounds: Rect::new(0, 0, 80, 36),
        z_order: 0,
        text: None,
        text_size: None,
        ellipsized: false,
        scroll_hint: None,
        image_ref: "img/v0.png".into(),
        children: vec![label],
    };

    let mut images = BTreeMap::new();
    images.insert(
        "img/v0.png".to_string(),
        RgbaImage::filled(80, 36, [250, 250, 250, 255]),
    );
    let mut text = RgbaImage::filled(64, 20, [230, 230, 255, 255]);
    text.fill_rect(&Rect::new(4, 4, 40, 10), [20, 20, 60, 255]);
    images.insert("img/v1.png".to_string(), text);

    let snap = Snapshot {
        scale: ScaleSetting::DEFAULT,
        screen: Rect::new(0, 0, 80, 36),
        root,
        images,
    };
    snap.validate()?;

    let dir = std::env::temp_dir().join("scalediff-roundtrip");
    write_snapshot(&snap, &dir)?;
    let back = load_snapshot(&dir)?;
    assert_eq!(back, snap);

    println!("wrote {}", dir.join("tree.json").display());
    for node in preorder(&back.root) {
        println!(
            "{:4} {:28} {:?} text={:?}",
            node.uid, node.class_name, node.bounds, node.text
        );
    }
    Ok(())
}
