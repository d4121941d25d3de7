use std::collections::BTreeMap;
use std::fs;
use std::path::{Component, Path};

use serde::{Deserialize, Serialize};

use super::{Rect, ScaleSetting, Snapshot, SnapshotError, ViewNode};
use crate::imaging::RgbaImage;

pub const TREE_FILE: &str = "tree.json";

#[derive(Serialize, Deserialize)]
struct TreeFile {
    scale: ScaleSetting,
    screen: Rect,
    root: NodeRecord,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct NodeRecord {
    uid: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mapping_id: Option<String>,
    class_name: String,
    bounds: Rect,
    z_order: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    text_size: Option<f64>,
    ellipsized: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scroll_hint: Option<bool>,
    image: String,
    children: Vec<NodeRecord>,
}

impl From<NodeRecord> for ViewNode {
    fn from(r: NodeRecord) -> Self {
        ViewNode {
            uid: r.uid,
            mapping_id: r.mapping_id,
            class_name: r.class_name,
            bounds: r.bounds,
            z_order: r.z_order,
            text: r.text,
            text_size: r.text_size,
            ellipsized: r.ellipsized,
            scroll_hint: r.scroll_hint,
            image_ref: r.image,
            children: r.children.into_iter().map(ViewNode::from).collect(),
        }
    }
}

impl From<&ViewNode> for NodeRecord {
    fn from(n: &ViewNode) -> Self {
        NodeRecord {
            uid: n.uid.clone(),
            mapping_id: n.mapping_id.clone(),
            class_name: n.class_name.clone(),
            bounds: n.bounds,
            z_order: n.z_order,
            text: n.text.clone(),
            text_size: n.text_size,
            ellipsized: n.ellipsized,
            scroll_hint: n.scroll_hint,
            image: n.image_ref.clone(),
            children: n.children.iter().map(NodeRecord::from).collect(),
        }
    }
}

/// Image references must stay inside the snapshot directory.
fn check_relative(image_ref: &str) -> Result<(), SnapshotError> {
    let p = Path::new(image_ref);
    let ok = !image_ref.is_empty()
        && p.components()
            .all(|c| matches!(c, Component::Normal(_) | Component::CurDir));
    if ok {
        Ok(())
    } else {
        Err(SnapshotError::SchemaViolation(format!(
            "image path {image_ref:?} must be relative and stay inside the snapshot"
        )))
    }
}

/// Reads `tree.json` and every referenced PNG from `dir`, then validates the result.
pub fn load_snapshot(dir: impl AsRef<Path>) -> Result<Snapshot, SnapshotError> {
    let dir = dir.as_ref();
    let tree_path = dir.join(TREE_FILE);
    let raw = fs::read_to_string(&tree_path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => SnapshotError::MissingFile(tree_path.display().to_string()),
        _ => SnapshotError::Io {
            path: tree_path.display().to_string(),
            source: e,
        },
    })?;
    let file: TreeFile = serde_json::from_str(&raw)
        .map_err(|e| SnapshotError::SchemaViolation(format!("{}: {e}", tree_path.display())))?;
    let root = ViewNode::from(file.root);

    let mut images = BTreeMap::new();
    for node in super::preorder(&root) {
        if images.contains_key(&node.image_ref) {
            continue;
        }
        check_relative(&node.image_ref)?;
        let path = dir.join(&node.image_ref);
        let bytes = fs::read(&path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => SnapshotError::MissingFile(path.display().to_string()),
            _ => SnapshotError::Io {
                path: path.display().to_string(),
                source: e,
            },
        })?;
        let decoded = image::load_from_memory_with_format(&bytes, image::ImageFormat::Png)
            .map_err(|source| SnapshotError::Image {
                path: path.display().to_string(),
                source,
            })?
            .to_rgba8();
        let (w, h) = decoded.dimensions();
        let img = RgbaImage::from_raw(w, h, decoded.into_raw()).expect("rgba8 buffer");
        images.insert(node.image_ref.clone(), img);
    }

    let snap = Snapshot {
        scale: file.scale,
        screen: file.screen,
        root,
        images,
    };
    snap.validate()?;
    Ok(snap)
}

/// Writes `snap` as a snapshot directory. Output bytes depend only on `snap`.
pub fn write_snapshot(snap: &Snapshot, dir: impl AsRef<Path>) -> Result<(), SnapshotError> {
    let dir = dir.as_ref();
    snap.validate()?;
    let io_err = |path: &Path| {
        let path = path.display().to_string();
        move |source| SnapshotError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;

    let file = TreeFile {
        scale: snap.scale,
        screen: snap.screen,
        root: NodeRecord::from(&snap.root),
    };
    let mut json = serde_json::to_string_pretty(&file).expect("tree serializes");
    json.push('\n');
    let tree_path = dir.join(TREE_FILE);
    fs::write(&tree_path, json).map_err(io_err(&tree_path))?;

    for (image_ref, img) in &snap.images {
        check_relative(image_ref)?;
        let path = dir.join(image_ref);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(io_err(parent))?;
        }
        let mut buf = Vec::new();
        image::write_buffer_with_format(
            &mut std::io::Cursor::new(&mut buf),
            img.as_raw(),
            img.width(),
            img.height(),
            image::ExtendedColorType::Rgba8,
            image::ImageFormat::Png,
        )
        .map_err(|source| SnapshotError::Image {
            path: path.display().to_string(),
            source,
        })?;
        fs::write(&path, buf).map_err(io_err(&path))?;
    }
    Ok(())
}
