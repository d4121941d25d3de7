//! Intra-view checks on a paired leaf: glyph-area scaling for text views,
//! component count plus SSIM for everything else.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finding::{Category, Finding, FindingKind};
use crate::imaging::{
    connected_components, foreground, resize_area, ssim, ConnectedComponent, ImagingError,
    RgbaImage,
};
use crate::snapshot::ViewNode;

#[derive(Debug, Error, PartialEq)]
pub enum IntraError {
    #[error("text view {0:?} has no textSize")]
    MissingTextSize(String),
    #[error(transparent)]
    Imaging(#[from] ImagingError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntraCheckConfig {
    /// Allowed relative deviation of the glyph-area ratio from gamma squared.
    pub area_tolerance: f64,
    /// Non-text pairs scoring below this SSIM are reported.
    pub ssim_threshold: f64,
    /// Max difference in bbox width, height and area for a component to count as unchanged.
    pub icon_match_slack: u32,
}

impl Default for IntraCheckConfig {
    fn default() -> Self {
        IntraCheckConfig {
            area_tolerance: 0.2,
            ssim_threshold: 0.9,
            icon_match_slack: 1,
        }
    }
}

impl IntraCheckConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.area_tolerance > 0.0 && self.area_tolerance < 1.0) {
            return Err(format!(
                "area_tolerance must be in (0, 1), got {}",
                self.area_tolerance
            ));
        }
        if !(self.ssim_threshold > 0.0 && self.ssim_threshold <= 1.0) {
            return Err(format!(
                "ssim_threshold must be in (0, 1], got {}",
                self.ssim_threshold
            ));
        }
        Ok(())
    }
}

/// A view together with its rendered image.
#[derive(Clone, Copy)]
pub struct ViewImage<'a> {
    pub node: &'a ViewNode,
    pub image: &'a RgbaImage,
}

/// Text scale ratio `size' / size` between counterpart views.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleRatio {
    pub gamma: f64,
}

impl ScaleRatio {
    pub fn between(a: &ViewNode, b: &ViewNode) -> Result<Self, IntraError> {
        let size = |n: &ViewNode| {
            n.text_size
                .filter(|s| s.is_finite() && *s > 0.0)
                .ok_or_else(|| IntraError::MissingTextSize(n.uid.clone()))
        };
        Ok(ScaleRatio {
            gamma: size(b)? / size(a)?,
        })
    }
}

fn finding(kind: FindingKind, a: &ViewNode, b: &ViewNode) -> Finding {
    Finding::new(
        kind,
        Category::of(kind, false),
        vec![a.uid.clone()],
        vec![b.uid.clone()],
    )
}

/// Drops pairs of components that did not change between the two images.
///
/// Components are visited largest first; each is matched to the first unused
/// counterpart whose bbox width, height and area all lie within `slack`.
/// Returns the remaining (unmatched) areas of each side.
pub fn unchanged_eliminated(
    a: &[ConnectedComponent],
    b: &[ConnectedComponent],
    slack: u32,
) -> (u64, u64) {
    let mut order_a: Vec<&ConnectedComponent> = a.iter().collect();
    let mut order_b: Vec<&ConnectedComponent> = b.iter().collect();
    order_a.sort_by(|x, y| y.area.cmp(&x.area).then(x.label.cmp(&y.label)));
    order_b.sort_by(|x, y| y.area.cmp(&x.area).then(x.label.cmp(&y.label)));
    let mut used = vec![false; order_b.len()];
    let mut rest_a = 0;
    for ca in order_a {
        let hit = order_b.iter().enumerate().position(|(i, cb)| {
            !used[i]
                && ca.bbox.w.abs_diff(cb.bbox.w) <= slack
                && ca.bbox.h.abs_diff(cb.bbox.h) <= slack
                && ca.area.abs_diff(cb.area) <= slack as u64
        });
        match hit {
            Some(i) => used[i] = true,
            None => rest_a += ca.area,
        }
    }
    let rest_b = order_b
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(c, _)| c.area)
        .sum();
    (rest_a, rest_b)
}

/// Glyph-area check for a pair of text views.
///
/// With `gamma = textSize_b / textSize_a`, faithfully scaled text covers
/// `gamma^2` times the foreground area. Components present unchanged in both
/// images (icons that do not follow the font) are removed before summing,
/// unless that would remove everything; wholly unchanged content is exactly
/// what text that failed to scale looks like. Ellipsized views are skipped.
pub fn check_text_pair(
    a: ViewImage<'_>,
    b: ViewImage<'_>,
    cfg: &IntraCheckConfig,
) -> Result<Option<Finding>, IntraError> {
    let ratio = ScaleRatio::between(a.node, b.node)?;
    if a.node.ellipsized || b.node.ellipsized {
        return Ok(None);
    }
    let comps_a = connected_components(&foreground(a.image));
    let comps_b = connected_components(&foreground(b.image));
    let raw_a: u64 = comps_a.iter().map(|c| c.area).sum();
    let raw_b: u64 = comps_b.iter().map(|c| c.area).sum();
    let (mut sum_a, mut sum_b) = unchanged_eliminated(&comps_a, &comps_b, cfg.icon_match_slack);
    if sum_a == 0 && sum_b == 0 {
        (sum_a, sum_b) = (raw_a, raw_b);
    }
    let gamma_sq = ratio.gamma * ratio.gamma;
    let evidence = |f: Finding| {
        f.with("gamma", ratio.gamma)
            .with("area_default", sum_a)
            .with("area_scaled", sum_b)
    };
    match (sum_a, sum_b) {
        (0, 0) => Ok(None),
        (0, _) | (_, 0) => Ok(Some(evidence(finding(
            FindingKind::TextScaleAnomaly,
            a.node,
            b.node,
        )))),
        _ => {
            let area_ratio = sum_b as f64 / sum_a as f64;
            let deviation = (area_ratio - gamma_sq).abs() / gamma_sq;
            if deviation > cfg.area_tolerance {
                Ok(Some(
                    evidence(finding(FindingKind::TextScaleAnomaly, a.node, b.node))
                        .with("area_ratio", area_ratio)
                        .with("deviation", deviation),
                ))
            } else {
                Ok(None)
            }
        }
    }
}

/// Component-count check for non-text views, confirmed by SSIM.
///
/// Equal foreground component counts pass. Otherwise the larger image is
/// area-downscaled to the smaller one's size and the pair is reported when
/// SSIM falls below the threshold.
pub fn check_nontext_pair(
    a: ViewImage<'_>,
    b: ViewImage<'_>,
    cfg: &IntraCheckConfig,
) -> Result<Option<Finding>, IntraError> {
    let count_a = connected_components(&foreground(a.image)).len();
    let count_b = connected_components(&foreground(b.image)).len();
    if count_a == count_b {
        return Ok(None);
    }
    let score = similarity(a.image, b.image)?;
    if score < cfg.ssim_threshold {
        return Ok(Some(
            finding(FindingKind::NonTextAnomaly, a.node, b.node)
                .with("components_default", count_a as u64)
                .with("components_scaled", count_b as u64)
                .with("ssim", score),
        ));
    }
    Ok(None)
}

/// SSIM after shrinking the larger image (by area) to the smaller's size.
pub fn similarity(a: &RgbaImage, b: &RgbaImage) -> Result<f64, ImagingError> {
    if a.dimensions() == b.dimensions() {
        return ssim(a, b);
    }
    let area = |i: &RgbaImage| i.width() as u64 * i.height() as u64;
    let (big, small) = if area(a) >= area(b) { (a, b) } else { (b, a) };
    if small.width() == 0 || small.height() == 0 {
        return Err(ImagingError::EmptyImage);
    }
    let shrunk = resize_area(big, small.width(), small.height());
    if std::ptr::eq(big, a) {
        ssim(&shrunk, small)
    } else {
        ssim(small, &shrunk)
    }
}

/// Dispatches on whether each side is a text view. Text on only one side is
/// itself an anomaly.
pub fn check_pair(
    a: ViewImage<'_>,
    b: ViewImage<'_>,
    cfg: &IntraCheckConfig,
) -> Result<Option<Finding>, IntraError> {
    match (a.node.is_text(), b.node.is_text()) {
        (true, true) => check_text_pair(a, b, cfg),
        (false, false) => check_nontext_pair(a, b, cfg),
        (ta, tb) => Ok(Some(
            finding(FindingKind::TextScaleAnomaly, a.node, b.node)
                .with("text_default", ta)
                .with("text_scaled", tb),
        )),
    }
}
