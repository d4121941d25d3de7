//! Pixel and matrix kernels. Everything here is a pure function over
//! immutable inputs.

mod buffers;
mod components;
mod composite;
mod resize;
mod ssim;
mod template;
mod threshold;

pub use buffers::{BinaryMatrix, GrayImage, RgbaImage};
pub use components::{connected_components, ConnectedComponent};
pub(crate) use composite::composite_in_place;
pub use composite::composite_src_over;
pub use resize::resize_area;
pub use ssim::ssim;
pub use template::{template_match, MatchResult, Matcher};
pub use threshold::{
    binarize, foreground, histogram, otsu_from_histogram, otsu_threshold, to_gray,
};

pub use crate::geometry::iou;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImagingError {
    #[error("source {src:?} at offset {offset:?} does not fit in destination {dest:?}")]
    OutOfBounds {
        offset: (i32, i32),
        src: (u32, u32),
        dest: (u32, u32),
    },
    #[error("all pixels share one value; no threshold separates two classes")]
    DegenerateImage,
    #[error("image has no pixels")]
    EmptyImage,
    #[error("template {template:?} is larger than target {target:?}")]
    TemplateTooLarge {
        template: (u32, u32),
        target: (u32, u32),
    },
    #[error("template has zero intensity variance")]
    DegenerateTemplate,
    #[error("image sizes differ: {left:?} vs {right:?}")]
    DimensionMismatch { left: (u32, u32), right: (u32, u32) },
}

/// Cell is set wherever the pixel has any coverage (alpha > 0).
pub fn visible_matrix(img: &RgbaImage) -> BinaryMatrix {
    BinaryMatrix::from_fn(img.width(), img.height(), |x, y| img.get(x, y)[3] > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visible_matrix_thresholds_at_zero_alpha() {
        assert_eq!(
            visible_matrix(&RgbaImage::filled(3, 2, [1, 2, 3, 255])).area(),
            6
        );
        assert_eq!(
            visible_matrix(&RgbaImage::filled(3, 2, [1, 2, 3, 0])).area(),
            0
        );
        let faint = RgbaImage::from_fn(2, 1, |x, _| [0, 0, 0, x as u8]);
        assert_eq!(visible_matrix(&faint).cells(), &[false, true]);
    }
}
