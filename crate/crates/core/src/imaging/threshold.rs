use super::{BinaryMatrix, GrayImage, ImagingError, RgbaImage};

/// BT.601 luma, `round(0.299 r + 0.587 g + 0.114 b)`. Alpha is ignored.
pub fn to_gray(img: &RgbaImage) -> GrayImage {
    let data = img.pixels().map(|[r, g, b, _]| luma(r, g, b)).collect();
    GrayImage::from_raw(img.width(), img.height(), data).expect("same pixel count")
}

#[inline]
pub(crate) fn luma(r: u8, g: u8, b: u8) -> u8 {
    // integer form keeps round-half-up exact
    ((299 * r as u32 + 587 * g as u32 + 114 * b as u32 + 500) / 1000) as u8
}

pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut hist = [0u64; 256];
    for &v in img.as_raw() {
        hist[v as usize] += 1;
    }
    hist
}

/// Otsu's threshold: the `t` maximizing between-class variance where class 0
/// holds values `<= t`. Ties resolve to the smallest `t`.
pub fn otsu_threshold(img: &GrayImage) -> Result<u8, ImagingError> {
    otsu_from_histogram(&histogram(img))
}

pub fn otsu_from_histogram(hist: &[u64; 256]) -> Result<u8, ImagingError> {
    let total: u64 = hist.iter().sum();
    if total == 0 {
        return Err(ImagingError::EmptyImage);
    }
    if hist.iter().filter(|&&c| c > 0).count() < 2 {
        return Err(ImagingError::DegenerateImage);
    }
    let sum_all: f64 = hist
        .iter()
        .enumerate()
        .map(|(v, &c)| v as f64 * c as f64)
        .sum();
    let total_f = total as f64;

    let mut best_t = 0u8;
    let mut best_var = f64::NEG_INFINITY;
    let mut count0 = 0u64;
    let mut sum0 = 0f64;
    for t in 0..255usize {
        count0 += hist[t];
        sum0 += t as f64 * hist[t] as f64;
        let count1 = total - count0;
        if count0 == 0 || count1 == 0 {
            continue;
        }
        // (s0*n1 - s1*n0)^2 / (n0*n1) is proportional to the between-class variance
        let n0 = count0 as f64;
        let n1 = count1 as f64;
        let diff = sum0 * n1 - (sum_all - sum0) * n0;
        let var = diff * diff / (n0 * n1) / (total_f * total_f);
        if var > best_var {
            best_var = var;
            best_t = t as u8;
        }
    }
    Ok(best_t)
}

/// Pixels `<= threshold` become foreground (1), brighter pixels background (0).
pub fn binarize(img: &GrayImage, threshold: u8) -> BinaryMatrix {
    BinaryMatrix::from_fn(img.width(), img.height(), |x, y| img.get(x, y) <= threshold)
}

/// Otsu threshold followed by binarization. A uniform image has no foreground.
pub fn foreground(img: &RgbaImage) -> BinaryMatrix {
    let gray = to_gray(img);
    match otsu_threshold(&gray) {
        Ok(t) => binarize(&gray, t),
        Err(_) => BinaryMatrix::zeros(img.width(), img.height()),
    }
}
