use super::{ImagingError, RgbaImage};

const WINDOW: usize = 11;
const SIGMA: f64 = 1.5;
const C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
const C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

/// Mean SSIM over the three colour channels.
///
/// Each channel uses an 11x11 Gaussian window (sigma 1.5) over the valid
/// region and the usual stabilizers for 8-bit data. Images smaller than the
/// window use the largest odd window that fits. When both images have every
/// colour channel at zero, the alpha channel is compared instead.
pub fn ssim(a: &RgbaImage, b: &RgbaImage) -> Result<f64, ImagingError> {
    if a.dimensions() != b.dimensions() {
        return Err(ImagingError::DimensionMismatch {
            left: a.dimensions(),
            right: b.dimensions(),
        });
    }
    if a.width() == 0 || a.height() == 0 {
        return Err(ImagingError::EmptyImage);
    }
    let (w, h) = (a.width() as usize, a.height() as usize);
    if a.rgb_all_zero() && b.rgb_all_zero() {
        return Ok(ssim_plane(&a.channel(3), &b.channel(3), w, h));
    }
    let total: f64 = (0..3)
        .map(|c| ssim_plane(&a.channel(c), &b.channel(c), w, h))
        .sum();
    Ok(total / 3.0)
}

pub(crate) fn window_size(w: usize, h: usize) -> usize {
    let k = WINDOW.min(w).min(h);
    if k % 2 == 0 {
        k - 1
    } else {
        k
    }
}

pub(crate) fn gaussian_kernel(k: usize) -> Vec<f64> {
    let r = (k / 2) as f64;
    let raw: Vec<f64> = (0..k)
        .map(|i| {
            let d = i as f64 - r;
            (-(d * d) / (2.0 * SIGMA * SIGMA)).exp()
        })
        .collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

/// Separable valid-mode filter: output is (w-k+1) x (h-k+1).
fn filter_valid(src: &[f64], w: usize, h: usize, kernel: &[f64]) -> Vec<f64> {
    let k = kernel.len();
    let (ow, oh) = (w - k + 1, h - k + 1);
    let mut horiz = vec![0.0; ow * h];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        for x in 0..ow {
            horiz[y * ow + x] = kernel.iter().zip(&row[x..x + k]).map(|(g, v)| g * v).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            let mut acc = 0.0;
            for (i, g) in kernel.iter().enumerate() {
                acc += g * horiz[(y + i) * ow + x];
            }
            out[y * ow + x] = acc;
        }
    }
    out
}

fn ssim_plane(a: &[u8], b: &[u8], w: usize, h: usize) -> f64 {
    let kernel = gaussian_kernel(window_size(w, h));
    let fa: Vec<f64> = a.iter().map(|&v| v as f64).collect();
    let fb: Vec<f64> = b.iter().map(|&v| v as f64).collect();
    let aa: Vec<f64> = fa.iter().map(|v| v * v).collect();
    let bb: Vec<f64> = fb.iter().map(|v| v * v).collect();
    let ab: Vec<f64> = fa.iter().zip(&fb).map(|(x, y)| x * y).collect();

    let mu_a = filter_valid(&fa, w, h, &kernel);
    let mu_b = filter_valid(&fb, w, h, &kernel);
    let e_aa = filter_valid(&aa, w, h, &kernel);
    let e_bb = filter_valid(&bb, w, h, &kernel);
    let e_ab = filter_valid(&ab, w, h, &kernel);

    let n = mu_a.len();
    let mut total = 0.0;
    for i in 0..n {
        let (ma, mb) = (mu_a[i], mu_b[i]);
        let va = e_aa[i] - ma * ma;
        let vb = e_bb[i] - mb * mb;
        let cov = e_ab[i] - ma * mb;
        total +=
            ((2.0 * ma * mb + C1) * (2.0 * cov + C2)) / ((ma * ma + mb * mb + C1) * (va + vb + C2));
    }
    total / n as f64
}
