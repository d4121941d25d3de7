use std::sync::OnceLock;

use rustfft::{num_complex::Complex, FftPlanner};

use super::{to_gray, GrayImage, ImagingError, RgbaImage};

/// Result of sliding a template over a target.
#[derive(Clone, Debug)]
pub struct MatchResult {
    /// Width of the score map, `target.w - template.w + 1`.
    pub width: u32,
    /// Height of the score map, `target.h - template.h + 1`.
    pub height: u32,
    /// Row-major normalized correlation coefficients in [-1, 1].
    pub scores: Vec<f64>,
    /// Top-left of the best window in target coordinates.
    pub best_loc: (u32, u32),
    pub best_score: f64,
}

impl MatchResult {
    pub fn score_at(&self, x: u32, y: u32) -> f64 {
        self.scores[y as usize * self.width as usize + x as usize]
    }
}

/// Normalized cross-coefficient matching (`TM_CCOEFF_NORMED`) on grayscale.
///
/// Scores are computed from exact integer window sums; only the cross term
/// goes through an FFT for large inputs, and it is rounded back to the exact
/// integer it represents. A perfect sub-image match therefore scores 1 up to
/// a final floating-point division, and ties are broken row-major.
pub fn template_match(
    target: &RgbaImage,
    template: &RgbaImage,
) -> Result<MatchResult, ImagingError> {
    Matcher::new(target).match_template(template)
}

/// Reusable matcher for one target image; caches the grayscale conversion,
/// integral images, and the target spectrum across templates.
pub struct Matcher {
    gray: GrayImage,
    sum: Vec<u64>,
    sum_sq: Vec<u64>,
    spectrum: OnceLock<Spectrum>,
}

struct Spectrum {
    fw: usize,
    fh: usize,
    data: Vec<Complex<f64>>,
}

/// Work (window positions x template pixels) above which the FFT path is used.
const DIRECT_LIMIT: u64 = 1 << 22;

impl Matcher {
    pub fn new(target: &RgbaImage) -> Self {
        Self::from_gray(to_gray(target))
    }

    pub fn from_gray(gray: GrayImage) -> Self {
        let (w, h) = (gray.width() as usize, gray.height() as usize);
        let stride = w + 1;
        let mut sum = vec![0u64; stride * (h + 1)];
        let mut sum_sq = vec![0u64; stride * (h + 1)];
        let px = gray.as_raw();
        for y in 0..h {
            let mut row = 0u64;
            let mut row_sq = 0u64;
            for x in 0..w {
                let v = px[y * w + x] as u64;
                row += v;
                row_sq += v * v;
                sum[(y + 1) * stride + x + 1] = sum[y * stride + x + 1] + row;
                sum_sq[(y + 1) * stride + x + 1] = sum_sq[y * stride + x + 1] + row_sq;
            }
        }
        Matcher {
            gray,
            sum,
            sum_sq,
            spectrum: OnceLock::new(),
        }
    }

    fn window(&self, table: &[u64], x: usize, y: usize, w: usize, h: usize) -> u64 {
        let stride = self.gray.width() as usize + 1;
        table[(y + h) * stride + x + w] + table[y * stride + x]
            - table[y * stride + x + w]
            - table[(y + h) * stride + x]
    }

    pub fn match_template(&self, template: &RgbaImage) -> Result<MatchResult, ImagingError> {
        self.match_gray(&to_gray(template))
    }

    pub fn match_gray(&self, tpl: &GrayImage) -> Result<MatchResult, ImagingError> {
        let (tw, th) = (self.gray.width(), self.gray.height());
        let (sw, sh) = (tpl.width(), tpl.height());
        if sw > tw || sh > th {
            return Err(ImagingError::TemplateTooLarge {
                template: (sw, sh),
                target: (tw, th),
            });
        }
        if sw == 0 || sh == 0 {
            return Err(ImagingError::DegenerateTemplate);
        }
        let n = (sw as u64 * sh as u64) as i128;
        let (t_sum, t_sq) = tpl.as_raw().iter().fold((0i128, 0i128), |(s, q), &v| {
            (s + v as i128, q + v as i128 * v as i128)
        });
        let t_var = n * t_sq - t_sum * t_sum;
        if t_var == 0 {
            return Err(ImagingError::DegenerateTemplate);
        }

        let (rw, rh) = ((tw - sw + 1) as usize, (th - sh + 1) as usize);
        let cross = if rw as u64 * rh as u64 * n as u64 <= DIRECT_LIMIT {
            self.cross_direct(tpl, rw, rh)
        } else {
            self.cross_fft(tpl, rw, rh)
        };

        let t_norm = (t_var as f64).sqrt();
        let mut scores = Vec::with_capacity(rw * rh);
        let mut best = (0u32, 0u32);
        let mut best_score = f64::NEG_INFINITY;
        for y in 0..rh {
            for x in 0..rw {
                let s = self.window(&self.sum, x, y, sw as usize, sh as usize) as i128;
                let q = self.window(&self.sum_sq, x, y, sw as usize, sh as usize) as i128;
                let i_var = n * q - s * s;
                let score = if i_var == 0 {
                    0.0
                } else {
                    let num = n * cross[y * rw + x] as i128 - t_sum * s;
                    (num as f64 / (t_norm * (i_var as f64).sqrt())).clamp(-1.0, 1.0)
                };
                if score > best_score {
                    best_score = score;
                    best = (x as u32, y as u32);
                }
                scores.push(score);
            }
        }
        Ok(MatchResult {
            width: rw as u32,
            height: rh as u32,
            scores,
            best_loc: best,
            best_score,
        })
    }

    fn cross_direct(&self, tpl: &GrayImage, rw: usize, rh: usize) -> Vec<u64> {
        let tw = self.gray.width() as usize;
        let (sw, sh) = (tpl.width() as usize, tpl.height() as usize);
        let img = self.gray.as_raw();
        let t = tpl.as_raw();
        let mut out = vec![0u64; rw * rh];
        for y in 0..rh {
            for x in 0..rw {
                let mut acc = 0u64;
                for ty in 0..sh {
                    let irow = &img[(y + ty) * tw + x..(y + ty) * tw + x + sw];
                    let trow = &t[ty * sw..(ty + 1) * sw];
                    acc += irow
                        .iter()
                        .zip(trow)
                        .map(|(&a, &b)| a as u64 * b as u64)
                        .sum::<u64>();
                }
                out[y * rw + x] = acc;
            }
        }
        out
    }

    fn spectrum(&self) -> &Spectrum {
        self.spectrum.get_or_init(|| {
            let (w, h) = (self.gray.width() as usize, self.gray.height() as usize);
            let (fw, fh) = (smooth_size(w), smooth_size(h));
            let mut data = vec![Complex::new(0.0, 0.0); fw * fh];
            for y in 0..h {
                for x in 0..w {
                    data[y * fw + x].re = self.gray.get(x as u32, y as u32) as f64;
                }
            }
            fft2d(&mut data, fw, fh, false);
            Spectrum { fw, fh, data }
        })
    }

    fn cross_fft(&self, tpl: &GrayImage, rw: usize, rh: usize) -> Vec<u64> {
        let spec = self.spectrum();
        let (fw, fh) = (spec.fw, spec.fh);
        let mut t = vec![Complex::new(0.0, 0.0); fw * fh];
        for y in 0..tpl.height() as usize {
            for x in 0..tpl.width() as usize {
                t[y * fw + x].re = tpl.get(x as u32, y as u32) as f64;
            }
        }
        fft2d(&mut t, fw, fh, false);
        // correlation: F(img) * conj(F(tpl))
        for (a, b) in t.iter_mut().zip(&spec.data) {
            *a = b * a.conj();
        }
        fft2d(&mut t, fw, fh, true);
        let scale = 1.0 / (fw * fh) as f64;
        let mut out = Vec::with_capacity(rw * rh);
        for y in 0..rh {
            for x in 0..rw {
                out.push((t[y * fw + x].re * scale).round().max(0.0) as u64);
            }
        }
        out
    }
}

/// Smallest 2-3-5-smooth integer >= n.
fn smooth_size(n: usize) -> usize {
    let mut m = n.max(1);
    loop {
        let mut k = m;
        for p in [2, 3, 5] {
            while k % p == 0 {
                k /= p;
            }
        }
        if k == 1 {
            return m;
        }
        m += 1;
    }
}

fn fft2d(data: &mut [Complex<f64>], w: usize, h: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let (row_fft, col_fft) = if inverse {
        (planner.plan_fft_inverse(w), planner.plan_fft_inverse(h))
    } else {
        (planner.plan_fft_forward(w), planner.plan_fft_forward(h))
    };
    row_fft.process(data);
    let mut col = vec![Complex::new(0.0, 0.0); h * w];
    for y in 0..h {
        for x in 0..w {
            col[x * h + y] = data[y * w + x];
        }
    }
    col_fft.process(&mut col);
    for y in 0..h {
        for x in 0..w {
            data[y * w + x] = col[x * h + y];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn noise(w: u32, h: u32, seed: u64) -> RgbaImage {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        RgbaImage::from_fn(w, h, |_, _| {
            let v: u8 = rng.gen();
            [v, rng.gen(), rng.gen(), 255]
        })
    }

    /// Plain floating-point TM_CCOEFF_NORMED at one location.
    fn ncc_at(img: &GrayImage, tpl: &GrayImage, x: u32, y: u32) -> f64 {
        let n = (tpl.width() * tpl.height()) as f64;
        let mut tm = 0.0;
        let mut im = 0.0;
        for ty in 0..tpl.height() {
            for tx in 0..tpl.width() {
                tm += tpl.get(tx, ty) as f64;
                im += img.get(x + tx, y + ty) as f64;
            }
        }
        tm /= n;
        im /= n;
        let (mut num, mut dt, mut di) = (0.0, 0.0, 0.0);
        for ty in 0..tpl.height() {
            for tx in 0..tpl.width() {
                let a = tpl.get(tx, ty) as f64 - tm;
                let b = img.get(x + tx, y + ty) as f64 - im;
                num += a * b;
                dt += a * a;
                di += b * b;
            }
        }
        if di == 0.0 {
            0.0
        } else {
            num / (dt * di).sqrt()
        }
    }

    #[test]
    fn score_map_dimensions() {
        let target = noise(100, 50, 1);
        let tpl = noise(40, 20, 2);
        let r = template_match(&target, &tpl).unwrap();
        assert_eq!((r.width, r.height), (61, 31));
        assert_eq!(r.scores.len(), 61 * 31);
    }

    #[test]
    fn planted_template_is_found() {
        let target = noise(90, 70, 3);
        let tpl = target
            .crop(&crate::geometry::Rect::new(23, 41, 30, 17))
            .unwrap();
        let r = template_match(&target, &tpl).unwrap();
        assert_eq!(r.best_loc, (23, 41));
        assert!(r.best_score >= 1.0 - 1e-6);
    }

    #[test]
    fn fft_and_direct_agree_with_float_oracle() {
        let target = noise(64, 48, 4);
        let tpl = noise(20, 12, 5);
        let m = Matcher::new(&target);
        let g = to_gray(&tpl);
        let (rw, rh) = (45, 37);
        assert_eq!(m.cross_direct(&g, rw, rh), m.cross_fft(&g, rw, rh));
        let r = m.match_gray(&g).unwrap();
        for &(x, y) in &[(0, 0), (44, 36), (10, 20), (31, 5)] {
            let expect = ncc_at(&m.gray, &g, x, y);
            assert!((r.score_at(x, y) - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_template_is_degenerate() {
        let target = noise(20, 20, 6);
        let tpl = RgbaImage::filled(5, 5, [9, 9, 9, 255]);
        assert_eq!(
            template_match(&target, &tpl).unwrap_err(),
            ImagingError::DegenerateTemplate
        );
    }

    #[test]
    fn oversized_template_is_rejected() {
        let target = noise(10, 10, 7);
        let tpl = noise(11, 4, 8);
        assert!(matches!(
            template_match(&target, &tpl),
            Err(ImagingError::TemplateTooLarge { .. })
        ));
    }

    #[test]
    fn uniform_windows_score_zero() {
        let mut target = RgbaImage::filled(30, 30, [200, 200, 200, 255]);
        let tpl = noise(6, 6, 9);
        for y in 0..6 {
            for x in 0..6 {
                target.put(20 + x, 20 + y, tpl.get(x, y));
            }
        }
        let r = template_match(&target, &tpl).unwrap();
        assert_eq!(r.score_at(0, 0), 0.0);
        assert_eq!(r.best_loc, (20, 20));
    }

    #[test]
    fn smooth_sizes() {
        assert_eq!(smooth_size(1), 1);
        assert_eq!(smooth_size(7), 8);
        assert_eq!(smooth_size(720), 720);
        assert_eq!(smooth_size(721), 729);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let n = rng.gen_range(1..5000);
            assert!(smooth_size(n) >= n);
        }
    }
}
