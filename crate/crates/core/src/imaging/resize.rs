use super::RgbaImage;

/// Resamples each channel independently to `w` x `h`.
///
/// Axes that shrink use area averaging (fractional box filter); axes that grow
/// use bilinear interpolation with pixel-centre alignment and edge clamping.
/// Results are rounded half-up.
pub fn resize_area(img: &RgbaImage, w: u32, h: u32) -> RgbaImage {
    assert!(w >= 1 && h >= 1, "target size must be positive");
    if img.dimensions() == (w, h) {
        return img.clone();
    }
    assert!(
        img.width() >= 1 && img.height() >= 1,
        "source image is empty"
    );
    let xw = axis_weights(img.width() as usize, w as usize);
    let yw = axis_weights(img.height() as usize, h as usize);
    let (sw, sh) = (img.width() as usize, img.height() as usize);
    let src = img.as_raw();

    // horizontal pass: sh rows x w columns x 4 channels
    let mut tmp = vec![0.0f64; sh * w as usize * 4];
    for y in 0..sh {
        for (ox, taps) in xw.iter().enumerate() {
            for &(sx, wt) in taps {
                let s = (y * sw + sx) * 4;
                let d = (y * w as usize + ox) * 4;
                for c in 0..4 {
                    tmp[d + c] += wt * src[s + c] as f64;
                }
            }
        }
    }
    let mut out = vec![0u8; w as usize * h as usize * 4];
    for (oy, taps) in yw.iter().enumerate() {
        for ox in 0..w as usize {
            let mut acc = [0.0f64; 4];
            for &(sy, wt) in taps {
                let s = (sy * w as usize + ox) * 4;
                for c in 0..4 {
                    acc[c] += wt * tmp[s + c];
                }
            }
            let d = (oy * w as usize + ox) * 4;
            for c in 0..4 {
                // tolerate accumulated error just below a .5 boundary
                out[d + c] = (acc[c] + 0.5 + 1e-9).floor().clamp(0.0, 255.0) as u8;
            }
        }
    }
    RgbaImage::from_raw(w, h, out).expect("sized above")
}

/// Per output index, the (source index, weight) taps along one axis.
fn axis_weights(src: usize, dst: usize) -> Vec<Vec<(usize, f64)>> {
    if dst == src {
        return (0..dst).map(|i| vec![(i, 1.0)]).collect();
    }
    if dst < src {
        let scale = src as f64 / dst as f64;
        (0..dst)
            .map(|i| {
                let start = i as f64 * scale;
                let end = start + scale;
                let mut taps = Vec::new();
                let mut s = start.floor() as usize;
                while (s as f64) < end && s < src {
                    let overlap = (end.min(s as f64 + 1.0) - start.max(s as f64)).max(0.0);
                    if overlap > 0.0 {
                        taps.push((s, overlap / scale));
                    }
                    s += 1;
                }
                taps
            })
            .collect()
    } else {
        let scale = src as f64 / dst as f64;
        (0..dst)
            .map(|i| {
                let pos = ((i as f64 + 0.5) * scale - 0.5).clamp(0.0, (src - 1) as f64);
                let lo = pos.floor() as usize;
                let frac = pos - lo as f64;
                if frac == 0.0 || lo + 1 >= src {
                    vec![(lo, 1.0)]
                } else {
                    vec![(lo, 1.0 - frac), (lo + 1, frac)]
                }
            })
            .collect()
    }
}
