use super::{ImagingError, RgbaImage};

/// Draws `src` onto `dest` with its top-left at `offset`, using source-over
/// blending.
///
/// Blending happens in premultiplied space, `res = src + (255 - src_a) / 255 * dest`
/// for every channel including alpha, and the result is converted back to
/// straight alpha for storage. `src` must fit entirely inside `dest`.
pub fn composite_src_over(
    dest: &RgbaImage,
    src: &RgbaImage,
    offset: (i32, i32),
) -> Result<RgbaImage, ImagingError> {
    let mut out = dest.clone();
    composite_in_place(&mut out, src, offset)?;
    Ok(out)
}

pub(crate) fn composite_in_place(
    dest: &mut RgbaImage,
    src: &RgbaImage,
    (ox, oy): (i32, i32),
) -> Result<(), ImagingError> {
    if ox < 0
        || oy < 0
        || ox as i64 + src.width() as i64 > dest.width() as i64
        || oy as i64 + src.height() as i64 > dest.height() as i64
    {
        return Err(ImagingError::OutOfBounds {
            offset: (ox, oy),
            src: src.dimensions(),
            dest: dest.dimensions(),
        });
    }
    for y in 0..src.height() {
        for x in 0..src.width() {
            let s = src.get(x, y);
            let (dx, dy) = (ox as u32 + x, oy as u32 + y);
            let blended = match s[3] {
                255 => s,
                0 => continue,
                _ => blend_pixel(dest.get(dx, dy), s),
            };
            dest.put(dx, dy, blended);
        }
    }
    Ok(())
}

#[inline]
fn blend_pixel(d: [u8; 4], s: [u8; 4]) -> [u8; 4] {
    let sa = s[3] as f64;
    let da = d[3] as f64;
    let keep = (255.0 - sa) / 255.0;
    let out_a = sa + keep * da;
    if out_a <= 0.0 {
        return [0, 0, 0, 0];
    }
    let mut out = [0u8; 4];
    for c in 0..3 {
        let src_p = s[c] as f64 * sa / 255.0;
        let dst_p = d[c] as f64 * da / 255.0;
        let res_p = src_p + keep * dst_p;
        out[c] = to_u8(res_p * 255.0 / out_a);
    }
    out[3] = to_u8(out_a);
    out
}

#[inline]
fn to_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}
