use super::Interpolation;
use crate::error::{argument, Result};
use crate::image::ImageBuffer;

/// Catmull-Rom (tension −0.5) weights for taps at offsets −1, 0, 1, 2 from
/// the sample's left neighbor, `t` being the fractional position in `[0, 1)`.
pub fn catmull_rom_weights(t: f64) -> [f64; 4] {
    let t2 = t * t;
    let t3 = t2 * t;
    [-0.5 * t3 + t2 - 0.5 * t, 1.5 * t3 - 2.5 * t2 + 1.0, -1.5 * t3 + 2.0 * t2 + 0.5 * t, 0.5 * t3 - 0.5 * t2]
}

/// Samples `src` at continuous coordinate `(x, y)`, one value per channel.
///
/// Coordinates outside the raster are clamped to the nearest pixel center.
pub fn interpolate(src: &ImageBuffer, x: f64, y: f64, method: Interpolation) -> Result<Vec<u8>> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(argument(format!("sample coordinate ({x}, {y}) is not finite")));
    }
    let mut out = vec![0; src.channels()];
    sample_into(src, x, y, method, &mut out);
    Ok(out)
}

#[inline]
fn clamp_index(i: isize, len: usize) -> usize {
    i.clamp(0, len as isize - 1) as usize
}

#[inline]
fn to_u8(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Writes the interpolated samples into `out` (length = channel count).
/// `x` and `y` must be finite.
#[inline]
pub(crate) fn sample_into(src: &ImageBuffer, x: f64, y: f64, method: Interpolation, out: &mut [u8]) {
    let w = src.width();
    let h = src.height();
    let ch = src.channels();
    let data = src.data();
    let stride = src.stride();
    // Shift to pixel-index space, where pixel i has its center at i.
    let u = (x - 0.5).clamp(0.0, (w - 1) as f64);
    let v = (y - 0.5).clamp(0.0, (h - 1) as f64);
    match method {
        Interpolation::Nearest => {
            let i = clamp_index(x.floor() as isize, w);
            let j = clamp_index(y.floor() as isize, h);
            let at = j * stride + i * ch;
            out.copy_from_slice(&data[at..at + ch]);
        }
        Interpolation::Bilinear => {
            let i0 = u.floor() as usize;
            let j0 = v.floor() as usize;
            let fx = u - i0 as f64;
            let fy = v - j0 as f64;
            let i1 = (i0 + 1).min(w - 1);
            let j1 = (j0 + 1).min(h - 1);
            let r0 = j0 * stride;
            let r1 = j1 * stride;
            let w00 = (1.0 - fx) * (1.0 - fy);
            let w10 = fx * (1.0 - fy);
            let w01 = (1.0 - fx) * fy;
            let w11 = fx * fy;
            for (c, o) in out.iter_mut().enumerate() {
                let s = w00 * data[r0 + i0 * ch + c] as f64
                    + w10 * data[r0 + i1 * ch + c] as f64
                    + w01 * data[r1 + i0 * ch + c] as f64
                    + w11 * data[r1 + i1 * ch + c] as f64;
                *o = to_u8(s);
            }
        }
        Interpolation::Bicubic => {
            let i0 = u.floor() as isize;
            let j0 = v.floor() as isize;
            let wx = catmull_rom_weights(u - i0 as f64);
            let wy = catmull_rom_weights(v - j0 as f64);
            let cols: [usize; 4] = std::array::from_fn(|k| clamp_index(i0 - 1 + k as isize, w) * ch);
            let rows: [usize; 4] = std::array::from_fn(|k| clamp_index(j0 - 1 + k as isize, h) * stride);
            for (c, o) in out.iter_mut().enumerate() {
                let mut s = 0.0;
                for (ry, &row) in wy.iter().zip(&rows) {
                    let mut acc = 0.0;
                    for (rx, &col) in wx.iter().zip(&cols) {
                        acc += rx * data[row + col + c] as f64;
                    }
                    s += ry * acc;
                }
                *o = to_u8(s);
            }
        }
    }
}
