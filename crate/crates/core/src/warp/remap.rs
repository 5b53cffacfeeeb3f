use rayon::prelude::*;

use super::interp::sample_into;
use super::{build_lut, Interpolation, Lut, WarpConfig};
use crate::error::{argument, Result};
use crate::image::ImageBuffer;

/// Resamples `src` through `lut`. Sentinel entries produce 0 in every channel.
///
/// Every non-sentinel coordinate must lie within the source raster extended
/// by the kernel support; tables built for a different source size fail here.
pub fn remap(src: &ImageBuffer, lut: &Lut, interp: Interpolation) -> Result<ImageBuffer> {
    let ch = src.channels();
    let margin = interp.support().max(1.0);
    let (lo_x, hi_x) = (-margin, src.width() as f64 + margin);
    let (lo_y, hi_y) = (-margin, src.height() as f64 + margin);

    let mut out = ImageBuffer::new(lut.width(), lut.height(), ch)?;
    let stride = out.stride();
    out.data_mut().par_chunks_mut(stride).zip(lut.entries().par_chunks(lut.width())).try_for_each(
        |(row, entries)| -> Result<()> {
            for (px, e) in row.chunks_exact_mut(ch).zip(entries) {
                if e[0].is_nan() {
                    continue;
                }
                let (x, y) = (e[0] as f64, e[1] as f64);
                if !(x >= lo_x && x <= hi_x && y >= lo_y && y <= hi_y) {
                    return Err(argument(format!(
                        "LUT coordinate ({x}, {y}) lies outside the {}x{} source",
                        src.width(),
                        src.height()
                    )));
                }
                sample_into(src, x, y, interp, px);
            }
            Ok(())
        },
    )?;
    Ok(out)
}

/// Builds the table for `cfg` and applies it once.
pub fn warp(src: &ImageBuffer, cfg: &WarpConfig) -> Result<ImageBuffer> {
    let lut = build_lut(cfg, src.width(), src.height())?;
    remap(src, &lut, cfg.interp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(ch: usize) -> ImageBuffer {
        let data = (0..7 * 5 * ch).map(|k| (k * 37 % 251) as u8).collect();
        ImageBuffer::from_raw(7, 5, ch, data).unwrap()
    }

    #[test]
    fn identity_lut_is_lossless() {
        for ch in [1, 3] {
            let src = pattern(ch);
            let lut = Lut::identity(7, 5).unwrap();
            for interp in Interpolation::ALL {
                assert_eq!(remap(&src, &lut, interp).unwrap(), src);
            }
        }
    }

    #[test]
    fn all_sentinel_is_black() {
        let src = pattern(3);
        let out = remap(&src, &Lut::all_sentinel(4, 9).unwrap(), Interpolation::Bicubic).unwrap();
        assert_eq!((out.width(), out.height(), out.channels()), (4, 9, 3));
        assert!(out.data().iter().all(|&v| v == 0));
    }

    #[test]
    fn rejects_foreign_lut() {
        let src = pattern(1);
        let lut = Lut::from_entries(1, 1, vec![[50.0, 1.0]]).unwrap();
        assert!(matches!(remap(&src, &lut, Interpolation::Bilinear), Err(crate::Error::Argument(_))));
    }
}
