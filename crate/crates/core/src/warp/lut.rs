use rayon::prelude::*;

use super::WarpConfig;
use crate::error::{argument, Result};
use crate::model::PlanePoint;

/// Per-output-pixel source coordinates.
///
/// Entries are continuous source coordinates (pixel `(i, j)` centered at
/// `(i + 0.5, j + 0.5)`). Out-of-range pixels hold NaN in both components.
#[derive(Debug, Clone, PartialEq)]
pub struct Lut {
    width: usize,
    height: usize,
    entries: Vec<[f32; 2]>,
}

const SENTINEL: [f32; 2] = [f32::NAN, f32::NAN];

impl Lut {
    /// Wraps raw entries; any entry with a NaN component becomes the sentinel.
    pub fn from_entries(width: usize, height: usize, mut entries: Vec<[f32; 2]>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(argument(format!("LUT dimensions must be positive, got {width}x{height}")));
        }
        if entries.len() != width * height {
            return Err(argument(format!(
                "{width}x{height} LUT needs {} entries, got {}",
                width * height,
                entries.len()
            )));
        }
        for e in &mut entries {
            if e[0].is_nan() || e[1].is_nan() {
                *e = SENTINEL;
            }
        }
        Ok(Self { width, height, entries })
    }

    /// Table that samples every pixel of a `width × height` image at its own center.
    pub fn identity(width: usize, height: usize) -> Result<Self> {
        let entries = (0..height).flat_map(|j| (0..width).map(move |i| [i as f32 + 0.5, j as f32 + 0.5])).collect();
        Self::from_entries(width, height, entries)
    }

    /// Table with every entry out of range.
    pub fn all_sentinel(width: usize, height: usize) -> Result<Self> {
        Self::from_entries(width, height, vec![SENTINEL; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Raw entries in row-major order, sentinel as NaN.
    pub fn entries(&self) -> &[[f32; 2]] {
        &self.entries
    }

    /// Source coordinate for output pixel `(i, j)`, or `None` when out of range.
    pub fn get(&self, i: usize, j: usize) -> Option<[f32; 2]> {
        let e = self.entries[j * self.width + i];
        (!e[0].is_nan()).then_some(e)
    }

    pub fn sentinel_count(&self) -> usize {
        self.entries.iter().filter(|e| e[0].is_nan()).count()
    }
}

/// Evaluates the configured map at every output pixel center.
///
/// The output canvas is centered on the plane origin and measured in source
/// pixels. A source point outside the raster rectangle `[0, w] × [0, h]`
/// yields the sentinel; corners of the source beyond the rim stay sampleable.
pub fn build_lut(cfg: &WarpConfig, src_width: usize, src_height: usize) -> Result<Lut> {
    cfg.validate()?;
    if src_width == 0 || src_height == 0 {
        return Err(argument(format!("source must be at least 1x1, got {src_width}x{src_height}")));
    }
    let (w, h) = (cfg.out_width, cfg.out_height);
    let out_cx = w as f64 / 2.0;
    let out_cy = h as f64 / 2.0;
    let src_w = src_width as f64;
    let src_h = src_height as f64;
    let src_cx = src_w / 2.0;
    let src_cy = src_h / 2.0;

    // Every map commutes with flipping the sign of either axis, and pixel
    // `i` sits exactly opposite pixel `w - 1 - i`, so the upper-left quadrant
    // determines the whole table bit for bit.
    let (qw, qh) = (w.div_ceil(2), h.div_ceil(2));
    let mut quadrant = vec![[0.0f64; 2]; qw * qh];
    quadrant.par_chunks_mut(qw).enumerate().try_for_each(|(j, row)| -> Result<()> {
        let y = j as f64 + 0.5 - out_cy;
        for (i, q) in row.iter_mut().enumerate() {
            let s = cfg.mode.plane_to_source(PlanePoint::new(i as f64 + 0.5 - out_cx, y), &cfg.cam)?;
            *q = [s.x, s.y];
        }
        Ok(())
    })?;

    let mut entries = vec![SENTINEL; w * h];
    entries.par_chunks_mut(w).enumerate().for_each(|(j, row)| {
        let (qj, fy) = if j < qh { (j, 1.0) } else { (h - 1 - j, -1.0) };
        let qrow = &quadrant[qj * qw..(qj + 1) * qw];
        for (i, entry) in row.iter_mut().enumerate() {
            let (qi, fx) = if i < qw { (i, 1.0) } else { (w - 1 - i, -1.0) };
            let sx = fx * qrow[qi][0] + src_cx;
            let sy = fy * qrow[qi][1] + src_cy;
            if (0.0..=src_w).contains(&sx) && (0.0..=src_h).contains(&sy) {
                *entry = [sx as f32, sy as f32];
            }
        }
    });
    Lut::from_entries(w, h, entries)
}
