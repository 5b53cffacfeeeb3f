//! Sub-pixel tracing of target features in corrected images.

use std::collections::BTreeMap;

use super::{checker_plane_coords, TargetSpec};
use crate::error::{argument, Result};
use crate::image::ImageBuffer;
use crate::model::PlanePoint;
use crate::warp::WarpConfig;

/// Half-width of the scan window around a predicted boundary, in pixels.
const WINDOW: usize = 6;

/// Minimum step between the two sides of a boundary, in gray levels.
const MIN_CONTRAST: f64 = 128.0;

/// Which family of checker lines a chain belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineFamily {
    /// Lines of constant wall-plane X.
    ConstX,
    /// Lines of constant wall-plane Y.
    ConstY,
}

/// Measured points along one straight cell-boundary line of the checker wall.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckerChain {
    pub family: LineFamily,
    /// The line is at plane coordinate `index / checker_cells`.
    pub index: i64,
    /// Continuous output-image coordinates.
    pub points: Vec<[f64; 2]>,
}

impl CheckerChain {
    /// Mean point position.
    pub fn centroid(&self) -> [f64; 2] {
        let n = self.points.len() as f64;
        let sx: f64 = self.points.iter().map(|p| p[0]).sum();
        let sy: f64 = self.points.iter().map(|p| p[1]).sum();
        [sx / n, sy / n]
    }
}

/// Per-output-pixel wall coordinates in cell units; NaN where the pixel does
/// not see the wall.
struct CellField {
    width: usize,
    height: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl CellField {
    fn new(cfg: &WarpConfig, spec: &TargetSpec) -> Result<Self> {
        let (w, h) = (cfg.out_width, cfg.out_height);
        let (cx, cy) = (w as f64 / 2.0, h as f64 / 2.0);
        let n = spec.checker_cells as f64;
        let mut a = vec![f64::NAN; w * h];
        let mut b = vec![f64::NAN; w * h];
        for j in 0..h {
            for i in 0..w {
                let pt = PlanePoint::new(i as f64 + 0.5 - cx, j as f64 + 0.5 - cy);
                let s = cfg.mode.plane_to_source(pt, &cfg.cam)?;
                if let Some((px, py)) = checker_plane_coords(spec, &cfg.cam, s.x, s.y) {
                    a[j * w + i] = px * n;
                    b[j * w + i] = py * n;
                }
            }
        }
        Ok(Self { width: w, height: h, a, b })
    }
}

/// A 2-D scalar view that can be read transposed.
struct View<'a> {
    data: &'a [f64],
    width: usize,
    transposed: bool,
}

impl View<'_> {
    #[inline]
    fn at(&self, line: usize, pos: usize) -> f64 {
        if self.transposed {
            self.data[pos * self.width + line]
        } else {
            self.data[line * self.width + pos]
        }
    }
}

/// Traces every checker boundary visible in `warped`, the correction of a
/// [`render_checker`](super::render_checker) target with `spec`, warped by
/// `cfg`.
///
/// The model predicts where each wall line crosses each image row (and
/// column); the crossing is then measured from the image alone by the area
/// under the normalized edge profile in a window around the prediction.
/// Crossings are kept only where the window holds exactly one boundary of
/// the scanned family and none of the other, the scan runs across the line
/// rather than along it, and both sides show full checker contrast.
pub fn trace_checker_chains(warped: &ImageBuffer, cfg: &WarpConfig, spec: &TargetSpec) -> Result<Vec<CheckerChain>> {
    spec.validate()?;
    if warped.width() != cfg.out_width || warped.height() != cfg.out_height {
        return Err(argument(format!(
            "image is {}x{} but the configuration produces {}x{}",
            warped.width(),
            warped.height(),
            cfg.out_width,
            cfg.out_height
        )));
    }
    let field = CellField::new(cfg, spec)?;
    let ch = warped.channels() as f64;
    let gray: Vec<f64> =
        warped.data().chunks_exact(warped.channels()).map(|p| p.iter().map(|&v| v as f64).sum::<f64>() / ch).collect();

    let mut chains: BTreeMap<(LineFamily, i64), Vec<[f64; 2]>> = BTreeMap::new();
    for transposed in [false, true] {
        for family in [LineFamily::ConstX, LineFamily::ConstY] {
            let (own, other) = match family {
                LineFamily::ConstX => (&field.a, &field.b),
                LineFamily::ConstY => (&field.b, &field.a),
            };
            let view = |data| View { data, width: field.width, transposed };
            scan(
                &view(own),
                &view(other),
                &view(&gray),
                if transposed { (field.width, field.height) } else { (field.height, field.width) },
                |line, pos, index| {
                    let pt = if transposed { [line as f64 + 0.5, pos] } else { [pos, line as f64 + 0.5] };
                    chains.entry((family, index)).or_default().push(pt);
                },
            );
        }
    }
    Ok(chains.into_iter().map(|((family, index), points)| CheckerChain { family, index, points }).collect())
}

/// Scans every line of `own` (length `len`) for boundary crossings.
fn scan(own: &View, other: &View, img: &View, (lines, len): (usize, usize), mut emit: impl FnMut(usize, f64, i64)) {
    let k = WINDOW;
    if lines < 2 * k + 1 || len < 2 * k + 2 {
        return;
    }
    for line in k..lines - k {
        for pos in k..len - k - 1 {
            let (u0, u1) = (own.at(line, pos), own.at(line, pos + 1));
            if !(u0.is_finite() && u1.is_finite()) || u0.floor() == u1.floor() {
                continue;
            }
            // Scan direction must run across the line.
            let along = (u1 - u0).abs();
            let across = (own.at(line + 1, pos) - own.at(line - 1, pos)).abs() / 2.0;
            if across.is_nan() || along < across {
                continue;
            }
            if !window_is_clean(own, other, line, pos) {
                continue;
            }
            let (lo_pos, hi_pos) = (pos - k, pos + k + 1);
            let first = img.at(line, lo_pos);
            let last = img.at(line, hi_pos);
            let (lo, hi) = (first.min(last), first.max(last));
            if hi - lo < MIN_CONTRAST {
                continue;
            }
            // Fraction of the window on the bright side locates the edge.
            let bright: f64 = (lo_pos..=hi_pos).map(|p| ((img.at(line, p) - lo) / (hi - lo)).clamp(0.0, 1.0)).sum();
            let offset = if first > last { bright } else { (hi_pos - lo_pos + 1) as f64 - bright };
            let index = u0.floor().max(u1.floor()) as i64;
            emit(line, lo_pos as f64 + offset, index);
        }
    }
}

/// Exactly one boundary of the scanned family crosses every line of the
/// window, and no boundary of the other family enters it.
fn window_is_clean(own: &View, other: &View, line: usize, pos: usize) -> bool {
    let k = WINDOW;
    let reference = other.at(line, pos);
    if !reference.is_finite() {
        return false;
    }
    let cell = reference.floor();
    for l in line - k..=line + k {
        let start = own.at(l, pos - k);
        let end = own.at(l, pos + k + 1);
        if !(start.is_finite() && end.is_finite()) || (end.floor() - start.floor()).abs() != 1.0 {
            return false;
        }
        for p in pos - k..=pos + k + 1 {
            let o = other.at(l, p);
            if !(o.is_finite() && o.floor() == cell) {
                return false;
            }
        }
    }
    true
}

/// Centers of the dark runs along a 1-D gray profile, weighted by darkness,
/// in sample-index units (sample `i` centered at `i + 0.5`). A run is a
/// maximal stretch below `threshold`.
pub fn dark_band_centers(profile: &[f64], threshold: f64) -> Vec<f64> {
    let mut centers = Vec::new();
    let mut i = 0;
    while i < profile.len() {
        if profile[i] >= threshold {
            i += 1;
            continue;
        }
        let start = i;
        while i < profile.len() && profile[i] < threshold {
            i += 1;
        }
        // Include one neighbor on each side so partial coverage counts.
        let lo = start.saturating_sub(1);
        let hi = (i + 1).min(profile.len());
        let (mut mass, mut moment) = (0.0, 0.0);
        for (p, v) in profile.iter().enumerate().take(hi).skip(lo) {
            let d = (255.0 - v).max(0.0);
            mass += d;
            moment += d * (p as f64 + 0.5);
        }
        if mass > 0.0 {
            centers.push(moment / mass);
        }
    }
    centers
}
