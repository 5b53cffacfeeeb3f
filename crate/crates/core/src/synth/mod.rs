//! Ground-truth targets and distortion metrics.
//!
//! Targets are rendered directly in fisheye-image space through the forward
//! equidistant model, so a correction run on them can be checked against an
//! exactly known scene.

mod metrics;
mod render;
mod trace;

pub use metrics::{estimate_big_r0, straightness_residual};
pub use render::{checker_plane_coords, checker_value_at, render, render_checker, render_rings, ring_value_at};
pub use trace::{dark_band_centers, trace_checker_chains, CheckerChain, LineFamily};

use std::str::FromStr;

use crate::error::{argument, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// Concentric rings equally spaced in field angle.
    Rings,
    /// A frontal planar checkerboard.
    Checker,
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rings" => Ok(Pattern::Rings),
            "checker" => Ok(Pattern::Checker),
            other => Err(argument(format!("unknown pattern {other:?}"))),
        }
    }
}

/// Parameters of a synthetic target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetSpec {
    pub pattern: Pattern,
    /// Number of rings; ring `k` sits at radius `k·R₀/rings`.
    pub rings: usize,
    /// Ring thickness in fisheye-image pixels.
    pub ring_thickness: f64,
    /// Checker cells per focal length on the wall plane. With
    /// `wall_distance = 1` this is the number of cells between the axis and
    /// the 45° ray along each half-axis.
    pub checker_cells: usize,
    /// Wall distance in units of the rectilinear focal length `2R₀/π`.
    pub wall_distance: f64,
    /// Samples per pixel side used for anti-aliasing.
    pub supersample: usize,
}

impl Default for TargetSpec {
    fn default() -> Self {
        Self {
            pattern: Pattern::Checker,
            rings: 8,
            ring_thickness: 4.0,
            checker_cells: 8,
            wall_distance: 1.0,
            supersample: 4,
        }
    }
}

impl TargetSpec {
    pub fn rings(count: usize) -> Self {
        Self { pattern: Pattern::Rings, rings: count, ..Self::default() }
    }

    pub fn checker(cells: usize, wall_distance: f64) -> Self {
        Self { pattern: Pattern::Checker, checker_cells: cells, wall_distance, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rings == 0 || self.checker_cells == 0 || self.supersample == 0 {
            return Err(argument("ring, cell and supersample counts must be at least 1"));
        }
        if !(self.ring_thickness >= 1.0 && self.ring_thickness.is_finite()) {
            return Err(argument(format!("ring thickness must be >= 1 px, got {}", self.ring_thickness)));
        }
        if !(self.wall_distance > 0.0 && self.wall_distance.is_finite()) {
            return Err(argument(format!("wall distance must be positive, got {}", self.wall_distance)));
        }
        Ok(())
    }
}
