use std::fmt;
use std::str::FromStr;

use crate::error::{argument, Error, Result};
use crate::model::{CameraModel, Mode};

/// Resampling kernel used by [`remap`](super::remap).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Interpolation {
    Nearest,
    #[default]
    Bilinear,
    /// Catmull-Rom cubic over a 4×4 neighborhood.
    Bicubic,
}

impl Interpolation {
    pub const ALL: [Interpolation; 3] = [Interpolation::Nearest, Interpolation::Bilinear, Interpolation::Bicubic];

    /// Pixels of border the kernel reaches beyond the sample point.
    pub fn support(&self) -> f64 {
        match self {
            Interpolation::Nearest => 0.0,
            Interpolation::Bilinear => 1.0,
            Interpolation::Bicubic => 2.0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Interpolation::Nearest => "nearest",
            Interpolation::Bilinear => "bilinear",
            Interpolation::Bicubic => "bicubic",
        }
    }
}

impl FromStr for Interpolation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nearest" => Ok(Interpolation::Nearest),
            "bilinear" => Ok(Interpolation::Bilinear),
            "bicubic" => Ok(Interpolation::Bicubic),
            other => Err(argument(format!("unknown interpolation {other:?}"))),
        }
    }
}

impl fmt::Display for Interpolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything needed to build a lookup table.
///
/// The output plane is measured in source pixels: `scale` only sets how many
/// of them the output holds (`out = scale × src` per side), so the center of
/// the corrected image keeps the source resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WarpConfig {
    pub mode: Mode,
    pub scale: f64,
    pub interp: Interpolation,
    pub cam: CameraModel,
    pub out_width: usize,
    pub out_height: usize,
}

impl WarpConfig {
    /// Sizes the output from the source dimensions and `scale`, falling back
    /// to the mode's default scale (1 for simple, 2 otherwise).
    pub fn for_source(
        mode: Mode,
        cam: CameraModel,
        scale: Option<f64>,
        src_width: usize,
        src_height: usize,
    ) -> Result<Self> {
        let scale = scale.unwrap_or_else(|| mode.default_scale());
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::Config(format!("scale must be positive, got {scale}")));
        }
        let cfg = Self {
            mode,
            scale,
            interp: Interpolation::default(),
            cam,
            out_width: (scale * src_width as f64).round() as usize,
            out_height: (scale * src_height as f64).round() as usize,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Explicit output size; `scale` is recorded as 1.
    pub fn with_output_size(mode: Mode, cam: CameraModel, out_width: usize, out_height: usize) -> Result<Self> {
        let cfg = Self { mode, scale: 1.0, interp: Interpolation::default(), cam, out_width, out_height };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn interp(mut self, interp: Interpolation) -> Self {
        self.interp = interp;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::Config(format!("scale must be positive, got {}", self.scale)));
        }
        if self.out_width == 0 || self.out_height == 0 {
            return Err(Error::Config(format!(
                "output must be at least 1x1, got {}x{}",
                self.out_width, self.out_height
            )));
        }
        if self.mode == Mode::Full {
            let limit = 2.0 * self.cam.big_r0() * (1.0 + 1e-12);
            let half_w = self.out_width as f64 / 2.0;
            let half_h = self.out_height as f64 / 2.0;
            if half_w > limit || half_h > limit {
                return Err(Error::Config(format!(
                    "full mode needs the {}x{} canvas inside [-2R0, 2R0]^2 = {} px per side (R0 = {})",
                    self.out_width,
                    self.out_height,
                    4.0 * self.cam.big_r0(),
                    self.cam.big_r0()
                )));
            }
        }
        Ok(())
    }
}
