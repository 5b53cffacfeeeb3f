//! Radial mapping functions for equidistant fisheye correction.
//!
//! Every map here is an inverse map: it takes a point on the corrected
//! output plane and returns where that point samples the fisheye source.
//! Coordinates are in pixels with the origin at the image center.
//!
//! Three pipelines are provided (see [`Mode`]):
//!
//! * `Simple` scales by the exact equidistant rectification
//!   `f(r) = (2R₀/πr)·atan(πr/2R₀)`, i.e. a full perspective re-projection.
//! * `Modified` scales by the wide-angle variant `F(r)`, which keeps the
//!   center untouched and sends the radius `2R₀` to the 90° rim.
//! * `Full` first deforms the square canvas `[-2R₀, 2R₀]²` so that its
//!   boundary pulls back onto the circle of radius `2R₀`, then applies `F`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Result};

/// Below this `r/R₀` the removable singularity at the origin is handled by
/// a second order series.
const SERIES_CUTOFF: f64 = 1e-4;

/// Above this `p` the exponent `1 + tan(πp/2)` is treated as infinite.
const PROFILE_LIMIT_CUTOFF: f64 = 1.0 - 1e-6;

/// Slack allowed on the `[-2R₀, 2R₀]²` canvas test for rounding in callers.
const CANVAS_SLACK: f64 = 1e-12;

/// Lens calibration: `R₀` is the source radius (pixels) of rays 90° off
/// the optical axis; `r₀ = R₀/2` is the radius of the 45° circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraModel {
    big_r0: f64,
}

impl CameraModel {
    /// Builds a model from the rim radius `R₀`.
    pub fn new(big_r0: f64) -> Result<Self> {
        if !(big_r0.is_finite() && big_r0 > 0.0) {
            return Err(domain(format!("R0 must be positive and finite, got {big_r0}")));
        }
        Ok(Self { big_r0 })
    }

    /// Builds a model from the 45° radius `r₀`.
    pub fn from_r0(r0: f64) -> Result<Self> {
        Self::new(2.0 * r0)
    }

    pub fn big_r0(&self) -> f64 {
        self.big_r0
    }

    pub fn r0(&self) -> f64 {
        self.big_r0 / 2.0
    }
}

macro_rules! point_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Default)]
        pub struct $name {
            pub x: f64,
            pub y: f64,
        }

        impl $name {
            pub const ORIGIN: Self = Self { x: 0.0, y: 0.0 };

            pub fn new(x: f64, y: f64) -> Self {
                Self { x, y }
            }

            /// Distance from the image center.
            pub fn radius(&self) -> f64 {
                self.x.hypot(self.y)
            }

            #[allow(dead_code)]
            fn scaled(x: f64, y: f64, k: f64) -> Self {
                Self { x: x * k, y: y * k }
            }
        }

        impl From<(f64, f64)> for $name {
            fn from((x, y): (f64, f64)) -> Self {
                Self { x, y }
            }
        }
    };
}

point_type!(
    /// A point on the corrected output plane.
    PlanePoint
);
point_type!(
    /// A point after the circle-to-square deformation, before radial rectification.
    IntermediatePoint
);
point_type!(
    /// A point on the fisheye source image.
    SourcePoint
);

/// Correction pipeline selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Exact equidistant rectification.
    Simple,
    /// Wide-angle mapping function only.
    Modified,
    /// Circle-to-square deformation followed by the wide-angle mapping.
    Full,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Simple, Mode::Modified, Mode::Full];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Simple => "simple",
            Mode::Modified => "modified",
            Mode::Full => "full",
        }
    }

    /// Output side relative to the source side when none is given.
    pub fn default_scale(&self) -> f64 {
        match self {
            Mode::Simple => 1.0,
            Mode::Modified | Mode::Full => 2.0,
        }
    }

    /// Applies this mode's plane-to-source map.
    pub fn plane_to_source(&self, pt: PlanePoint, cam: &CameraModel) -> Result<SourcePoint> {
        match self {
            Mode::Simple => Ok(plane_to_source_simple(pt, cam)),
            Mode::Modified => plane_to_source_modified(pt, cam),
            Mode::Full => plane_to_source_full(pt, cam),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(Mode::Simple),
            "modified" => Ok(Mode::Modified),
            "full" => Ok(Mode::Full),
            other => Err(crate::error::argument(format!("unknown mode {other:?}"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("radius must be finite and non-negative, got {r}")))
    }
}

/// Exact equidistant rectification scale `f(r) = (2R₀/πr)·atan(πr/2R₀)`.
///
/// `r·f(r)` is the source radius seen from output radius `r`; it tends to
/// `R₀` as `r → ∞` and has unit slope at the origin.
pub fn rectify_scale(r: f64, cam: &CameraModel) -> Result<f64> {
    check_radius(r)?;
    let big_r0 = cam.big_r0;
    if r < SERIES_CUTOFF * big_r0 {
        let a = FRAC_PI_2 * r / big_r0;
        return Ok(1.0 - a * a / 3.0);
    }
    let a = FRAC_PI_2 * r / big_r0;
    Ok(a.atan() / a)
}

/// Step function: 0 for `x ≤ 0`, 1 for `x > 0`.
pub fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Wide-angle mapping scale
/// `F(r) = (2R₀/πr)·atan(4πR₀²r / (8R₀³ − r³)) + (2R₀/r)·Θ(r/2R₀ − 1)`.
///
/// The step term removes the branch jump of `atan` where the denominator
/// changes sign, so `F` is continuous with `F(2R₀) = 1/2`.
pub fn modified_scale(r: f64, cam: &CameraModel) -> Result<f64> {
    check_radius(r)?;
    let big_r0 = cam.big_r0;
    if r < SERIES_CUTOFF * big_r0 {
        // The cubic in the denominator adds (r/R₀)³/8 to the simple series.
        let a = FRAC_PI_2 * r / big_r0;
        let rho = r / big_r0;
        return Ok(1.0 - a * a / 3.0 + rho * rho * rho / 8.0);
    }
    let two_r0 = 2.0 * big_r0;
    if r == two_r0 {
        return Ok(0.5);
    }
    // 8R₀³ − r³ factored to keep precision near the seam.
    let denom = (two_r0 - r) * (two_r0 * two_r0 + two_r0 * r + r * r);
    let arg = 4.0 * PI * big_r0 * big_r0 * r / denom;
    let base = two_r0 / (PI * r) * arg.atan();
    Ok(base + two_r0 / r * heaviside(r / two_r0 - 1.0))
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(domain(format!("{name} must lie in [0, 1], got {x}")))
    }
}

/// Superellipse profile
/// `S(h, v, p) = 1 − (h^e + v^e)^(3/(2e))` with `e = 1 + tan(πp/2)`.
///
/// The exponent grows without bound as `p → 1`; the power mean is evaluated
/// in max-normalized form so it reaches the `1 − max(h, v)^(3/2)` limit
/// without underflow, and that limit is used directly once
/// `p ≥ 1 − 10⁻⁶`.
pub fn square_profile(h: f64, v: f64, p: f64) -> Result<f64> {
    check_unit("h", h)?;
    check_unit("v", v)?;
    check_unit("p", p)?;
    let (hi, lo) = if h >= v { (h, v) } else { (v, h) };
    if hi == 0.0 {
        return Ok(1.0);
    }
    if p >= PROFILE_LIMIT_CUTOFF {
        return Ok(1.0 - hi.powf(1.5));
    }
    let e = 1.0 + (FRAC_PI_2 * p).tan();
    // (hi^e + lo^e)^(1/e) = hi · (1 + (lo/hi)^e)^(1/e)
    let mean = hi * (1.0 + (lo / hi).powf(e)).powf(1.0 / e);
    Ok(1.0 - mean.powf(1.5))
}

/// Radial gain of the circle-to-square deformation, `G(w, z)`.
///
/// Evaluated as `√((1 + √(1 − u)) / 2)` with `u = 8wc/(1 + c)` and
/// `c = cos(πz/2)`, which is the closed form of the original ratio and has
/// no `0/0` at `w → 0` or `c → 0`.
pub fn square_gain(w: f64, z: f64) -> Result<f64> {
    if !(0.0..=0.25).contains(&w) {
        return Err(domain(format!("w must lie in [0, 1/4], got {w}")));
    }
    if !z.is_finite() {
        return Err(domain(format!("z must be finite, got {z}")));
    }
    let c = (FRAC_PI_2 * z).cos();
    if c < -1e-12 {
        return Err(domain(format!("cos(pi*z/2) must be non-negative, got {c} for z = {z}")));
    }
    let c = c.max(0.0);
    let u = 8.0 * w * c / (1.0 + c);
    Ok(((1.0 + (1.0 - u).max(0.0).sqrt()) / 2.0).sqrt())
}

/// Inputs of the circle-to-square deformation at one plane point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareDeformInputs {
    /// `x²y²/r⁴`, in `[0, 1/4]`.
    pub w: f64,
    /// `x²/4R₀²`
    pub h: f64,
    /// `y²/4R₀²`
    pub v: f64,
    /// `r²/8R₀²`
    pub p: f64,
}

impl SquareDeformInputs {
    /// Computes the deformation inputs; the origin is not a valid argument.
    pub fn at(pt: PlanePoint, cam: &CameraModel) -> Self {
        let x2 = pt.x * pt.x;
        let y2 = pt.y * pt.y;
        let r2 = x2 + y2;
        let four_r0_sq = 4.0 * cam.big_r0 * cam.big_r0;
        Self {
            w: ((x2 / r2) * (y2 / r2)).clamp(0.0, 0.25),
            h: (x2 / four_r0_sq).min(1.0),
            v: (y2 / four_r0_sq).min(1.0),
            p: (r2 / (2.0 * four_r0_sq)).min(1.0),
        }
    }

    /// The profile value `S(h, v, p)` fed to the gain as `z`.
    pub fn profile(&self) -> Result<f64> {
        square_profile(self.h, self.v, self.p)
    }

    /// The radial gain `G(w, S(h, v, p))`.
    pub fn gain(&self) -> Result<f64> {
        square_gain(self.w, self.profile()?)
    }
}

/// True when `pt` lies in the `[-2R₀, 2R₀]²` canvas of the full pipeline.
pub fn in_full_canvas(pt: PlanePoint, cam: &CameraModel) -> bool {
    let half = 2.0 * cam.big_r0 * (1.0 + CANVAS_SLACK);
    pt.x.abs() <= half && pt.y.abs() <= half
}

/// Circle-to-square deformation: scales `pt` radially by
/// `G(x²y²/r⁴, S(x²/4R₀², y²/4R₀², r²/8R₀²))`.
///
/// Points on either axis are fixed, and the canvas boundary lands on (very
/// nearly) the circle of radius `2R₀`.
pub fn plane_to_intermediate(pt: PlanePoint, cam: &CameraModel) -> Result<IntermediatePoint> {
    if !in_full_canvas(pt, cam) {
        return Err(domain(format!(
            "point ({}, {}) lies outside the [-2R0, 2R0]^2 canvas (R0 = {})",
            pt.x, pt.y, cam.big_r0
        )));
    }
    if pt.x == 0.0 && pt.y == 0.0 {
        return Ok(IntermediatePoint::ORIGIN);
    }
    let gain = SquareDeformInputs::at(pt, cam).gain()?;
    Ok(IntermediatePoint::scaled(pt.x, pt.y, gain))
}

/// Second stage of the full pipeline: scales radially by `F(r_t)`.
pub fn intermediate_to_source(pt: IntermediatePoint, cam: &CameraModel) -> Result<SourcePoint> {
    let r = pt.radius();
    if r == 0.0 {
        return Ok(SourcePoint::ORIGIN);
    }
    let k = modified_scale(r, cam)?;
    Ok(SourcePoint::scaled(pt.x, pt.y, k))
}

/// Exact rectification: `r_s = r_p·f(r_p)`; the result always lies strictly
/// inside the rim.
pub fn plane_to_source_simple(pt: PlanePoint, cam: &CameraModel) -> SourcePoint {
    let r = pt.radius();
    if r == 0.0 {
        return SourcePoint::ORIGIN;
    }
    // Radius is finite and non-negative here, so the call cannot fail.
    let k = rectify_scale(r, cam).unwrap_or(0.0);
    SourcePoint::scaled(pt.x, pt.y, k)
}

/// Wide-angle mapping alone: `r_s = r_p·F(r_p)`.
pub fn plane_to_source_modified(pt: PlanePoint, cam: &CameraModel) -> Result<SourcePoint> {
    let r = pt.radius();
    if r == 0.0 {
        return Ok(SourcePoint::ORIGIN);
    }
    let k = modified_scale(r, cam)?;
    Ok(SourcePoint::scaled(pt.x, pt.y, k))
}

/// The two-stage pipeline: deformation then wide-angle mapping.
pub fn plane_to_source_full(pt: PlanePoint, cam: &CameraModel) -> Result<SourcePoint> {
    intermediate_to_source(plane_to_intermediate(pt, cam)?, cam)
}

/// Source radius of a ray `theta` radians off the lens axis.
pub fn forward_equidistant(theta: f64, cam: &CameraModel) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(domain(format!("theta must lie in [0, pi/2], got {theta}")));
    }
    Ok(cam.big_r0 / FRAC_PI_2 * theta)
}

/// Off-axis angle of a source radius; the inverse of [`forward_equidistant`]
/// without range restriction.
pub fn source_angle(radius: f64, cam: &CameraModel) -> f64 {
    FRAC_PI_2 * radius / cam.big_r0
}

/// Full angle of view (degrees) that simple-mode correction shows on a
/// canvas whose radius is `radius_ratio · R₀`.
pub fn fov_of_canvas(radius_ratio: f64) -> Result<f64> {
    if !(radius_ratio.is_finite() && radius_ratio > 0.0) {
        return Err(domain(format!("radius ratio must be positive, got {radius_ratio}")));
    }
    Ok(2.0 * (FRAC_PI_2 * radius_ratio).atan().to_degrees())
}
