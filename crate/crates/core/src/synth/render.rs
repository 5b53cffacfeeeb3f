use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use super::{Pattern, TargetSpec};
use crate::error::{argument, Result};
use crate::image::ImageBuffer;
use crate::model::{source_angle, CameraModel};

/// Rays this close to 90° never reach the wall.
const GRAZING: f64 = FRAC_PI_2 * (1.0 - 1e-6);

/// Renders the target selected by `spec.pattern`.
pub fn render(spec: &TargetSpec, cam: &CameraModel, width: usize, height: usize) -> Result<ImageBuffer> {
    match spec.pattern {
        Pattern::Rings => render_rings(spec, cam, width, height),
        Pattern::Checker => render_checker(spec, cam, width, height),
    }
}

/// Coverage of the centered offset `(x, y)` (pixels from the image
/// center): 1 for white, 0 for black.
pub fn ring_value_at(spec: &TargetSpec, cam: &CameraModel, x: f64, y: f64) -> bool {
    let r = x.hypot(y);
    let big_r0 = cam.big_r0();
    if r >= big_r0 {
        return false;
    }
    let n = spec.rings as f64;
    let k = (r * n / big_r0).round().clamp(1.0, n);
    (r - k * big_r0 / n).abs() > spec.ring_thickness / 2.0
}

/// Wall-plane coordinates (focal-length units) seen by the source pixel
/// offset `(x, y)`, or `None` for rays that miss the wall.
pub fn checker_plane_coords(spec: &TargetSpec, cam: &CameraModel, x: f64, y: f64) -> Option<(f64, f64)> {
    let r = x.hypot(y);
    if r == 0.0 {
        return Some((0.0, 0.0));
    }
    let theta = source_angle(r, cam);
    if theta >= GRAZING {
        return None;
    }
    let rho = spec.wall_distance * theta.tan();
    Some((rho * x / r, rho * y / r))
}

/// Checker color at a source offset: cell `(0, 0)` (the one just up-right
/// of the plane origin) and its even-parity peers are white.
pub fn checker_value_at(spec: &TargetSpec, cam: &CameraModel, x: f64, y: f64) -> bool {
    match checker_plane_coords(spec, cam, x, y) {
        Some((px, py)) => {
            let n = spec.checker_cells as f64;
            let parity = (px * n).floor() as i64 + (py * n).floor() as i64;
            parity.rem_euclid(2) == 0
        }
        None => false,
    }
}

fn render_with(
    spec: &TargetSpec,
    width: usize,
    height: usize,
    inside: impl Fn(f64, f64) -> bool + Sync,
) -> Result<ImageBuffer> {
    spec.validate()?;
    if width == 0 || height == 0 {
        return Err(argument(format!("target size must be positive, got {width}x{height}")));
    }
    let ss = spec.supersample;
    let total = (ss * ss) as f64;
    // Offsets symmetric about the pixel center so even-sized targets mirror exactly.
    let offsets: Vec<f64> = (0..ss).map(|s| (s as f64 + 0.5) / ss as f64).collect();
    let cx = width as f64 / 2.0;
    let cy = height as f64 / 2.0;
    let mut img = ImageBuffer::new(width, height, 1)?;
    img.data_mut().par_chunks_mut(width).enumerate().for_each(|(j, row)| {
        for (i, px) in row.iter_mut().enumerate() {
            let mut hits = 0usize;
            for oy in &offsets {
                let y = j as f64 + oy - cy;
                for ox in &offsets {
                    if inside(i as f64 + ox - cx, y) {
                        hits += 1;
                    }
                }
            }
            *px = (255.0 * hits as f64 / total).round() as u8;
        }
    });
    Ok(img)
}

/// White disc of radius `R₀` on black with `rings` black rings at radii
/// `k·R₀/rings`, i.e. cones equally spaced in field angle.
pub fn render_rings(spec: &TargetSpec, cam: &CameraModel, width: usize, height: usize) -> Result<ImageBuffer> {
    render_with(spec, width, height, |x, y| ring_value_at(spec, cam, x, y))
}

/// Fisheye view of a frontal checkerboard wall at `wall_distance`.
pub fn render_checker(spec: &TargetSpec, cam: &CameraModel, width: usize, height: usize) -> Result<ImageBuffer> {
    render_with(spec, width, height, |x, y| checker_value_at(spec, cam, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cam() -> CameraModel {
        CameraModel::new(100.0).unwrap()
    }

    #[test]
    fn single_ring_sits_on_rim() {
        let spec = TargetSpec { ring_thickness: 2.0, ..TargetSpec::rings(1) };
        let c = cam();
        assert!(!ring_value_at(&spec, &c, 99.5, 0.0));
        assert!(ring_value_at(&spec, &c, 98.5, 0.0));
        assert!(ring_value_at(&spec, &c, 50.0, 0.0));
    }

    #[test]
    fn four_rings_include_the_45_degree_circle() {
        let spec = TargetSpec { ring_thickness: 2.0, ..TargetSpec::rings(4) };
        let c = cam();
        for r in [25.0, 50.0, 75.0] {
            assert!(!ring_value_at(&spec, &c, r, 0.0), "ring at {r}");
            assert!(ring_value_at(&spec, &c, r + 5.0, 0.0));
        }
        assert_eq!(50.0, c.r0());
        assert!(!ring_value_at(&spec, &c, 0.0, 110.0));
    }

    #[test]
    fn rings_outside_rim_are_black() {
        let img = render_rings(&TargetSpec::rings(4), &cam(), 240, 240).unwrap();
        // Pixel centered at radius ~110 on the +x axis.
        assert_eq!(img.pixel(230, 120), &[0]);
        assert_eq!(img.pixel(120 + 37, 120), &[255]);
    }

    #[test]
    fn checker_plane_geometry() {
        let spec = TargetSpec::checker(8, 1.5);
        let c = cam();
        assert_eq!(checker_plane_coords(&spec, &c, 0.0, 0.0), Some((0.0, 0.0)));
        let (px, py) = checker_plane_coords(&spec, &c, 0.0, c.r0()).unwrap();
        assert_abs_diff_eq!(px, 0.0);
        assert_abs_diff_eq!(py, 1.5, epsilon = 1e-12);
        let (far, _) = checker_plane_coords(&spec, &c, 99.9, 0.0).unwrap();
        assert!(far > 500.0);
        assert!(checker_plane_coords(&spec, &c, 100.0, 0.0).is_none());
        assert!(!checker_value_at(&spec, &c, 100.0, 0.0));
    }

    #[test]
    fn checker_origin_cell_is_white() {
        let spec = TargetSpec::checker(8, 1.0);
        let c = cam();
        assert!(checker_value_at(&spec, &c, 0.0, 0.0));
        assert!(checker_value_at(&spec, &c, 0.1, 0.1));
        assert!(!checker_value_at(&spec, &c, -0.1, 0.1));
        assert!(checker_value_at(&spec, &c, -0.1, -0.1));
    }

    #[test]
    fn invalid_specs_rejected() {
        let c = cam();
        let bad = TargetSpec { ring_thickness: 0.5, ..TargetSpec::rings(3) };
        assert!(render_rings(&bad, &c, 10, 10).is_err());
        let bad = TargetSpec { wall_distance: 0.0, ..TargetSpec::default() };
        assert!(render_checker(&bad, &c, 10, 10).is_err());
        assert!(render_checker(&TargetSpec::default(), &c, 0, 10).is_err());
    }
}
