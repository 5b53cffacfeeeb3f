//! Property checks of the coordinate maps against independent formulations.

use std::f64::consts::{FRAC_PI_2, PI};

use approx::assert_relative_eq;
use fisheye_core::model::*;
use proptest::prelude::*;

/// The gain exactly as printed, with the `0/0` left in.
fn raw_gain(w: f64, z: f64) -> f64 {
    let c = (PI * z / 2.0).cos();
    let inner = 1.0 + c + (1.0 - 8.0 * w) * (c + c * c);
    let denom = 1.0 + c - inner.sqrt();
    (4.0 * w * c / denom).sqrt()
}

fn raw_denominator(w: f64, z: f64) -> f64 {
    let c = (PI * z / 2.0).cos();
    1.0 + c - (1.0 + c + (1.0 - 8.0 * w) * (c + c * c)).sqrt()
}

/// `F` through the two-argument arctangent, which handles the sign change
/// of `8R₀³ − r³` without a step term.
fn modified_oracle(r: f64, big_r0: f64) -> f64 {
    let num = 4.0 * PI * big_r0 * big_r0 * r;
    let den = 8.0 * big_r0.powi(3) - r.powi(3);
    2.0 * big_r0 / (PI * r) * num.atan2(den)
}

fn symmetries(x: f64, y: f64) -> [(f64, f64); 8] {
    [(x, y), (-x, y), (x, -y), (-x, -y), (y, x), (-y, x), (y, -x), (-y, -x)]
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-12 * scale.max(1.0)
}

proptest! {
    #[test]
    fn maps_commute_with_square_symmetries(u in -1.0f64..1.0, v in -1.0f64..1.0, big_r0 in 10.0f64..2000.0) {
        let cam = CameraModel::new(big_r0).unwrap();
        let (x, y) = (2.0 * big_r0 * u, 2.0 * big_r0 * v);
        for mode in Mode::ALL {
            let base = mode.plane_to_source(PlanePoint::new(x, y), &cam).unwrap();
            for (k, (sx, sy)) in symmetries(x, y).into_iter().enumerate() {
                let got = mode.plane_to_source(PlanePoint::new(sx, sy), &cam).unwrap();
                let (ex, ey) = symmetries(base.x, base.y)[k];
                prop_assert!(close(got.x, ex, big_r0) && close(got.y, ey, big_r0),
                    "{mode} sym {k}: {got:?} vs ({ex}, {ey})");
            }
        }
    }

    #[test]
    fn full_is_the_composition(u in -1.0f64..1.0, v in -1.0f64..1.0) {
        let cam = CameraModel::new(317.0).unwrap();
        let pt = PlanePoint::new(634.0 * u, 634.0 * v);
        let direct = plane_to_source_full(pt, &cam).unwrap();
        let chained = intermediate_to_source(plane_to_intermediate(pt, &cam).unwrap(), &cam).unwrap();
        prop_assert_eq!(direct.x.to_bits(), chained.x.to_bits());
        prop_assert_eq!(direct.y.to_bits(), chained.y.to_bits());
    }

    #[test]
    fn stable_gain_matches_raw(w in 0.0f64..=0.25, z in -0.999f64..0.999) {
        if raw_denominator(w, z) > 1e-6 {
            let stable = square_gain(w, z).unwrap();
            prop_assert!((stable - raw_gain(w, z)).abs() <= 1e-12 * stable, "w={w} z={z}");
        }
    }

    #[test]
    fn gain_stays_in_range(w in 0.0f64..=0.25, z in -1.0f64..=1.0) {
        let g = square_gain(w, z).unwrap();
        prop_assert!((std::f64::consts::FRAC_1_SQRT_2 - 1e-15..=1.0).contains(&g));
    }

    #[test]
    fn profile_is_symmetric(h in 0.0f64..=1.0, v in 0.0f64..=1.0, p in 0.0f64..=1.0) {
        prop_assert_eq!(square_profile(h, v, p).unwrap().to_bits(), square_profile(v, h, p).unwrap().to_bits());
    }

    #[test]
    fn profile_bounded_on_canvas(u in -1.0f64..=1.0, v in -1.0f64..=1.0) {
        let cam = CameraModel::new(1.0).unwrap();
        let pt = PlanePoint::new(2.0 * u, 2.0 * v);
        if pt.radius() > 0.0 {
            let inputs = SquareDeformInputs::at(pt, &cam);
            prop_assert!((0.0..=0.25).contains(&inputs.w));
            prop_assert!((inputs.p - (inputs.h + inputs.v) / 2.0).abs() < 1e-15);
            let s = inputs.profile().unwrap();
            prop_assert!((-0.1..=1.0).contains(&s), "S = {s} at {pt:?}");
        }
    }

    #[test]
    fn modified_matches_atan2_oracle(ratio in 1e-3f64..8.0) {
        let cam = CameraModel::new(250.0).unwrap();
        let r = ratio * 250.0;
        if (ratio - 2.0).abs() > 1e-9 {
            let got = modified_scale(r, &cam).unwrap();
            prop_assert!((got - modified_oracle(r, 250.0)).abs() < 1e-12, "r/R0 = {ratio}");
        }
    }

    #[test]
    fn simple_stays_inside_rim(x in -1e6f64..1e6, y in -1e6f64..1e6) {
        let cam = CameraModel::new(100.0).unwrap();
        prop_assert!(plane_to_source_simple(PlanePoint::new(x, y), &cam).radius() < 100.0);
    }
}

#[test]
fn rectified_radius_is_increasing_and_bounded() {
    let cam = CameraModel::new(400.0).unwrap();
    let mut prev = 0.0;
    for k in 1..=10_000 {
        let r = 4.0 * 400.0 * k as f64 / 10_000.0;
        let rs = r * rectify_scale(r, &cam).unwrap();
        assert!(rs > prev, "not increasing at r = {r}");
        assert!(rs < 400.0);
        prev = rs;
    }
    let far = 1e9 * rectify_scale(1e9, &cam).unwrap();
    assert!(far < 400.0 && far > 399.99);
}

#[test]
fn unit_slope_at_center() {
    let cam = CameraModel::new(500.0).unwrap();
    let h = 1e-3;
    for scale in [rectify_scale, modified_scale] {
        // r·g(r) is odd in r, so the central difference is (h·g(h) + h·g(h)) / 2h.
        let slope = (h * scale(h, &cam).unwrap() - (-h) * scale(h, &cam).unwrap()) / (2.0 * h);
        assert!((slope - 1.0).abs() < 1e-6, "{slope}");
    }
}

#[test]
fn seam_is_continuous_and_exact() {
    for big_r0 in [1.0, 512.0, 12345.678] {
        let cam = CameraModel::new(big_r0).unwrap();
        let two = 2.0 * big_r0;
        assert_eq!(modified_scale(two, &cam).unwrap(), 0.5);
        let lo = modified_scale(two * (1.0 - 1e-6), &cam).unwrap();
        let hi = modified_scale(two * (1.0 + 1e-6), &cam).unwrap();
        assert!((lo - hi).abs() < 1e-5);
        for eps in [1e-8, -1e-8] {
            assert!((modified_scale(two * (1.0 + eps), &cam).unwrap() - 0.5).abs() < 1e-6);
        }
    }
}

#[test]
fn boundary_lands_on_circle_then_rim() {
    let big_r0 = 256.0;
    let cam = CameraModel::new(big_r0).unwrap();
    let mut worst_t: f64 = 0.0;
    let mut worst_s: f64 = 0.0;
    for k in 0..1000 {
        // Walk the square perimeter at uniform arc length.
        let s = 16.0 * big_r0 * k as f64 / 1000.0;
        let side = (s / (4.0 * big_r0)) as usize;
        let t = s - side as f64 * 4.0 * big_r0 - 2.0 * big_r0;
        let e = 2.0 * big_r0;
        let (x, y) = [(e, t), (-t, e), (-e, -t), (t, -e)][side];
        let pt = PlanePoint::new(x, y);
        let mid = plane_to_intermediate(pt, &cam).unwrap();
        worst_t = worst_t.max((mid.radius() - 2.0 * big_r0).abs() / big_r0);
        let src = plane_to_source_full(pt, &cam).unwrap();
        worst_s = worst_s.max((src.radius() - big_r0).abs() / big_r0);
    }
    assert!(worst_t < 5e-3, "{worst_t}");
    assert!(worst_s < 5e-3, "{worst_s}");
}

#[test]
fn profile_limit_matches_raw_form_near_one() {
    for (h, v) in [(1.0, 1.0), (0.3, 0.9), (0.5, 0.5)] {
        let p: f64 = 1.0 - 1e-9;
        let e = 1.0 + (FRAC_PI_2 * p).tan();
        let hi = f64::max(h, v);
        let lo = f64::min(h, v);
        let raw = 1.0 - (hi * (1.0 + (lo / hi).powf(e)).powf(1.0 / e)).powf(1.5);
        assert_relative_eq!(square_profile(h, v, p).unwrap(), raw, epsilon = 1e-6);
    }
    assert!(square_profile(1.0, 1.0, 1.0 - 1e-9).unwrap().abs() < 1e-6);
}

#[test]
fn fov_values() {
    assert!((fov_of_canvas(1.0).unwrap() - 115.04).abs() < 0.01);
    assert!((fov_of_canvas(2.0).unwrap() - 144.69).abs() < 0.01);
    assert!((fov_of_canvas(1e6).unwrap() - 180.0).abs() < 1e-3);
    assert!(fov_of_canvas(0.0).is_err());
}

#[test]
fn forward_and_inverse_angle() {
    let cam = CameraModel::from_r0(300.0).unwrap();
    assert_eq!(cam.big_r0(), 600.0);
    assert_eq!(forward_equidistant(FRAC_PI_2 / 2.0, &cam).unwrap(), cam.r0());
    assert_eq!(forward_equidistant(FRAC_PI_2, &cam).unwrap(), 600.0);
    assert!(forward_equidistant(2.0, &cam).is_err());
    assert_relative_eq!(source_angle(cam.r0(), &cam), FRAC_PI_2 / 2.0);
}
