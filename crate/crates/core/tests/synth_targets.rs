use std::f64::consts::PI;

use fisheye_core::model::CameraModel;
use fisheye_core::synth::{
    dark_band_centers, estimate_big_r0, render_checker, render_rings, straightness_residual, TargetSpec,
};
use fisheye_core::warp::{warp, Mode, WarpConfig};
use fisheye_core::ImageBuffer;
use proptest::prelude::*;

/// Gray profile of row `j` from the image center to the right edge, indexed
/// so sample `k` is centered at radius `k + 0.5`.
fn right_half_of_row(img: &ImageBuffer, j: usize) -> Vec<f64> {
    (img.width() / 2..img.width()).map(|i| img.pixel(i, j)[0] as f64).collect()
}

#[test]
fn rings_sit_at_equal_angle_steps() {
    let cam = CameraModel::new(256.0).unwrap();
    let n = 4;
    let img = render_rings(&TargetSpec::rings(n), &cam, 512, 512).unwrap();
    let centers = dark_band_centers(&right_half_of_row(&img, 256), 128.0);
    // Ring N coincides with the rim, so its outer half is background.
    assert!(centers.len() >= n - 1);
    for (k, c) in centers.iter().take(n - 1).enumerate() {
        let want = (k + 1) as f64 * 256.0 / n as f64;
        assert!((c - want).abs() < 0.3, "ring {} at {c}, want {want}", k + 1);
    }
    // The second of four rings is the 45° circle.
    assert!((centers[1] - cam.r0()).abs() < 0.3);
    // Radius 1.1 R0 along the diagonal is outside the rim.
    assert_eq!(img.pixel(256 + 199, 256 + 199), [0]);
}

#[test]
fn rings_are_four_fold_symmetric() {
    let cam = CameraModel::new(90.0).unwrap();
    let img = render_rings(&TargetSpec::rings(6), &cam, 200, 200).unwrap();
    for j in 0..200 {
        for i in 0..200 {
            let v = img.pixel(i, j);
            assert_eq!(v, img.pixel(199 - i, j));
            assert_eq!(v, img.pixel(i, 199 - j));
            assert_eq!(v, img.pixel(j, i));
        }
    }
}

#[test]
fn simple_correction_stretches_rings_to_tangent_positions() {
    let big_r0 = 512.0;
    let cam = CameraModel::new(big_r0).unwrap();
    let n = 8;
    let src = render_rings(&TargetSpec::rings(n), &cam, 1024, 1024).unwrap();
    let cfg = WarpConfig::for_source(Mode::Simple, cam, None, 1024, 1024).unwrap();
    let out = warp(&src, &cfg).unwrap();
    let centers = dark_band_centers(&right_half_of_row(&out, 512), 128.0);
    let expected: Vec<f64> = (1..=n)
        .map(|k| 2.0 * big_r0 / PI * (k as f64 * PI / (2.0 * n as f64)).tan())
        .take_while(|&r| r < big_r0 - 10.0)
        .collect();
    assert!(expected.len() >= 5);
    for (k, want) in expected.iter().enumerate() {
        let got = centers[k];
        assert!((got - want).abs() < 1.0, "ring {} at {got}, want {want}", k + 1);
    }
    // Gaps widen outward: the corrected rings are no longer equally spaced.
    for k in 1..expected.len() - 1 {
        assert!(centers[k + 1] - centers[k] > centers[k] - centers[k - 1]);
    }
}

#[test]
fn checker_target_geometry() {
    let cam = CameraModel::new(200.0).unwrap();
    let spec = TargetSpec { supersample: 1, ..TargetSpec::checker(4, 1.0) };
    let img = render_checker(&spec, &cam, 400, 400).unwrap();
    // Cell (0, 0) is white; its horizontal neighbor is black.
    assert_eq!(img.pixel(201, 201), [255]);
    assert_eq!(img.pixel(198, 201), [0]);
    // Outside the rim is black.
    assert_eq!(img.pixel(0, 0), [0]);
    // The 45° ray at 100 px meets the wall at one focal length, i.e. on the
    // fourth cell boundary: the color flips there along the axis.
    let before = img.pixel(200 + 98, 201)[0];
    let after = img.pixel(200 + 101, 201)[0];
    assert_ne!(before, after);
}

#[test]
fn radius_estimate_from_rendered_target() {
    let cam = CameraModel::new(300.0).unwrap();
    let img =
        render_rings(&TargetSpec { rings: 3, ring_thickness: 2.0, ..TargetSpec::default() }, &cam, 800, 700).unwrap();
    let est = estimate_big_r0(&img, 100).unwrap();
    // Ring 3 straddles the rim, trimming one half-thickness.
    assert!((est - 299.0).abs() < 1.5, "{est}");
}

proptest! {
    #[test]
    fn residual_is_rotation_and_translation_invariant(
        pts in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..40),
        angle in 0.0f64..(2.0 * PI), dx in -50.0f64..50.0, dy in -50.0f64..50.0,
    ) {
        let a: Vec<[f64; 2]> = pts.iter().map(|&(x, y)| [x, y]).collect();
        let (s, c) = angle.sin_cos();
        let b: Vec<[f64; 2]> = a.iter().map(|p| [c * p[0] - s * p[1] + dx, s * p[0] + c * p[1] + dy]).collect();
        let ra = straightness_residual(&a).unwrap();
        let rb = straightness_residual(&b).unwrap();
        prop_assert!((ra - rb).abs() < 1e-9, "{ra} vs {rb}");
    }

    #[test]
    fn points_on_a_line_have_no_residual(t in prop::collection::vec(-100.0f64..100.0, 3..30),
                                         angle in 0.0f64..PI, off in -20.0f64..20.0) {
        let (s, c) = angle.sin_cos();
        let pts: Vec<[f64; 2]> = t.iter().map(|&u| [u * c - off * s, u * s + off * c]).collect();
        prop_assert!(straightness_residual(&pts).unwrap() < 1e-9);
    }
}
