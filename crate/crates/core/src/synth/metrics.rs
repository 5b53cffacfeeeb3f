use crate::error::{argument, Error, Result};
use crate::image::ImageBuffer;

/// Maximum perpendicular distance of `points` from their total-least-squares
/// line (the principal axis of the centered scatter).
///
/// All-coincident input has residual 0.
pub fn straightness_residual(points: &[[f64; 2]]) -> Result<f64> {
    if points.len() < 3 {
        return Err(argument(format!("straightness needs at least 3 points, got {}", points.len())));
    }
    if points.iter().any(|p| !(p[0].is_finite() && p[1].is_finite())) {
        return Err(argument("straightness points must be finite"));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p[0]).sum::<f64>() / n;
    let my = points.iter().map(|p| p[1]).sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for p in points {
        let (dx, dy) = (p[0] - mx, p[1] - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    // Direction of the major axis; the normal is perpendicular to it.
    let angle = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let (nx, ny) = (-angle.sin(), angle.cos());
    Ok(points.iter().map(|p| ((p[0] - mx) * nx + (p[1] - my) * ny).abs()).fold(0.0, f64::max))
}

/// Rough image-circle radius: from the image center, the farthest pixel
/// brighter than `threshold` along each of the four axis directions.
///
/// Directions whose scan runs into the frame edge are cropped by the frame
/// and only count when all four are; the estimate is then the half of the
/// smaller image side.
pub fn estimate_big_r0(img: &ImageBuffer, threshold: u8) -> Result<f64> {
    let (w, h) = (img.width(), img.height());
    let bright = |i: usize, j: usize| img.pixel(i, j).iter().any(|&v| v > threshold);
    let (ci, cj) = (w / 2, h / 2);
    let (cx, cy) = (w as f64 / 2.0, h as f64 / 2.0);

    // (extent to the far pixel edge, ran into the frame) per direction.
    let mut reach: Vec<(f64, bool)> = Vec::with_capacity(4);
    if let Some(i) = (ci..w).rev().find(|&i| bright(i, cj)) {
        reach.push(((i + 1) as f64 - cx, i == w - 1));
    }
    if let Some(i) = (0..ci).find(|&i| bright(i, cj)) {
        reach.push((cx - i as f64, i == 0));
    }
    if let Some(j) = (cj..h).rev().find(|&j| bright(ci, j)) {
        reach.push(((j + 1) as f64 - cy, j == h - 1));
    }
    if let Some(j) = (0..cj).find(|&j| bright(ci, j)) {
        reach.push((cy - j as f64, j == 0));
    }
    if reach.is_empty() {
        return Err(Error::Detection(format!("no pixel above gray level {threshold} on the center axes")));
    }
    let open: Vec<f64> = reach.iter().filter(|r| !r.1).map(|r| r.0).collect();
    if open.is_empty() {
        return Ok(cx.min(cy));
    }
    Ok(open.iter().sum::<f64>() / open.len() as f64)
}
