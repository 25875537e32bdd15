//! Centroids, central moments, orientation and the coordinate maps shared by
//! the rectangular and unit-disk moment families.
//!
//! Pixel `(x, y)` uses 1-based column/row coordinates with `y` growing
//! downward, so angles are measured from the +x axis towards increasing rows.

use std::f64::consts::TAU;

use crate::error::{MomentError, Result};
use crate::image::GrayImage;

/// Intensity-weighted mean position of an image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Centroid {
    pub xbar: f64,
    pub ybar: f64,
    /// Total intensity `m00`. Zero for a frame-center fallback.
    pub mass: f64,
}

impl Centroid {
    pub fn new(xbar: f64, ybar: f64) -> Self {
        Self { xbar, ybar, mass: 0.0 }
    }

    /// Geometric center of a `width x height` frame.
    pub fn frame_center(width: usize, height: usize) -> Self {
        Self::new((width as f64 + 1.0) / 2.0, (height as f64 + 1.0) / 2.0)
    }
}

pub fn calc_centroid(img: &GrayImage) -> Result<Centroid> {
    let (mut m00, mut m10, mut m01) = (0.0, 0.0, 0.0);
    for ((row, col), &v) in img.as_array().indexed_iter() {
        m00 += v;
        m10 += (col + 1) as f64 * v;
        m01 += (row + 1) as f64 * v;
    }
    if m00 == 0.0 {
        return Err(MomentError::ZeroMass);
    }
    Ok(Centroid { xbar: m10 / m00, ybar: m01 / m00, mass: m00 })
}

/// Centroid, or the frame center when the image has no mass. The flag is
/// `true` when the fallback was used.
pub fn centroid_or_frame_center(img: &GrayImage) -> (Centroid, bool) {
    match calc_centroid(img) {
        Ok(c) => (c, false),
        Err(_) => (Centroid::frame_center(img.width(), img.height()), true),
    }
}

/// `mu_pq = sum (x - xbar)^p (y - ybar)^q f(x, y)`.
pub fn central_moment(img: &GrayImage, c: &Centroid, p: u32, q: u32) -> f64 {
    let xs: Vec<f64> = (1..=img.width()).map(|x| (x as f64 - c.xbar).powi(p as i32)).collect();
    let mut total = 0.0;
    for (row, line) in img.as_array().outer_iter().enumerate() {
        let wy = ((row + 1) as f64 - c.ybar).powi(q as i32);
        let acc: f64 = line.iter().zip(&xs).map(|(f, wx)| f * wx).sum();
        total += wy * acc;
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalAxis {
    /// Orientation in `(-pi/2, pi/2]`.
    pub angle: f64,
    /// Set when the second moments are isotropic and the axis is undefined;
    /// `angle` is 0 in that case.
    pub degenerate: bool,
}

/// Orientation of the dominant intensity axis from second central moments,
/// `theta0 = atan2(2 mu11, mu20 - mu02) / 2`.
pub fn principal_axis(img: &GrayImage, c: &Centroid) -> Result<PrincipalAxis> {
    let mass = img.sum();
    if mass <= 0.0 {
        return Err(MomentError::ZeroMass);
    }
    let mu11 = central_moment(img, c, 1, 1);
    let mu20 = central_moment(img, c, 2, 0);
    let mu02 = central_moment(img, c, 0, 2);
    let spread = (mu20.abs() + mu02.abs()).max(f64::MIN_POSITIVE);
    let tol = 1e-12 * spread;
    if mu11.abs() <= tol && (mu20 - mu02).abs() <= tol {
        return Ok(PrincipalAxis { angle: 0.0, degenerate: true });
    }
    let mut angle = 0.5 * (2.0 * mu11).atan2(mu20 - mu02);
    if angle <= -std::f64::consts::FRAC_PI_2 {
        angle += std::f64::consts::PI;
    }
    Ok(PrincipalAxis { angle, degenerate: false })
}

/// Pixel-center sample grid on `[-1, 1]` for the continuous families.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledAxes {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub dx: f64,
    pub dy: f64,
}

/// Midpoints of `n` equal cells covering `[-1, 1]`: `x_i = -1 + (2i - 1)/n`.
pub fn midpoints(n: usize) -> Vec<f64> {
    let nf = n as f64;
    (1..=n).map(|i| -1.0 + (2 * i - 1) as f64 / nf).collect()
}

pub fn scaled_axes(width: usize, height: usize) -> ScaledAxes {
    assert!(width > 0 && height > 0, "axes need at least one sample");
    ScaledAxes {
        xs: midpoints(width),
        ys: midpoints(height),
        dx: 2.0 / width as f64,
        dy: 2.0 / height as f64,
    }
}

/// Per-pixel polar coordinates on the unit disk, row-major like the image.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarMap {
    pub width: usize,
    pub height: usize,
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
    pub center: Centroid,
    /// Pixel distance mapped to `r = 1`.
    pub scale: f64,
}

impl PolarMap {
    /// Area of one pixel in unit-disk coordinates.
    pub fn pixel_area(&self) -> f64 {
        1.0 / (self.scale * self.scale)
    }

    /// Copy with every angle shifted by `delta` (wrapped into `[0, 2pi)`).
    pub fn rotated(&self, delta: f64) -> Self {
        let mut out = self.clone();
        for a in &mut out.angles {
            *a = wrap_angle(*a + delta);
        }
        out
    }
}

pub(crate) fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Maps every pixel to polar coordinates about `center`, scaled so that the
/// farthest pixel center sits exactly on the unit circle.
pub fn polar_xy(width: usize, height: usize, center: Centroid) -> PolarMap {
    assert!(width > 0 && height > 0, "polar map needs at least one pixel");
    let n = width * height;
    let mut dist = Vec::with_capacity(n);
    let mut angles = Vec::with_capacity(n);
    for row in 1..=height {
        let dy = row as f64 - center.ybar;
        for col in 1..=width {
            let dx = col as f64 - center.xbar;
            dist.push(dx.hypot(dy));
            angles.push(wrap_angle(dy.atan2(dx)));
        }
    }
    let far = dist.iter().copied().fold(0.0, f64::max);
    // A lone pixel at the center has no extent to scale by; use half a pixel.
    let scale = if far > 0.0 { far } else { 0.5 };
    let radii = dist.iter().map(|d| (d / scale).min(1.0)).collect();
    PolarMap { width, height, radii, angles, center, scale }
}
