use std::f64::consts::TAU;

use ndarray::Array2;

use crate::error::{MomentError, Result};
use crate::geometry::{principal_axis, wrap_angle, Centroid};
use crate::image::GrayImage;

/// Image resampled onto `(radius, angle)` axes about a center.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarUnwrap {
    /// Angular samples per unit of radius.
    pub resolution: usize,
    /// Largest inscribed radius in pixels; the grid has this many rows.
    pub radii_count: usize,
    /// `R x (R * resolution)`; row `r - 1` is the ring at radius `r`.
    pub grid: Array2<f64>,
    /// Angle of column 0, the principal axis.
    pub theta0: f64,
    pub center: Centroid,
}

impl PolarUnwrap {
    pub fn width(&self) -> usize {
        self.radii_count * self.resolution
    }

    pub fn as_image(&self) -> Result<GrayImage> {
        GrayImage::from_array(self.grid.clone())
    }
}

fn nearest(v: f64, max: usize) -> usize {
    (v.round().max(1.0) as usize).min(max)
}

/// Unwraps `img` about `center`. Ring `r` is sampled at `r * resolution`
/// angles `theta0 + 2 pi k / (r * resolution)` from the nearest pixel, then
/// stretched to `R * resolution` columns by nearest neighbour.
pub fn polar_transform(img: &GrayImage, resolution: usize, center: Centroid) -> Result<PolarUnwrap> {
    if resolution == 0 {
        return Err(MomentError::InvalidParam("resolution must be at least 1".into()));
    }
    let (w, h) = img.dims();
    let reach = (center.xbar - 1.0)
        .min(w as f64 - center.xbar)
        .min(center.ybar - 1.0)
        .min(h as f64 - center.ybar);
    if reach.is_nan() || reach < 1.0 {
        return Err(MomentError::DegenerateImage(format!(
            "no ring of radius 1 fits around ({:.3}, {:.3}) in a {w}x{h} image",
            center.xbar, center.ybar
        )));
    }
    let big_r = reach.floor() as usize;
    let theta0 = match principal_axis(img, &center) {
        Ok(axis) if !axis.degenerate => axis.angle,
        _ => 0.0,
    };
    let cols = big_r * resolution;
    let mut grid = Array2::zeros((big_r, cols));
    for r in 1..=big_r {
        let native = r * resolution;
        let ring: Vec<f64> = (0..native)
            .map(|k| {
                let theta = theta0 + TAU * k as f64 / native as f64;
                let x = center.xbar + r as f64 * theta.cos();
                let y = center.ybar + r as f64 * theta.sin();
                img.get(nearest(x, w) - 1, nearest(y, h) - 1)
            })
            .collect();
        for c in 0..cols {
            let k = ((c * r) as f64 / big_r as f64).round() as usize % native;
            grid[[r - 1, c]] = ring[k];
        }
    }
    Ok(PolarUnwrap { resolution, radii_count: big_r, grid, theta0, center })
}

/// Paints every pixel within `R` of the center from its nearest grid cell;
/// pixels farther out are 0.
pub fn rev_polar(width: usize, height: usize, pu: &PolarUnwrap) -> GrayImage {
    let big_r = pu.radii_count;
    let cols = pu.width();
    GrayImage::from_fn(width, height, |col, row| {
        let dx = (col + 1) as f64 - pu.center.xbar;
        let dy = (row + 1) as f64 - pu.center.ybar;
        let d = dx.hypot(dy);
        if d > big_r as f64 {
            return 0.0;
        }
        let ring = (d.round() as usize).clamp(1, big_r);
        let phi = wrap_angle(dy.atan2(dx) - pu.theta0);
        let c = (phi / TAU * cols as f64).round() as usize % cols;
        pu.grid[[ring - 1, c]]
    })
}

/// Pixels that [`rev_polar`] fills.
pub fn disk_mask(width: usize, height: usize, pu: &PolarUnwrap) -> Vec<bool> {
    let mut mask = Vec::with_capacity(width * height);
    for row in 1..=height {
        for col in 1..=width {
            let d = (col as f64 - pu.center.xbar).hypot(row as f64 - pu.center.ybar);
            mask.push(d <= pu.radii_count as f64);
        }
    }
    mask
}
