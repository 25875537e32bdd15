use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::error::{MomentError, Result};
use crate::image::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeClass {
    Disk,
    Square,
    Triangle,
    Ring,
}

impl ShapeClass {
    pub const ALL: [ShapeClass; 4] = [ShapeClass::Disk, ShapeClass::Square, ShapeClass::Triangle, ShapeClass::Ring];

    pub fn name(self) -> &'static str {
        match self {
            ShapeClass::Disk => "disk",
            ShapeClass::Square => "square",
            ShapeClass::Triangle => "triangle",
            ShapeClass::Ring => "ring",
        }
    }

    /// Whether the offset `(x, y)` from the center lies inside the shape of
    /// circumradius `rho` turned by `theta`.
    fn contains(self, x: f64, y: f64, rho: f64, theta: f64) -> bool {
        let d = x.hypot(y);
        match self {
            ShapeClass::Disk => d <= rho,
            ShapeClass::Ring => d <= rho && d >= 0.5 * rho,
            ShapeClass::Square => in_polygon(4, x, y, rho, theta),
            ShapeClass::Triangle => in_polygon(3, x, y, rho, theta),
        }
    }
}

fn in_polygon(sides: usize, x: f64, y: f64, rho: f64, theta: f64) -> bool {
    let apothem = rho * (PI / sides as f64).cos();
    (0..sides).all(|k| {
        let a = theta + PI / sides as f64 + TAU * k as f64 / sides as f64;
        x * a.cos() + y * a.sin() <= apothem
    })
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShapeClass {
    type Err = MomentError;

    fn from_str(s: &str) -> Result<Self> {
        ShapeClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| MomentError::InvalidParam(format!("unknown shape class '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeDataset {
    pub images: Vec<GrayImage>,
    /// Index into `classes` for each image.
    pub labels: Vec<usize>,
    pub classes: Vec<ShapeClass>,
}

const SUPERSAMPLE: usize = 4;

/// Draws one shape centered in a `size x size` frame; intensity is the covered
/// fraction of each pixel times 255.
pub fn render_shape(class: ShapeClass, size: usize, scale: f64, theta: f64) -> GrayImage {
    let c = size as f64 / 2.0;
    let rho = scale * size as f64 / 2.0;
    let step = 1.0 / SUPERSAMPLE as f64;
    GrayImage::from_fn(size, size, |col, row| {
        let mut hits = 0;
        for i in 0..SUPERSAMPLE {
            for j in 0..SUPERSAMPLE {
                let x = col as f64 + (i as f64 + 0.5) * step - c;
                let y = row as f64 + (j as f64 + 0.5) * step - c;
                if class.contains(x, y, rho, theta) {
                    hits += 1;
                }
            }
        }
        255.0 * hits as f64 / (SUPERSAMPLE * SUPERSAMPLE) as f64
    })
}

/// `n_per_class` centered shapes per class, grouped by class, each at a
/// uniform rotation in `[0, 2 pi)` and a circumscribed diameter uniform in
/// `[0.5, 0.9)` of the frame.
pub fn gen_shapes(n_per_class: usize, classes: &[ShapeClass], size: usize, seed: u64) -> Result<ShapeDataset> {
    if size < 32 {
        return Err(MomentError::InvalidParam(format!("shape size {size} is below 32")));
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut images = Vec::with_capacity(n_per_class * classes.len());
    let mut labels = Vec::with_capacity(images.capacity());
    for (label, &class) in classes.iter().enumerate() {
        for _ in 0..n_per_class {
            let theta = rng.random_range(0.0..TAU);
            let scale = rng.random_range(0.5..0.9);
            images.push(render_shape(class, size, scale, theta));
            labels.push(label);
        }
    }
    Ok(ShapeDataset { images, labels, classes: classes.to_vec() })
}
