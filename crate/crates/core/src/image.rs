use ndarray::Array2;

use crate::error::{MomentError, Result};

/// Dense grayscale image with real-valued intensities.
///
/// Pixels are stored row-major as an `(height, width)` array, so `data[[row, col]]`
/// is the intensity at pixel `(x, y) = (col + 1, row + 1)` in 1-based image
/// coordinates. Intensities are nominally 0..=255 but any finite value is allowed,
/// which lets reconstructions (which over- and undershoot) share the type.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    data: Array2<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(MomentError::InvalidImage(format!(
                "dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(MomentError::InvalidImage(format!(
                "expected {} pixels for {width}x{height}, got {}",
                width * height,
                pixels.len()
            )));
        }
        let data = Array2::from_shape_vec((height, width), pixels)
            .map_err(|e| MomentError::InvalidImage(e.to_string()))?;
        Self::from_array(data)
    }

    /// Wraps an `(height, width)` array.
    pub fn from_array(data: Array2<f64>) -> Result<Self> {
        if data.nrows() == 0 || data.ncols() == 0 {
            return Err(MomentError::InvalidImage("empty image".into()));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(MomentError::InvalidImage("non-finite intensity".into()));
        }
        Ok(Self { data })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be positive");
        Self { data: Array2::zeros((height, width)) }
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be positive");
        Self { data: Array2::from_elem((height, width), value) }
    }

    /// Builds an image by evaluating `f(col, row)` (0-based) at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be positive");
        Self { data: Array2::from_shape_fn((height, width), |(r, c)| f(c, r)) }
    }

    pub fn width(&self) -> usize {
        self.data.ncols()
    }

    pub fn height(&self) -> usize {
        self.data.nrows()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width(), self.height())
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Intensity at 0-based column/row.
    #[inline]
    pub fn get(&self, col: usize, row: usize) -> f64 {
        self.data[[row, col]]
    }

    #[inline]
    pub fn set(&mut self, col: usize, row: usize, value: f64) {
        self.data[[row, col]] = value;
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.data
    }

    pub fn into_array(self) -> Array2<f64> {
        self.data
    }

    /// Row-major pixel values.
    pub fn pixels(&self) -> impl Iterator<Item = f64> + '_ {
        self.data.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.data.iter().copied().collect()
    }

    pub fn sum(&self) -> f64 {
        self.data.sum()
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { data: self.data.mapv(f) }
    }

    /// Rotates the image by 90 degrees counter-clockwise (as displayed).
    pub fn rotate90(&self) -> Self {
        let (w, h) = self.dims();
        Self::from_fn(h, w, |c, r| self.get(w - 1 - r, c))
    }

    pub fn rotate180(&self) -> Self {
        let (w, h) = self.dims();
        Self::from_fn(w, h, |c, r| self.get(w - 1 - c, h - 1 - r))
    }

    pub fn rotate270(&self) -> Self {
        let (w, h) = self.dims();
        Self::from_fn(h, w, |c, r| self.get(r, h - 1 - c))
    }

    /// Min-max normalizes intensities to `[0, 255]`. A constant image maps to 128.
    pub fn normalized_0_255(&self) -> Self {
        let (lo, hi) = self.min_max();
        if hi > lo {
            let scale = 255.0 / (hi - lo);
            self.map(|v| (v - lo) * scale)
        } else {
            Self::filled(self.width(), self.height(), 128.0)
        }
    }
}

/// Min-max maps values onto `[0, 255]`; a constant input maps to 128.
pub(crate) fn normalize_values(values: &[f64]) -> Vec<f64> {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if hi > lo {
        let scale = 255.0 / (hi - lo);
        values.iter().map(|v| (v - lo) * scale).collect()
    } else {
        vec![128.0; values.len()]
    }
}
