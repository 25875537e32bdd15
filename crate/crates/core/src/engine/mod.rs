//! Moment computation, reconstruction, invariants and the polar unwrap.

mod disk;
mod kind;
mod polar;
mod rect;

pub use disk::{disk_moments, disk_reconstruct, disk_reconstruct_repetitions, invariants, DiskReconstruction};
pub use kind::MomentKind;
pub use polar::{disk_mask, polar_transform, rev_polar, PolarUnwrap};
pub use rect::{rect_moments, rect_reconstruct};

use ndarray::Array2;
use num_complex::Complex64;

use crate::disk::DiskFamily;
use crate::geometry::Centroid;
use crate::rect::{FamilyParams, RectFamily};

/// Real moments `M_pq` over a rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct RectMoments {
    pub family_x: RectFamily,
    pub family_y: RectFamily,
    pub params: FamilyParams,
    /// Image width and height the tables were sampled for.
    pub width: usize,
    pub height: usize,
    /// `(P + 1) x (Q + 1)`, `P` along x and `Q` along y.
    pub values: Array2<f64>,
}

impl RectMoments {
    pub fn orders(&self) -> (usize, usize) {
        (self.values.nrows() - 1, self.values.ncols() - 1)
    }
}

/// Complex moments `M_{p,lambda}` on the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskMoments {
    pub family: DiskFamily,
    pub params: FamilyParams,
    pub width: usize,
    pub height: usize,
    pub center: Centroid,
    /// `(P + 1) x (2P + 1)`, entry `(p, lambda + P)`; zero where `|lambda| > p`.
    pub values: Array2<Complex64>,
}

impl DiskMoments {
    pub fn order(&self) -> usize {
        self.values.nrows() - 1
    }

    /// `M_{p,lambda}`; zero outside `|lambda| <= p`.
    pub fn get(&self, p: usize, lambda: i64) -> Complex64 {
        let big_p = self.order() as i64;
        if p > self.order() || lambda.abs() > p as i64 {
            return Complex64::new(0.0, 0.0);
        }
        self.values[[p, (lambda + big_p) as usize]]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MomentSet {
    Rect(RectMoments),
    Disk(DiskMoments),
}

impl MomentSet {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            MomentSet::Rect(m) => (m.width, m.height),
            MomentSet::Disk(m) => (m.width, m.height),
        }
    }

    /// Every moment as one real vector: `M_pq` row-major, or `|M_{p,lambda}|`
    /// for `0 <= lambda <= p`.
    pub fn feature_vector(&self) -> Vec<f64> {
        match self {
            MomentSet::Rect(m) => m.values.iter().copied().collect(),
            MomentSet::Disk(m) => invariants(m).values,
        }
    }
}

/// Rotation invariants `|M_{p,lambda}|` for `0 <= lambda <= p`, ordered by
/// `p`, then `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantVector {
    pub family: DiskFamily,
    pub order: usize,
    pub values: Vec<f64>,
}

impl InvariantVector {
    /// Position of `(p, lambda)` in [`InvariantVector::values`].
    pub fn index(p: usize, lambda: usize) -> usize {
        p * (p + 1) / 2 + lambda
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn map_indices<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indices<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..n).map(f).collect()
}
