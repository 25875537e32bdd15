//! Orthogonal and complex image moments.
//!
//! Rectangular moments use products of two one-dimensional orthonormal
//! polynomial tables ([`rect`]); disk moments use radial kernels times
//! `exp(-i lambda theta)` on the unit disk ([`disk`]). The [`engine`] computes
//! moments, reconstructions, rotation invariants and the polar unwrap.

pub mod bench;
pub mod disk;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod image;
pub mod io;
pub mod rect;
pub mod special;

pub use error::{MomentError, Result};
pub use geometry::{Centroid, PolarMap, ScaledAxes};
pub use image::GrayImage;
pub use disk::DiskFamily;
pub use rect::{build_table, FamilyParams, KernelTable, RectFamily};
