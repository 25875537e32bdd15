use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::image::GrayImage;

const MODES: usize = 128;
const MAX_CYCLES: f64 = 20.0;
const SPECTRAL_SLOPE: f64 = 0.85;
const PLANET_RADIUS: f64 = 0.3;
const LIMB_EXPONENT: f64 = 0.1;

/// Seed of the reference benchmark image.
pub const DEFAULT_SEED: u64 = 5;

/// A planet-like test image: a limb-darkened disk with a one-pixel soft edge,
/// carrying smooth random surface texture (plane waves up to 20 cycles per
/// frame, amplitude `k^-0.85`) on a black sky. Deterministic under `seed`.
pub fn smooth_test_image(size: usize, seed: u64) -> GrayImage {
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let modes: Vec<(f64, f64, f64, f64)> = (0..MODES)
        .map(|_| {
            let k = rng.random_range(1.0..MAX_CYCLES);
            let dir = rng.random_range(0.0..TAU);
            let phase = rng.random_range(0.0..TAU);
            (k * dir.cos(), k * dir.sin(), phase, k.powf(-SPECTRAL_SLOPE))
        })
        .collect();
    let norm: f64 = modes.iter().map(|m| m.3).sum();
    let n = size as f64;
    let edge = 1.0 / (PLANET_RADIUS * n);
    GrayImage::from_fn(size, size, |col, row| {
        let u = (col as f64 + 0.5) / n;
        let v = (row as f64 + 0.5) / n;
        let r = (u - 0.5).hypot(v - 0.5) / PLANET_RADIUS;
        let cover = ((1.0 - r) / edge + 0.5).clamp(0.0, 1.0);
        if cover == 0.0 {
            return 0.0;
        }
        let texture: f64 = modes.iter().map(|&(kx, ky, ph, a)| a * (TAU * (kx * u + ky * v) + ph).cos()).sum::<f64>() / norm;
        let limb = (1.0 - (r * r).min(1.0)).sqrt().powf(LIMB_EXPONENT);
        cover * limb * (150.0 + 300.0 * texture)
    })
}
