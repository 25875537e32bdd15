//! Radial kernels and angular factors for moments on the unit disk.
//!
//! A disk kernel is `K_{p,lambda}(r, theta) = R̂(r) exp(-i lambda theta)`,
//! normalized so that `∫∫ K K* r dr dtheta = 1` over the disk.

pub mod reference;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{MomentError, Result};
use crate::rect::FamilyParams;
use crate::special::ln_pochhammer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiskFamily {
    /// Generalized pseudo-Zernike.
    Gpzm,
    FourierMellin,
    ChebyFourier,
    RadialHarmonic,
}

impl DiskFamily {
    pub const ALL: [DiskFamily; 4] = [
        DiskFamily::Gpzm,
        DiskFamily::FourierMellin,
        DiskFamily::ChebyFourier,
        DiskFamily::RadialHarmonic,
    ];

    pub fn token(self) -> &'static str {
        match self {
            DiskFamily::Gpzm => "gpzm",
            DiskFamily::FourierMellin => "fm",
            DiskFamily::ChebyFourier => "chebyfourier",
            DiskFamily::RadialHarmonic => "rhf",
        }
    }

    /// Whether the radial part depends on the repetition.
    pub fn radial_uses_repetition(self) -> bool {
        self == DiskFamily::Gpzm
    }

    pub fn describe_params(self, params: &FamilyParams) -> String {
        match self {
            DiskFamily::Gpzm => format!("alpha={}", params.gpzm_alpha),
            _ => String::new(),
        }
    }
}

impl fmt::Display for DiskFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for DiskFamily {
    type Err = MomentError;

    fn from_str(s: &str) -> Result<Self> {
        DiskFamily::ALL
            .into_iter()
            .find(|f| f.token() == s)
            .ok_or_else(|| MomentError::InvalidParam(format!("unknown disk family '{s}'")))
    }
}

/// Radial function of one `(p, lambda)` pair sampled at a list of radii.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialKernel {
    pub family: DiskFamily,
    pub order: usize,
    /// Zero for families whose radial part ignores the repetition.
    pub repetition: i64,
    pub alpha: f64,
    /// Polynomial part before weighting and normalization.
    pub raw: Vec<f64>,
    /// Orthonormal radial factor of the disk kernel.
    pub values: Vec<f64>,
}

/// `exp(∓ i lambda theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngularFactor {
    pub repetition: i64,
}

impl AngularFactor {
    pub fn new(repetition: i64) -> Self {
        Self { repetition }
    }

    /// `exp(-i lambda theta)`, used when computing moments.
    pub fn moment(&self, theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, -(self.repetition as f64) * theta)
    }

    /// `exp(+i lambda theta)`, used when reconstructing.
    pub fn reconstruct(&self, theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.repetition as f64 * theta)
    }
}

/// Radius clamp keeping `1/sqrt(r)` and `((1-r)/r)^(1/4)` finite on a pixel grid.
pub fn radius_epsilon(width: usize, height: usize) -> f64 {
    1.0 / (4.0 * width.max(height) as f64)
}

fn check_repetition(p: usize, lambda: i64) -> Result<usize> {
    let l = lambda.unsigned_abs() as usize;
    if l > p {
        return Err(MomentError::InvalidRepetition { order: p, repetition: lambda });
    }
    Ok(l)
}

/// `ln rho` for generalized pseudo-Zernike polynomials, `0 <= l <= p`.
fn gpzm_ln_norm(p: usize, l: usize, alpha: f64) -> f64 {
    let span = 2 * l + 1;
    (2.0 * PI).ln() + ln_pochhammer((p - l + 1) as f64, span)
        - (2.0 * p as f64 + alpha + 2.0).ln()
        - ln_pochhammer(alpha + 1.0 + (p - l) as f64, span)
}

/// Unnormalized GPZM radials `R_{p,l}` for `p = l..=order` at every radius;
/// row `p - l` of the result.
fn gpzm_raw_stripe(l: usize, order: usize, alpha: f64, radii: &[f64]) -> Array2<f64> {
    let rows = order + 1 - l;
    let mut out = Array2::zeros((rows, radii.len()));
    let lf = l as f64;
    for (j, &r) in radii.iter().enumerate() {
        let seed = r.powi(l as i32);
        out[[0, j]] = seed;
        if rows > 1 {
            out[[1, j]] = ((alpha + 3.0 + 2.0 * lf) * r - 2.0 * (lf + 1.0)) * seed;
        }
        for k in 2..rows {
            let p = (l + k) as f64;
            let m1 = (2.0 * p + 1.0 + alpha) * (2.0 * p + alpha) / ((p + lf + 1.0 + alpha) * (p - lf));
            let m2 = -(p + lf + 1.0) * (alpha + 2.0 * p) / (p + lf + alpha + 1.0)
                + m1 * (p + lf) * (p - lf - 1.0) / (2.0 * p - 1.0 + alpha);
            let m3 = (p + lf) * (p + lf + 1.0) * (2.0 * p - 2.0 + alpha) * (2.0 * p - 1.0 + alpha)
                / (2.0 * (p + lf + alpha + 1.0) * (p + lf + alpha))
                + m2 * (p + lf) * (2.0 * p - 2.0 + alpha) / (p + lf + alpha)
                - m1 * (p + lf) * (p + lf - 1.0) * (p - lf - 2.0) / (2.0 * (p + lf + alpha));
            out[[k, j]] = (m1 * r + m2) * out[[k - 1, j]] + m3 * out[[k - 2, j]];
        }
    }
    out
}

/// Normalized GPZM radials for repetition `lambda`, rows `p = 0..=order`
/// (rows with `p < |lambda|` are zero).
pub fn gpzm_stripe(lambda: i64, order: usize, alpha: f64, radii: &[f64]) -> Result<Array2<f64>> {
    FamilyParams { gpzm_alpha: alpha, ..FamilyParams::default() }.validate_gpzm()?;
    let l = check_repetition(order, lambda)?;
    let raw = gpzm_raw_stripe(l, order, alpha, radii);
    let half_ln_w: Vec<f64> = radii.iter().map(|&r| 0.5 * alpha * (1.0 - r).max(0.0).ln()).collect();
    let mut out = Array2::zeros((order + 1, radii.len()));
    for p in l..=order {
        let ln_rho = gpzm_ln_norm(p, l, alpha);
        for (j, &lw) in half_ln_w.iter().enumerate() {
            let scale = if alpha == 0.0 { (-0.5 * ln_rho).exp() } else { (lw - 0.5 * ln_rho).exp() };
            out[[p, j]] = raw[[p - l, j]] * scale;
        }
    }
    Ok(out)
}

pub fn gpzm_radial(p: usize, lambda: i64, alpha: f64, radii: &[f64]) -> Result<RadialKernel> {
    let l = check_repetition(p, lambda)?;
    let values = gpzm_stripe(lambda, p, alpha, radii)?.row(p).to_vec();
    let raw = gpzm_raw_stripe(l, p, alpha, radii).row(p - l).to_vec();
    Ok(RadialKernel { family: DiskFamily::Gpzm, order: p, repetition: lambda, alpha, raw, values })
}

/// Unnormalized Fourier-Mellin radials `R_0..=R_order`.
fn fourier_mellin_raw(order: usize, radii: &[f64]) -> Array2<f64> {
    let mut out = Array2::zeros((order + 1, radii.len()));
    for (j, &r) in radii.iter().enumerate() {
        out[[0, j]] = 1.0;
        if order >= 1 {
            out[[1, j]] = 3.0 * r - 2.0;
        }
        for p in 2..=order {
            let pf = p as f64;
            let m1 = 2.0 * (2.0 * pf + 1.0) / (pf + 1.0);
            let m2 = -2.0 * pf + m1 * pf * (pf - 1.0) / (2.0 * pf - 1.0);
            let m3 = (pf - 1.0) * (2.0 * pf - 1.0) + m2 * (2.0 * pf - 2.0) - m1 * (pf - 1.0) * (pf - 2.0) / 2.0;
            out[[p, j]] = (m1 * r + m2) * out[[p - 1, j]] + m3 * out[[p - 2, j]];
        }
    }
    out
}

/// Normalized Fourier-Mellin radials, rows `p = 0..=order`.
pub fn fourier_mellin_table(order: usize, radii: &[f64]) -> Array2<f64> {
    let mut out = fourier_mellin_raw(order, radii);
    for (p, mut row) in out.outer_iter_mut().enumerate() {
        let s = ((p + 1) as f64 / PI).sqrt();
        row.mapv_inplace(|v| v * s);
    }
    out
}

pub fn fourier_mellin_radial(p: usize, radii: &[f64]) -> RadialKernel {
    RadialKernel {
        family: DiskFamily::FourierMellin,
        order: p,
        repetition: 0,
        alpha: 0.0,
        raw: fourier_mellin_raw(p, radii).row(p).to_vec(),
        values: fourier_mellin_table(p, radii).row(p).to_vec(),
    }
}

/// Shifted second-kind Chebyshev values `U_p(2r - 1)`, rows `p = 0..=order`.
fn cheby_fourier_raw(order: usize, radii: &[f64]) -> Array2<f64> {
    let mut out = Array2::zeros((order + 1, radii.len()));
    for (j, &r) in radii.iter().enumerate() {
        let t = 2.0 * r - 1.0;
        out[[0, j]] = 1.0;
        if order >= 1 {
            out[[1, j]] = 2.0 * t;
        }
        for p in 2..=order {
            out[[p, j]] = 2.0 * t * out[[p - 1, j]] - out[[p - 2, j]];
        }
    }
    out
}

/// Chebyshev-Fourier radials `sqrt(8/pi) ((1-r)/r)^(1/4) U_p(2r-1)`, with
/// radii clamped to `[eps, 1-eps]`. Rows `p = 0..=order`.
pub fn cheby_fourier_table(order: usize, radii: &[f64], eps: f64) -> Array2<f64> {
    let clamped: Vec<f64> = radii.iter().map(|&r| r.clamp(eps, 1.0 - eps)).collect();
    let mut out = cheby_fourier_raw(order, &clamped);
    let lead = (8.0 / PI).sqrt();
    for (j, &r) in clamped.iter().enumerate() {
        let w = lead * ((1.0 - r) / r).powf(0.25);
        out.column_mut(j).mapv_inplace(|v| v * w);
    }
    out
}

pub fn cheby_fourier_radial(p: usize, radii: &[f64], eps: f64) -> RadialKernel {
    let clamped: Vec<f64> = radii.iter().map(|&r| r.clamp(eps, 1.0 - eps)).collect();
    RadialKernel {
        family: DiskFamily::ChebyFourier,
        order: p,
        repetition: 0,
        alpha: 0.0,
        raw: cheby_fourier_raw(p, &clamped).row(p).to_vec(),
        values: cheby_fourier_table(p, radii, eps).row(p).to_vec(),
    }
}

fn radial_harmonic_value(p: usize, r: f64) -> f64 {
    if p == 0 {
        1.0 / r.sqrt()
    } else if p % 2 == 1 {
        (2.0 / r).sqrt() * ((p + 1) as f64 * PI * r).sin()
    } else {
        (2.0 / r).sqrt() * (p as f64 * PI * r).cos()
    }
}

/// Radial harmonic Fourier functions with radii clamped to `>= eps`. Rows `p = 0..=order`.
pub fn radial_harmonic_table(order: usize, radii: &[f64], eps: f64) -> Array2<f64> {
    Array2::from_shape_fn((order + 1, radii.len()), |(p, j)| radial_harmonic_value(p, radii[j].max(eps)))
}

pub fn radial_harmonic(p: usize, radii: &[f64], eps: f64) -> RadialKernel {
    let values: Vec<f64> = radii.iter().map(|&r| radial_harmonic_value(p, r.max(eps))).collect();
    RadialKernel {
        family: DiskFamily::RadialHarmonic,
        order: p,
        repetition: 0,
        alpha: 0.0,
        raw: values.clone(),
        values,
    }
}

/// Radial factors of the orthonormal disk kernels for repetition `lambda`,
/// rows `p = 0..=order`, columns matching `radii`.
///
/// Chebyshev-Fourier and radial harmonic radials are orthonormal under
/// `r dr` alone, so they are divided by `sqrt(2 pi)` here; the other two
/// families carry the angular factor in their norm already.
pub fn kernel_radials(
    family: DiskFamily,
    order: usize,
    lambda: i64,
    params: &FamilyParams,
    radii: &[f64],
    eps: f64,
) -> Result<Array2<f64>> {
    let angular = (2.0 * PI).sqrt();
    Ok(match family {
        DiskFamily::Gpzm => gpzm_stripe(lambda, order, params.gpzm_alpha, radii)?,
        DiskFamily::FourierMellin => fourier_mellin_table(order, radii),
        DiskFamily::ChebyFourier => cheby_fourier_table(order, radii, eps) / angular,
        DiskFamily::RadialHarmonic => radial_harmonic_table(order, radii, eps) / angular,
    })
}
