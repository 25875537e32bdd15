use ndarray::{s, Array1, Array2};
use num_complex::Complex64;

use super::{map_indices, DiskMoments, InvariantVector};
use crate::disk::{kernel_radials, radius_epsilon, DiskFamily};
use crate::error::{MomentError, Result};
use crate::geometry::PolarMap;
use crate::image::GrayImage;
use crate::rect::FamilyParams;

fn check_map(width: usize, height: usize, pm: &PolarMap) -> Result<()> {
    if pm.width != width || pm.height != height {
        return Err(MomentError::DimensionMismatch(format!(
            "polar map covers {}x{}, expected {width}x{height}",
            pm.width, pm.height
        )));
    }
    Ok(())
}

fn validate(family: DiskFamily, params: &FamilyParams) -> Result<()> {
    if family == DiskFamily::Gpzm {
        params.validate_gpzm()?;
    }
    Ok(())
}

/// Radial tables for every repetition in `0..=order`, shared when the
/// family's radial part ignores the repetition.
struct Radials<'a> {
    family: DiskFamily,
    order: usize,
    params: &'a FamilyParams,
    pm: &'a PolarMap,
    eps: f64,
    shared: Option<Array2<f64>>,
}

impl<'a> Radials<'a> {
    fn new(family: DiskFamily, order: usize, params: &'a FamilyParams, pm: &'a PolarMap) -> Result<Self> {
        let eps = radius_epsilon(pm.width, pm.height);
        let shared = if family.radial_uses_repetition() {
            None
        } else {
            Some(kernel_radials(family, order, 0, params, &pm.radii, eps)?)
        };
        Ok(Self { family, order, params, pm, eps, shared })
    }

    fn with<T>(&self, lambda: usize, f: impl FnOnce(&Array2<f64>) -> T) -> Result<T> {
        match &self.shared {
            Some(t) => Ok(f(t)),
            None => {
                let t = kernel_radials(self.family, self.order, lambda as i64, self.params, &self.pm.radii, self.eps)?;
                Ok(f(&t))
            }
        }
    }
}

/// `M_{p,lambda} = sum R̂_{p,lambda}(r) exp(-i lambda theta) f dA` over all pixels.
///
/// Only `lambda >= 0` is summed; negative repetitions are filled by conjugation.
pub fn disk_moments(
    img: &GrayImage,
    pm: &PolarMap,
    family: DiskFamily,
    order: usize,
    params: &FamilyParams,
) -> Result<DiskMoments> {
    check_map(img.width(), img.height(), pm)?;
    validate(family, params)?;
    let radials = Radials::new(family, order, params, pm)?;
    let f: Vec<f64> = img.to_vec();
    let area = pm.pixel_area();
    let stripes = map_indices(order + 1, |l| {
        let lf = l as f64;
        let re_w: Array1<f64> = f.iter().zip(&pm.angles).map(|(v, t)| v * (lf * t).cos()).collect();
        let im_w: Array1<f64> = f.iter().zip(&pm.angles).map(|(v, t)| -v * (lf * t).sin()).collect();
        radials.with(l, |t| {
            let rows = t.slice(s![l.., ..]);
            (rows.dot(&re_w), rows.dot(&im_w))
        })
    });
    let big_p = order;
    let mut values = Array2::from_elem((order + 1, 2 * order + 1), Complex64::new(0.0, 0.0));
    for (l, stripe) in stripes.into_iter().enumerate() {
        let (re, im) = stripe?;
        for (k, (a, b)) in re.iter().zip(im.iter()).enumerate() {
            let p = l + k;
            let m = Complex64::new(a * area, if l == 0 { 0.0 } else { b * area });
            values[[p, big_p + l]] = m;
            values[[p, big_p - l]] = m.conj();
        }
    }
    Ok(DiskMoments {
        family,
        params: *params,
        width: img.width(),
        height: img.height(),
        center: pm.center,
        values,
    })
}

/// Reconstructed image plus the largest imaginary part left by the sum.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskReconstruction {
    pub image: GrayImage,
    pub imag_residual: f64,
}

/// `f̂ = Re sum_p sum_{|lambda| <= p} R̂_{p,lambda}(r) exp(i lambda theta) M_{p,lambda}`
/// for `p <= up_to`.
pub fn disk_reconstruct(m: &DiskMoments, pm: &PolarMap, up_to: usize) -> Result<DiskReconstruction> {
    disk_reconstruct_repetitions(m, pm, up_to, up_to)
}

/// As [`disk_reconstruct`], keeping only repetitions `|lambda| <= max_repetition`.
pub fn disk_reconstruct_repetitions(
    m: &DiskMoments,
    pm: &PolarMap,
    up_to: usize,
    max_repetition: usize,
) -> Result<DiskReconstruction> {
    check_map(m.width, m.height, pm)?;
    if up_to > m.order() {
        return Err(MomentError::OrderExceedsAvailable { requested: up_to, available: m.order() });
    }
    let radials = Radials::new(m.family, up_to, &m.params, pm)?;
    let n = pm.radii.len();
    let mut re_acc = vec![0.0; n];
    let mut im_acc = vec![0.0; n];
    let reps: Vec<usize> = (0..=up_to.min(max_repetition)).collect();
    const BATCH: usize = 8;
    for batch in reps.chunks(BATCH) {
        let parts = map_indices(batch.len(), |i| {
            let l = batch[i];
            radials.with(l, |t| contribution(m, pm, t, l, up_to))
        });
        for part in parts {
            let (re, im) = part?;
            for j in 0..n {
                re_acc[j] += re[j];
                im_acc[j] += im[j];
            }
        }
    }
    let imag_residual = im_acc.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let image = GrayImage::new(m.width, m.height, re_acc)?;
    Ok(DiskReconstruction { image, imag_residual })
}

/// Real and imaginary parts of the `+lambda` and `-lambda` terms at every pixel.
fn contribution(m: &DiskMoments, pm: &PolarMap, t: &Array2<f64>, l: usize, up_to: usize) -> (Vec<f64>, Vec<f64>) {
    let rows = t.slice(s![l..=up_to, ..]);
    let pos: Vec<Complex64> = (l..=up_to).map(|p| m.get(p, l as i64)).collect();
    let pos_re = rows.t().dot(&Array1::from_iter(pos.iter().map(|c| c.re)));
    let pos_im = rows.t().dot(&Array1::from_iter(pos.iter().map(|c| c.im)));
    let lf = l as f64;
    let mut re = vec![0.0; pos_re.len()];
    let mut im = vec![0.0; pos_re.len()];
    if l == 0 {
        for j in 0..re.len() {
            re[j] = pos_re[j];
            im[j] = pos_im[j];
        }
        return (re, im);
    }
    let neg: Vec<Complex64> = (l..=up_to).map(|p| m.get(p, -(l as i64))).collect();
    let neg_re = rows.t().dot(&Array1::from_iter(neg.iter().map(|c| c.re)));
    let neg_im = rows.t().dot(&Array1::from_iter(neg.iter().map(|c| c.im)));
    for (j, theta) in pm.angles.iter().enumerate() {
        let e = Complex64::from_polar(1.0, lf * theta);
        let v = e * Complex64::new(pos_re[j], pos_im[j]) + e.conj() * Complex64::new(neg_re[j], neg_im[j]);
        re[j] = v.re;
        im[j] = v.im;
    }
    (re, im)
}

/// `|M_{p,lambda}|` for `0 <= lambda <= p`.
pub fn invariants(m: &DiskMoments) -> InvariantVector {
    let order = m.order();
    let mut values = Vec::with_capacity((order + 1) * (order + 2) / 2);
    for p in 0..=order {
        for l in 0..=p {
            values.push(m.get(p, l as i64).norm());
        }
    }
    InvariantVector { family: m.family, order, values }
}
