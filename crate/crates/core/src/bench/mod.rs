//! Reconstruction quality, timing, synthetic data and a k-NN classifier.

mod classify;
mod shapes;
mod synth;

pub use classify::{
    knn_classify, knn_standardized, mass_normalized, stratified_split, LabeledFeatures, SplitMasks, Standardizer,
};
pub use shapes::{gen_shapes, render_shape, ShapeClass, ShapeDataset};
pub use synth::{smooth_test_image, DEFAULT_SEED};

use std::time::Instant;

use crate::engine::{disk_moments, disk_reconstruct, rect_moments, rect_reconstruct, MomentKind};
use crate::error::{MomentError, Result};
use crate::geometry::{centroid_or_frame_center, polar_xy};
use crate::image::{normalize_values, GrayImage};
use crate::rect::{build_table, FamilyParams, KernelTable};

/// `10 log10(255² / MSE)` after min-max normalizing both images to `[0, 255]`.
/// Identical images give `+inf`.
pub fn psnr(f: &GrayImage, fhat: &GrayImage) -> Result<f64> {
    if f.dims() != fhat.dims() {
        return Err(MomentError::DimensionMismatch(format!("{:?} vs {:?}", f.dims(), fhat.dims())));
    }
    Ok(psnr_values(&f.to_vec(), &fhat.to_vec()))
}

/// [`psnr`] over the pixels where `mask` is true; normalization uses those pixels only.
pub fn psnr_masked(f: &GrayImage, fhat: &GrayImage, mask: &[bool]) -> Result<f64> {
    if f.dims() != fhat.dims() || mask.len() != f.len() {
        return Err(MomentError::DimensionMismatch("image and mask sizes differ".into()));
    }
    let pick = |img: &GrayImage| -> Vec<f64> { img.pixels().zip(mask).filter(|(_, &m)| m).map(|(v, _)| v).collect() };
    let a = pick(f);
    if a.is_empty() {
        return Err(MomentError::InvalidParam("mask selects no pixels".into()));
    }
    Ok(psnr_values(&a, &pick(fhat)))
}

fn psnr_values(a: &[f64], b: &[f64]) -> f64 {
    let a = normalize_values(a);
    let b = normalize_values(b);
    let mse = a.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / a.len() as f64;
    psnr_from_mse(mse)
}

/// `10 log10(255² / mse)`, `+inf` at zero.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (255.0 * 255.0 / mse).log10()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub order: usize,
    pub psnr_db: f64,
    pub t_moments_s: f64,
    pub t_reconstruct_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub image_id: String,
    pub kind: MomentKind,
    pub params: FamilyParams,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn orders(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.order).collect()
    }

    pub fn psnr(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.psnr_db).collect()
    }

    pub fn params_label(&self) -> String {
        match self.kind {
            MomentKind::Rect { x, y } if x == y => x.describe_params(&self.params),
            MomentKind::Rect { x, y } => {
                let (a, b) = (x.describe_params(&self.params), y.describe_params(&self.params));
                [a, b].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join(";")
            }
            MomentKind::Disk(d) => d.describe_params(&self.params),
        }
    }

    /// CSV with header `family,params,order,psnr_db,t_moments_s,t_reconstruct_s`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,params,order,psnr_db,t_moments_s,t_reconstruct_s\n");
        let family = self.kind.to_string().replace(',', "x");
        let params = self.params_label();
        for r in &self.rows {
            out.push_str(&format!(
                "{family},{params},{},{},{:.6},{:.6}\n",
                r.order, r.psnr_db, r.t_moments_s, r.t_reconstruct_s
            ));
        }
        out
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_secs_f64())
}

/// Kernel tables for both axes of a `width x height` image.
pub fn rect_tables(
    kind: MomentKind,
    width: usize,
    height: usize,
    order: (usize, usize),
    params: &FamilyParams,
) -> Result<(KernelTable, KernelTable)> {
    let MomentKind::Rect { x, y } = kind else {
        return Err(MomentError::InvalidParam(format!("'{kind}' is not a rectangular family")));
    };
    Ok((build_table(x, width, order.0, params)?, build_table(y, height, order.1, params)?))
}

/// Computes moments once at the largest order and reconstructs at each
/// requested truncation. The moment time for an order is measured with tables
/// cut to that order.
pub fn recon_sweep(
    image_id: &str,
    img: &GrayImage,
    kind: MomentKind,
    params: &FamilyParams,
    orders: &[usize],
) -> Result<SweepReport> {
    let max = orders.iter().copied().max().ok_or_else(|| MomentError::InvalidParam("no orders given".into()))?;
    let (w, h) = img.dims();
    let mut rows = Vec::with_capacity(orders.len());
    match kind {
        MomentKind::Rect { .. } => {
            let (tx, ty) = rect_tables(kind, w, h, (max, max), params)?;
            let full = rect_moments(img, &tx, &ty)?;
            for &p in orders {
                let (cx, cy) = (truncate(&tx, p), truncate(&ty, p));
                let (m, t_m) = timed(|| rect_moments(img, &cx, &cy));
                m?;
                let (rec, t_r) = timed(|| rect_reconstruct(&full, &tx, &ty, (p, p)));
                rows.push(SweepRow { order: p, psnr_db: psnr(img, &rec?)?, t_moments_s: t_m, t_reconstruct_s: t_r });
            }
        }
        MomentKind::Disk(family) => {
            let (center, _) = centroid_or_frame_center(img);
            let pm = polar_xy(w, h, center);
            let full = disk_moments(img, &pm, family, max, params)?;
            for &p in orders {
                let (m, t_m) = timed(|| disk_moments(img, &pm, family, p, params));
                m?;
                let (rec, t_r) = timed(|| disk_reconstruct(&full, &pm, p));
                rows.push(SweepRow {
                    order: p,
                    psnr_db: psnr(img, &rec?.image)?,
                    t_moments_s: t_m,
                    t_reconstruct_s: t_r,
                });
            }
        }
    }
    Ok(SweepReport { image_id: image_id.to_string(), kind, params: *params, rows })
}

fn truncate(t: &KernelTable, order: usize) -> KernelTable {
    let mut c = t.clone();
    c.values = t.values.slice(ndarray::s![..=order, ..]).to_owned();
    c.max_order = order;
    c
}

/// Batch timings in seconds, each the median of three runs.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingReport {
    pub kind: MomentKind,
    pub order: usize,
    pub images: usize,
    pub width: usize,
    pub height: usize,
    pub threads: usize,
    pub t_tables_s: f64,
    pub t_moments_s: f64,
    pub t_reconstruct_s: f64,
}

fn median3(mut f: impl FnMut() -> Result<f64>) -> Result<f64> {
    let mut t = [f()?, f()?, f()?];
    t.sort_by(f64::total_cmp);
    Ok(t[1])
}

pub fn worker_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Times table construction, then moments and reconstruction over the whole
/// batch with one shared set of tables.
pub fn time_harness(images: &[GrayImage], kind: MomentKind, order: usize, params: &FamilyParams) -> Result<TimingReport> {
    let first = images.first().ok_or_else(|| MomentError::InvalidParam("no images to time".into()))?;
    let (w, h) = first.dims();
    if let Some(bad) = images.iter().find(|i| i.dims() != (w, h)) {
        return Err(MomentError::DimensionMismatch(format!("{:?} vs {:?}", bad.dims(), (w, h))));
    }
    let report = |t_tables_s, t_moments_s, t_reconstruct_s| TimingReport {
        kind,
        order,
        images: images.len(),
        width: w,
        height: h,
        threads: worker_threads(),
        t_tables_s,
        t_moments_s,
        t_reconstruct_s,
    };
    match kind {
        MomentKind::Rect { .. } => {
            let t_tables = median3(|| Ok(timed(|| rect_tables(kind, w, h, (order, order), params)).1))?;
            let (tx, ty) = rect_tables(kind, w, h, (order, order), params)?;
            let moments = batch_rect_moments(images, &tx, &ty)?;
            let t_m = median3(|| Ok(timed(|| batch_rect_moments(images, &tx, &ty)).1))?;
            let t_r = median3(|| {
                let (r, t) = timed(|| moments.iter().map(|m| rect_reconstruct(m, &tx, &ty, (order, order))).collect::<Result<Vec<_>>>());
                r.map(|_| t)
            })?;
            Ok(report(t_tables, t_m, t_r))
        }
        MomentKind::Disk(family) => {
            let maps: Vec<_> = images.iter().map(|i| polar_xy(w, h, centroid_or_frame_center(i).0)).collect();
            let t_m = median3(|| {
                let (r, t) = timed(|| {
                    images.iter().zip(&maps).map(|(i, pm)| disk_moments(i, pm, family, order, params)).collect::<Result<Vec<_>>>()
                });
                r.map(|_| t)
            })?;
            let moments = images
                .iter()
                .zip(&maps)
                .map(|(i, pm)| disk_moments(i, pm, family, order, params))
                .collect::<Result<Vec<_>>>()?;
            let t_r = median3(|| {
                let (r, t) = timed(|| moments.iter().zip(&maps).map(|(m, pm)| disk_reconstruct(m, pm, order)).collect::<Result<Vec<_>>>());
                r.map(|_| t)
            })?;
            Ok(report(0.0, t_m, t_r))
        }
    }
}

/// Rectangular moments of every image against one pair of tables.
pub fn batch_rect_moments(
    images: &[GrayImage],
    tx: &KernelTable,
    ty: &KernelTable,
) -> Result<Vec<crate::engine::RectMoments>> {
    images.iter().map(|i| rect_moments(i, tx, ty)).collect()
}
