//! Browser bindings for a small moment explorer.
//!
//! The page holds one grayscale image and can rebuild it from truncated
//! moments, plot the one-dimensional polynomials of a family, and unwrap it
//! onto polar axes. Every method also works natively, which is how it is tested.

use imoments::bench::{psnr, rect_tables, smooth_test_image, DEFAULT_SEED};
use imoments::engine::{disk_moments, disk_reconstruct, polar_transform, rect_moments, rect_reconstruct, MomentKind};
use imoments::geometry::{centroid_or_frame_center, polar_xy};
use imoments::{build_table, FamilyParams, GrayImage, MomentError, RectFamily};
use wasm_bindgen::prelude::*;

/// Largest image side the page accepts.
pub const MAX_SIDE: usize = 256;

fn msg(e: MomentError) -> String {
    e.to_string()
}

/// Gray values as opaque RGBA bytes after min-max scaling to 0..255.
fn rgba(img: &GrayImage) -> Vec<u8> {
    let g = img.normalized_0_255();
    let mut out = Vec::with_capacity(g.len() * 4);
    for row in g.as_array().rows() {
        for &v in row {
            let b = (v + 0.5).floor().clamp(0.0, 255.0) as u8;
            out.extend_from_slice(&[b, b, b, 255]);
        }
    }
    out
}

/// `--alpha` style routing: the value goes to whichever families take one.
fn params_for(kind: MomentKind, alpha: Option<f64>) -> Result<FamilyParams, String> {
    let mut p = FamilyParams::default();
    let Some(a) = alpha else { return Ok(p) };
    let families = match kind {
        MomentKind::Rect { x, y } => vec![Some(x), Some(y)],
        MomentKind::Disk(_) => vec![None],
    };
    for f in families {
        match f {
            Some(RectFamily::Gegenbauer) => {
                p.gegenbauer_alpha = a;
                p.validate_gegenbauer().map_err(msg)?;
            }
            Some(RectFamily::Krawtchouk) => {
                p.krawtchouk_alpha = a;
                p.validate_krawtchouk().map_err(msg)?;
            }
            Some(_) => {}
            None => {
                p.gpzm_alpha = a;
                p.validate_gpzm().map_err(msg)?;
            }
        }
    }
    Ok(p)
}

/// An image rendered for a canvas.
#[derive(Debug)]
#[wasm_bindgen]
pub struct Picture {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
    psnr: f64,
}

#[wasm_bindgen]
impl Picture {
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> usize {
        self.width
    }

    #[wasm_bindgen(getter)]
    pub fn height(&self) -> usize {
        self.height
    }

    /// RGBA bytes, row by row.
    #[wasm_bindgen(getter)]
    pub fn pixels(&self) -> Vec<u8> {
        self.pixels.clone()
    }

    /// PSNR against the source image in dB, or NaN where it does not apply.
    #[wasm_bindgen(getter)]
    pub fn psnr(&self) -> f64 {
        self.psnr
    }
}

impl Picture {
    fn of(img: &GrayImage, psnr: f64) -> Self {
        Self { width: img.width(), height: img.height(), pixels: rgba(img), psnr }
    }
}

#[wasm_bindgen]
pub struct Explorer {
    image: GrayImage,
}

#[wasm_bindgen]
impl Explorer {
    /// Starts from the built-in synthetic test image.
    #[wasm_bindgen(constructor)]
    pub fn new(size: usize) -> Result<Explorer, String> {
        if !(8..=MAX_SIDE).contains(&size) {
            return Err(format!("size must lie in 8..={MAX_SIDE}"));
        }
        Ok(Self { image: smooth_test_image(size, DEFAULT_SEED) })
    }

    /// Replaces the image with canvas RGBA data, converted to luma.
    pub fn load_rgba(&mut self, width: usize, height: usize, data: &[u8]) -> Result<(), String> {
        if width == 0 || height == 0 || width > MAX_SIDE || height > MAX_SIDE {
            return Err(format!("image must be between 1 and {MAX_SIDE} pixels on each side"));
        }
        if data.len() != width * height * 4 {
            return Err(format!("expected {} bytes, got {}", width * height * 4, data.len()));
        }
        let px = data.chunks_exact(4).map(|c| 0.299 * c[0] as f64 + 0.587 * c[1] as f64 + 0.114 * c[2] as f64);
        self.image = GrayImage::new(width, height, px.collect()).map_err(msg)?;
        Ok(())
    }

    pub fn source(&self) -> Picture {
        Picture::of(&self.image, f64::NAN)
    }

    /// Rebuilds the image from moments up to `order` of `family`
    /// (one name, or `x,y` for two rectangular families).
    pub fn reconstruct(&self, family: &str, order: usize, alpha: Option<f64>) -> Result<Picture, String> {
        let kind: MomentKind = family.parse().map_err(msg)?;
        let params = params_for(kind, alpha)?;
        let (w, h) = self.image.dims();
        let img = match kind {
            MomentKind::Rect { .. } => {
                let (tx, ty) = rect_tables(kind, w, h, (order, order), &params).map_err(msg)?;
                let m = rect_moments(&self.image, &tx, &ty).map_err(msg)?;
                rect_reconstruct(&m, &tx, &ty, (order, order)).map_err(msg)?
            }
            MomentKind::Disk(f) => {
                let pm = polar_xy(w, h, centroid_or_frame_center(&self.image).0);
                let m = disk_moments(&self.image, &pm, f, order, &params).map_err(msg)?;
                disk_reconstruct(&m, &pm, order).map_err(msg)?.image
            }
        };
        let db = psnr(&self.image, &img).map_err(msg)?;
        Ok(Picture::of(&img, db))
    }

    /// Unwraps the image around its centroid onto radius x angle axes.
    pub fn polar(&self, resolution: usize) -> Result<Picture, String> {
        let center = centroid_or_frame_center(&self.image).0;
        let pu = polar_transform(&self.image, resolution, center).map_err(msg)?;
        Ok(Picture::of(&pu.as_image().map_err(msg)?, f64::NAN))
    }
}

/// Values of the first `orders` normalized polynomials of a rectangular
/// family at `n` points: `orders` rows of `n` values, flattened.
#[wasm_bindgen]
pub fn curves(family: &str, n: usize, orders: usize, alpha: Option<f64>) -> Result<Vec<f64>, String> {
    let kind: MomentKind = family.parse().map_err(msg)?;
    let MomentKind::Rect { x, y } = kind else {
        return Err("curves needs a rectangular family".into());
    };
    if x != y {
        return Err("curves takes a single family".into());
    }
    if orders == 0 {
        return Err("orders must be at least 1".into());
    }
    let t = build_table(x, n, orders - 1, &params_for(kind, alpha)?).map_err(msg)?;
    Ok(t.values.iter().copied().collect())
}
