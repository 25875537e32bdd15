use ndarray::s;

use super::RectMoments;
use crate::error::{MomentError, Result};
use crate::image::GrayImage;
use crate::rect::KernelTable;

fn check_tables(img_w: usize, img_h: usize, tx: &KernelTable, ty: &KernelTable) -> Result<()> {
    if tx.sample_count() != img_w || ty.sample_count() != img_h {
        return Err(MomentError::DimensionMismatch(format!(
            "tables sample {}x{} points, image is {img_w}x{img_h}",
            tx.sample_count(),
            ty.sample_count()
        )));
    }
    if tx.is_discrete() != ty.is_discrete() {
        return Err(MomentError::MixedFamilyClass(tx.family.to_string(), ty.family.to_string()));
    }
    Ok(())
}

/// `M = Px F Pyᵀ`, with `F` indexed `[x][y]`. Continuous families include
/// the `dx dy` cell area.
pub fn rect_moments(img: &GrayImage, tx: &KernelTable, ty: &KernelTable) -> Result<RectMoments> {
    check_tables(img.width(), img.height(), tx, ty)?;
    let f = img.as_array().t();
    let mut values = tx.values.dot(&f).dot(&ty.values.t());
    let cell = tx.cell_width() * ty.cell_width();
    if cell != 1.0 {
        values.mapv_inplace(|v| v * cell);
    }
    let mut params = tx.params;
    if ty.family != tx.family {
        merge_params(&mut params, ty);
    }
    Ok(RectMoments {
        family_x: tx.family,
        family_y: ty.family,
        params,
        width: img.width(),
        height: img.height(),
        values,
    })
}

fn merge_params(params: &mut crate::rect::FamilyParams, ty: &KernelTable) {
    use crate::rect::RectFamily::*;
    match ty.family {
        Gegenbauer => params.gegenbauer_alpha = ty.params.gegenbauer_alpha,
        Krawtchouk => params.krawtchouk_alpha = ty.params.krawtchouk_alpha,
        DualHahn => {
            params.hahn_a = ty.params.hahn_a;
            params.hahn_c = ty.params.hahn_c;
        }
        _ => {}
    }
}

/// `F̂ = Pxᵀ M' Py` from the leading `(p_max + 1) x (q_max + 1)` block.
pub fn rect_reconstruct(
    m: &RectMoments,
    tx: &KernelTable,
    ty: &KernelTable,
    up_to: (usize, usize),
) -> Result<GrayImage> {
    check_tables(m.width, m.height, tx, ty)?;
    let (p_avail, q_avail) = m.orders();
    let (p_max, q_max) = up_to;
    if p_max > p_avail || q_max > q_avail {
        return Err(MomentError::OrderExceedsAvailable {
            requested: p_max.max(q_max),
            available: if p_max > p_avail { p_avail } else { q_avail },
        });
    }
    if p_max > tx.max_order || q_max > ty.max_order {
        return Err(MomentError::OrderExceedsAvailable {
            requested: p_max.max(q_max),
            available: tx.max_order.min(ty.max_order),
        });
    }
    let px = tx.values.slice(s![..=p_max, ..]);
    let py = ty.values.slice(s![..=q_max, ..]);
    let block = m.values.slice(s![..=p_max, ..=q_max]);
    // image[y][x] = sum_pq Py[q][y] M[p][q] Px[p][x]
    let data = py.t().dot(&block.t()).dot(&px);
    GrayImage::from_array(data)
}
