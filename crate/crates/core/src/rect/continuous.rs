use ndarray::Array2;
use std::f64::consts::PI;

use super::{FamilyParams, KernelTable, RectFamily};
use crate::error::Result;
use crate::special::ln_abs_gamma;

/// Unnormalized values from a three-term recurrence in the order `p`,
/// `rows[p][i]` at point `xs[i]`.
fn ascend(
    xs: &[f64],
    order: usize,
    first: impl Fn(f64) -> f64,
    next: impl Fn(usize, f64, f64, f64) -> f64,
) -> Array2<f64> {
    let mut v = Array2::zeros((order + 1, xs.len()));
    for (i, &x) in xs.iter().enumerate() {
        v[[0, i]] = 1.0;
        if order >= 1 {
            v[[1, i]] = first(x);
        }
        for p in 1..order {
            v[[p + 1, i]] = next(p, x, v[[p, i]], v[[p - 1, i]]);
        }
    }
    v
}

/// Chebyshev polynomials of the first kind `T_p(x)`.
pub fn cheby_cont_raw(xs: &[f64], order: usize) -> Array2<f64> {
    ascend(xs, order, |x| x, |_, x, cur, prev| 2.0 * x * cur - prev)
}

/// Legendre polynomials `P_p(x)`.
pub fn legendre_raw(xs: &[f64], order: usize) -> Array2<f64> {
    ascend(xs, order, |x| x, |p, x, cur, prev| {
        let p = p as f64;
        ((2.0 * p + 1.0) * x * cur - p * prev) / (p + 1.0)
    })
}

/// Gegenbauer polynomials `C_p^(alpha)(x)`.
pub fn gegenbauer_raw(xs: &[f64], order: usize, alpha: f64) -> Array2<f64> {
    ascend(xs, order, |x| 2.0 * alpha * x, |p, x, cur, prev| {
        let p = p as f64;
        (2.0 * (p + alpha) * x * cur - (p + 2.0 * alpha - 1.0) * prev) / (p + 1.0)
    })
}

fn table(family: RectFamily, xs: &[f64], values: Array2<f64>, params: FamilyParams) -> KernelTable {
    KernelTable {
        family,
        max_order: values.nrows() - 1,
        points: xs.to_vec(),
        values,
        params,
    }
}

/// Orthonormal continuous Chebyshev table with weight `(1 - x^2)^(-1/2)`.
pub fn cheby_cont_table(xs: &[f64], order: usize) -> KernelTable {
    let mut v = cheby_cont_raw(xs, order);
    let scale = (2.0 / PI).sqrt();
    for (i, &x) in xs.iter().enumerate() {
        let w = scale * (1.0 - x * x).powf(-0.25);
        v.column_mut(i).mapv_inplace(|t| t * w);
        v[[0, i]] /= 2f64.sqrt();
    }
    table(RectFamily::ChebyCont, xs, v, FamilyParams::default())
}

pub fn legendre_table(xs: &[f64], order: usize) -> KernelTable {
    let mut v = legendre_raw(xs, order);
    for (p, mut row) in v.outer_iter_mut().enumerate() {
        let s = ((2 * p + 1) as f64 / 2.0).sqrt();
        row.mapv_inplace(|t| t * s);
    }
    table(RectFamily::Legendre, xs, v, FamilyParams::default())
}

/// `ln rho_p` for Gegenbauer polynomials.
fn gegenbauer_ln_norm(p: usize, alpha: f64) -> f64 {
    let pf = p as f64;
    (2.0 * PI).ln() + ln_abs_gamma(pf + 2.0 * alpha)
        - 2.0 * alpha * 2f64.ln()
        - ln_abs_gamma(pf + 1.0)
        - (pf + alpha).abs().ln()
        - 2.0 * ln_abs_gamma(alpha)
}

pub fn gegenbauer_table(xs: &[f64], order: usize, alpha: f64) -> Result<KernelTable> {
    let params = FamilyParams { gegenbauer_alpha: alpha, ..FamilyParams::default() };
    params.validate_gegenbauer()?;
    let mut v = gegenbauer_raw(xs, order, alpha);
    let ln_norms: Vec<f64> = (0..=order).map(|p| gegenbauer_ln_norm(p, alpha)).collect();
    for (i, &x) in xs.iter().enumerate() {
        let ln_w = (alpha - 0.5) * (1.0 - x * x).ln();
        for (p, ln_rho) in ln_norms.iter().enumerate() {
            v[[p, i]] *= (0.5 * (ln_w - ln_rho)).exp();
        }
    }
    Ok(table(RectFamily::Gegenbauer, xs, v, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::midpoints;

    #[test]
    fn chebyshev_first_kind_values() {
        let raw = cheby_cont_raw(&[0.5, -0.3], 6);
        assert_eq!(raw[[0, 0]], 1.0);
        assert_eq!(raw[[1, 0]], 0.5);
        assert!((raw[[2, 0]] + 0.5).abs() < 1e-15);
        for p in 0..=6 {
            let x: f64 = -0.3;
            assert!((raw[[p, 1]] - (p as f64 * x.acos()).cos()).abs() < 1e-13);
        }
        let t = cheby_cont_table(&[0.0], 2);
        assert!((t.values[[2, 0]] + (2.0 / PI).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn legendre_values() {
        let raw = legendre_raw(&[1.0, 0.0], 12);
        for p in 0..=12 {
            assert!((raw[[p, 0]] - 1.0).abs() < 1e-13);
        }
        assert!((raw[[2, 1]] + 0.5).abs() < 1e-15);
        let t = legendre_table(&[0.2, 0.9], 0);
        assert!(t.values.iter().all(|&v| (v - 0.5f64.sqrt()).abs() < 1e-15));
    }

    #[test]
    fn gegenbauer_values() {
        let raw = gegenbauer_raw(&[0.25, 0.0], 2, 2.0);
        assert_eq!(raw[[1, 0]], 1.0);
        assert!((raw[[2, 1]] + 2.0).abs() < 1e-15);
        let t = gegenbauer_table(&midpoints(32), 4, 2.0).unwrap();
        assert!(t.values.row(0).iter().all(|&v| v > 0.0));
        assert!(gegenbauer_table(&[0.0], 2, 0.0).is_err());
    }

    #[test]
    fn gegenbauer_negative_alpha_norm_is_finite() {
        let t = gegenbauer_table(&midpoints(64), 6, -0.25).unwrap();
        assert!(t.values.iter().all(|v| v.is_finite()));
        assert!(t.values.row(0).iter().all(|&v| v > 0.0));
    }

    #[test]
    fn parity_of_unnormalized_rows() {
        let xs = midpoints(10);
        for raw in [cheby_cont_raw(&xs, 7), legendre_raw(&xs, 7), gegenbauer_raw(&xs, 7, 1.5)] {
            for p in 0..=7 {
                let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                for i in 0..10 {
                    assert!((raw[[p, i]] - sign * raw[[p, 9 - i]]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn gram_converges_with_resolution() {
        let coarse = legendre_table(&midpoints(256), 5);
        let fine = legendre_table(&midpoints(4096), 5);
        assert!(coarse.orthonormality_error() < 1e-3);
        assert!(fine.orthonormality_error() < coarse.orthonormality_error());
    }
}
