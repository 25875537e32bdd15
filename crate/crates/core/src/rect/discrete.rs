use ndarray::Array2;

use super::{scaled_recurrence, FamilyParams, KernelTable, RectFamily};
use crate::error::{MomentError, Result};
use crate::special::{ln_abs_gamma, ln_factorial};

fn check_order(n: usize, order: usize) -> Result<()> {
    if order + 1 > n {
        return Err(MomentError::OrderTooHigh { order, max: n - 1 });
    }
    Ok(())
}

fn ensure_finite(values: &Array2<f64>, what: &str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(MomentError::NumericOverflow(what.into()))
    }
}

/// Discrete Chebyshev (Tchebichef) table, recursing over `x` at fixed order.
///
/// Only the first half of each row is generated; the rest follows from
/// `k̂_p(N-1-x) = (-1)^p k̂_p(x)`, which keeps the recurrence on its
/// growing side.
pub fn cheby_disc_table(n: usize, order: usize) -> Result<KernelTable> {
    check_order(n, order)?;
    let nf = n as f64;
    let half = n.div_ceil(2);
    let mut values = Array2::zeros((order + 1, n));
    let mut ln_start = -0.5 * nf.ln();
    for p in 0..=order {
        let pf = p as f64;
        if p > 0 {
            ln_start += 0.5 * ((nf - pf) / (nf + pf)).ln();
        }
        let ln_k0 = ln_start + 0.5 * (2.0 * pf + 1.0).ln();
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let seed1 = if n > 1 { sign * (1.0 + pf * (pf + 1.0) / (1.0 - nf)) } else { 0.0 };
        let row = scaled_recurrence(ln_k0, sign, seed1, half, |x, km2, km1| {
            let xf = x as f64;
            let a = -pf * (pf + 1.0) - (2.0 * xf - 1.0) * (xf - nf - 1.0) - xf;
            let b = (xf - 1.0) * (xf - nf - 1.0);
            (a * km1 + b * km2) / (xf * (nf - xf))
        });
        for (x, v) in row.into_iter().enumerate() {
            values[[p, x]] = v;
            values[[p, n - 1 - x]] = sign * v;
        }
    }
    ensure_finite(&values, "discrete chebyshev table")?;
    Ok(KernelTable {
        family: RectFamily::ChebyDisc,
        max_order: order,
        points: (0..n).map(|x| x as f64).collect(),
        values,
        params: FamilyParams::default(),
    })
}

/// Replaces the decaying tail of a forward-recurrence column by the same
/// recurrence run downward from the top order.
///
/// `d` and `e` are the diagonal and off-diagonal of the symmetric form
/// `lambda q_p = e_{p-1} q_{p-1} + d_p q_p + e_p q_{p+1}` for `p = 0..=n`.
/// The two sweeps meet where the column peaks (smallest twist pivot); the
/// forward values fix the scale there.
fn join_from_top(d: &[f64], e: &[f64], lambda: f64, forward: &[f64]) -> Vec<f64> {
    let len = d.len();
    let tiny = f64::EPSILON * d.iter().chain(e).fold(1.0f64, |m, v| m.max(v.abs()));
    let guard = |v: f64| if v.abs() < tiny { tiny } else { v };
    let mut down = vec![0.0; len];
    down[0] = guard(d[0] - lambda);
    for i in 1..len {
        down[i] = guard(d[i] - lambda - e[i - 1] * e[i - 1] / down[i - 1]);
    }
    let mut up = vec![0.0; len];
    up[len - 1] = guard(d[len - 1] - lambda);
    for i in (0..len - 1).rev() {
        up[i] = guard(d[i] - lambda - e[i] * e[i] / up[i + 1]);
    }
    let twist = (0..len)
        .min_by(|&i, &j| {
            let gi = (down[i] + up[i] - (d[i] - lambda)).abs();
            let gj = (down[j] + up[j] - (d[j] - lambda)).abs();
            gi.total_cmp(&gj)
        })
        .unwrap_or(0);
    let mut out = forward.to_vec();
    for i in twist..len - 1 {
        out[i + 1] = -e[i] / up[i + 1] * out[i];
    }
    out
}

/// `ln w(x)` for the binomial Krawtchouk weight.
fn krawtchouk_ln_weight(x: usize, n: usize, alpha: f64) -> f64 {
    ln_factorial(n) - ln_factorial(x) - ln_factorial(n - x)
        + x as f64 * alpha.ln()
        + (n - x) as f64 * (1.0 - alpha).ln()
}

/// Krawtchouk table, recursing over the order at every sample.
pub fn krawtchouk_table(n: usize, order: usize, alpha: f64) -> Result<KernelTable> {
    let params = FamilyParams { krawtchouk_alpha: alpha, ..FamilyParams::default() };
    params.validate_krawtchouk()?;
    check_order(n, order)?;
    let big_n = (n - 1) as f64;
    let diag: Vec<f64> = (0..n).map(|p| alpha * (big_n - p as f64) + p as f64 * (1.0 - alpha)).collect();
    let off: Vec<f64> = (0..n - 1)
        .map(|p| -(alpha * (1.0 - alpha) * (p as f64 + 1.0) * (big_n - p as f64)).sqrt())
        .collect();
    let mut values = Array2::zeros((order + 1, n));
    for x in 0..n {
        let xf = x as f64;
        let ln_sqrt_w = 0.5 * krawtchouk_ln_weight(x, n - 1, alpha);
        let seed1 = if n > 1 {
            (1.0 - xf / (alpha * big_n)) * (alpha * big_n / (1.0 - alpha)).sqrt()
        } else {
            0.0
        };
        let col = scaled_recurrence(ln_sqrt_w, 1.0, seed1, n, |k, km2, km1| {
            let p = (k - 1) as f64;
            let a = (alpha * (big_n - p) / ((1.0 - alpha) * (p + 1.0))).sqrt()
                * (big_n * alpha - 2.0 * p * alpha + p - xf);
            let b = (alpha * alpha * (big_n - p) * (big_n - p + 1.0)
                / ((1.0 - alpha) * (1.0 - alpha) * (p + 1.0) * p))
                .sqrt()
                * (p * (1.0 - alpha));
            (a * km1 - b * km2) / (alpha * (big_n - p))
        });
        let col = join_from_top(&diag, &off, xf, &col);
        for (p, v) in col.into_iter().take(order + 1).enumerate() {
            values[[p, x]] = v;
        }
    }
    ensure_finite(&values, "krawtchouk table")?;
    Ok(KernelTable {
        family: RectFamily::Krawtchouk,
        max_order: order,
        points: (0..n).map(|x| x as f64).collect(),
        values,
        params,
    })
}

/// `ln w(s)` for the dual Hahn weight.
pub(crate) fn dual_hahn_ln_weight(s: f64, a: f64, b: f64, c: f64) -> f64 {
    ln_abs_gamma(a + s + 1.0) + ln_abs_gamma(c + s + 1.0)
        - ln_abs_gamma(s - a + 1.0)
        - ln_abs_gamma(b - s)
        - ln_abs_gamma(b + s + 1.0)
        - ln_abs_gamma(s - c + 1.0)
}

/// `ln rho(p)` for dual Hahn polynomials.
pub(crate) fn dual_hahn_ln_norm(p: usize, a: f64, b: f64, c: f64) -> f64 {
    let pf = p as f64;
    ln_abs_gamma(a + c + pf + 1.0) - ln_factorial(p) - ln_abs_gamma(b - a - pf) - ln_abs_gamma(b - c - pf)
}

/// Dual Hahn table on the lattice `s = a, a+1, ..., b-1` with `b = a + N`.
pub fn dual_hahn_table(n: usize, order: usize, a: f64, c: f64) -> Result<KernelTable> {
    let params = FamilyParams { hahn_a: a, hahn_c: c, ..FamilyParams::default() };
    params.validate_hahn()?;
    check_order(n, order)?;
    let b = a + n as f64;
    // rho(p) / rho(p+1)
    let ratio = |p: f64| (p + 1.0) / ((a + c + p + 1.0) * (b - a - p - 1.0) * (b - c - p - 1.0));
    let ln_rho0 = dual_hahn_ln_norm(0, a, b, c);
    let diag: Vec<f64> = (0..n)
        .map(|p| {
            let p = p as f64;
            a * b - a * c + b * c + (b - a - c - 1.0) * (2.0 * p + 1.0) - 2.0 * p * p
        })
        .collect();
    let off: Vec<f64> = (0..n - 1)
        .map(|p| {
            let p = p as f64;
            ((p + 1.0) * (a + c + p + 1.0) * (b - a - p - 1.0) * (b - c - p - 1.0)).sqrt()
        })
        .collect();
    let mut values = Array2::zeros((order + 1, n));
    for x in 0..n {
        let s = a + x as f64;
        let lattice = 2.0 * s + 1.0;
        let ln_base = 0.5 * (dual_hahn_ln_weight(s, a, b, c) + lattice.ln() - ln_rho0);
        let w1 = ((s - a) * (s + b) * (s - c) - (a + s + 1.0) * (c + s + 1.0) * (b - s - 1.0)) / lattice;
        let seed1 = if n > 1 { w1 * ratio(0.0).sqrt() } else { 0.0 };
        let col = scaled_recurrence(ln_base, 1.0, seed1, n, |k, km2, km1| {
            let p = (k - 1) as f64;
            let big_a = (s * (s + 1.0) - a * b + a * c - b * c - (b - a - c - 1.0) * (2.0 * p + 1.0)
                + 2.0 * p * p)
                / (p + 1.0);
            let big_b = -(a + c + p) * (b - a - p) * (b - c - p) / (p + 1.0);
            let r1 = ratio(p);
            let r2 = ratio(p - 1.0) * r1;
            big_a * r1.sqrt() * km1 + big_b * r2.sqrt() * km2
        });
        let col = join_from_top(&diag, &off, s * (s + 1.0), &col);
        for (p, v) in col.into_iter().take(order + 1).enumerate() {
            values[[p, x]] = v;
        }
    }
    ensure_finite(&values, "dual hahn table")?;
    Ok(KernelTable {
        family: RectFamily::DualHahn,
        max_order: order,
        points: (0..n).map(|x| (a + x as f64) * (a + x as f64 + 1.0)).collect(),
        values,
        params,
    })
}
