//! Slow closed-form evaluation of every rectangular family through the
//! hypergeometric series. Independent of the recurrences; meant for
//! cross-checking tables at small sizes.

use std::f64::consts::PI;

use super::{FamilyParams, RectFamily};
use crate::error::Result;
use crate::special::{hyp_pfq, pochhammer};

/// `T_p(x)`.
pub fn cheby_cont(p: usize, x: f64) -> Result<f64> {
    let pf = p as f64;
    hyp_pfq(&[-pf, pf], &[0.5], (1.0 - x) / 2.0, 0)
}

/// `P_p(x)`.
pub fn legendre(p: usize, x: f64) -> Result<f64> {
    let pf = p as f64;
    hyp_pfq(&[-pf, pf + 1.0], &[1.0], (1.0 - x) / 2.0, 0)
}

/// `C_p^(alpha)(x)`.
pub fn gegenbauer(p: usize, x: f64, alpha: f64) -> Result<f64> {
    let pf = p as f64;
    let lead = pochhammer(2.0 * alpha, p) / pochhammer(1.0, p);
    Ok(lead * hyp_pfq(&[-pf, pf + 2.0 * alpha], &[alpha + 0.5], (1.0 - x) / 2.0, 0)?)
}

/// Unnormalized discrete Chebyshev `t_p(x; N)`.
pub fn cheby_disc(p: usize, x: usize, n: usize) -> Result<f64> {
    let (pf, xf, nf) = (p as f64, x as f64, n as f64);
    Ok(pochhammer(1.0 - nf, p) * hyp_pfq(&[-pf, -xf, 1.0 + pf], &[1.0, 1.0 - nf], 1.0, 0)?)
}

/// Unnormalized Krawtchouk `K_p(x; alpha, N-1)`.
pub fn krawtchouk(p: usize, x: usize, alpha: f64, n: usize) -> Result<f64> {
    let big_n = (n - 1) as f64;
    hyp_pfq(&[-(p as f64), -(x as f64)], &[-big_n], 1.0 / alpha, 0)
}

/// Unnormalized dual Hahn `w_p(s; a, b, c)`.
pub fn dual_hahn(p: usize, s: f64, a: f64, b: f64, c: f64) -> Result<f64> {
    let pf = p as f64;
    let lead = pochhammer(a - b + 1.0, p) * pochhammer(a + c + 1.0, p) / pochhammer(1.0, p);
    Ok(lead * hyp_pfq(&[-pf, a - s, a + s + 1.0], &[a - b + 1.0, a + c + 1.0], 1.0, 0)?)
}

/// Normalized table entry `k̂_p` at sample index `i` of an `n`-sample axis,
/// evaluated from the closed forms with weights and norms from their definitions.
pub fn normalized(family: RectFamily, p: usize, i: usize, n: usize, params: &FamilyParams) -> Result<f64> {
    let pf = p as f64;
    match family {
        RectFamily::ChebyCont => {
            let x = -1.0 + (2 * i + 1) as f64 / n as f64;
            let rho = if p == 0 { PI } else { PI / 2.0 };
            Ok(cheby_cont(p, x)? * ((1.0 - x * x).powf(-0.5) / rho).sqrt())
        }
        RectFamily::Legendre => {
            let x = -1.0 + (2 * i + 1) as f64 / n as f64;
            Ok(legendre(p, x)? * ((2.0 * pf + 1.0) / 2.0).sqrt())
        }
        RectFamily::Gegenbauer => {
            let x = -1.0 + (2 * i + 1) as f64 / n as f64;
            let al = params.gegenbauer_alpha;
            let g = libm::tgamma;
            let rho = PI * 2f64.powf(1.0 - 2.0 * al) * g(pf + 2.0 * al)
                / (g(pf + 1.0) * (pf + al) * g(al) * g(al));
            let w = (1.0 - x * x).powf(al - 0.5);
            Ok(gegenbauer(p, x, al)? * (w / rho).sqrt())
        }
        RectFamily::ChebyDisc => {
            let nf = n as f64;
            let rho = nf * (1..=p).map(|k| nf * nf - (k * k) as f64).product::<f64>() / (2.0 * pf + 1.0);
            Ok(cheby_disc(p, i, n)? / rho.sqrt())
        }
        RectFamily::Krawtchouk => {
            let al = params.krawtchouk_alpha;
            let big_n = (n - 1) as f64;
            let binom = pochhammer(1.0, n - 1) / (pochhammer(1.0, i) * pochhammer(1.0, n - 1 - i));
            let w = binom * al.powi(i as i32) * (1.0 - al).powf(big_n - i as f64);
            let rho = (-1f64).powi(p as i32) * ((1.0 - al) / al).powi(p as i32) * pochhammer(1.0, p)
                / pochhammer(-big_n, p);
            Ok(krawtchouk(p, i, al, n)? * (w / rho).sqrt())
        }
        RectFamily::DualHahn => {
            let (a, c) = (params.hahn_a, params.hahn_c);
            let b = a + n as f64;
            let s = a + i as f64;
            let g = libm::tgamma;
            let w = g(a + s + 1.0) * g(c + s + 1.0)
                / (g(s - a + 1.0) * g(b - s) * g(b + s + 1.0) * g(s - c + 1.0));
            let rho = g(a + c + pf + 1.0) / (g(pf + 1.0) * g(b - a - pf) * g(b - c - pf));
            Ok(dual_hahn(p, s, a, b, c)? * (w * (2.0 * s + 1.0) / rho).sqrt())
        }
    }
}
