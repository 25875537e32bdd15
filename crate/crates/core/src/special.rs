//! Pochhammer symbols and the generalized hypergeometric series.
//!
//! `hyp_pfq` is the closed-form definition every polynomial family reduces
//! to. It is slow and loses precision for large parameters, so the kernel
//! tables use recurrences and this series only serves as a cross-check.

use crate::error::{MomentError, Result};

/// Rising factorial `(q)_n = q (q + 1) ... (q + n - 1)`, with `(q)_0 = 1`.
pub fn pochhammer(q: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (q + k as f64))
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma needs a positive argument, got {x}");
    libm::lgamma_r(x).0
}

/// `ln |Gamma(x)|`, valid for any `x` that is not a non-positive integer.
pub fn ln_abs_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// `ln (q)_n` for `q > 0`.
pub fn ln_pochhammer(q: f64, n: usize) -> f64 {
    ln_gamma(q + n as f64) - ln_gamma(q)
}

fn is_non_positive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// Generalized hypergeometric series `pFq(a; b; z)`.
///
/// The series is summed exactly when some numerator parameter is a
/// non-positive integer. Otherwise it needs `|z| < 1` and is truncated after
/// `terms` terms.
pub fn hyp_pfq(a: &[f64], b: &[f64], z: f64, terms: usize) -> Result<f64> {
    let terminating = a.iter().any(|&ai| is_non_positive_integer(ai));
    if !terminating && z.abs() >= 1.0 {
        return Err(MomentError::NonTerminating);
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut k = 0usize;
    loop {
        if !terminating && k + 1 >= terms {
            break;
        }
        let kf = k as f64;
        let num: f64 = a.iter().map(|ai| ai + kf).product();
        if num == 0.0 {
            break;
        }
        let den: f64 = b.iter().map(|bi| bi + kf).product();
        if den == 0.0 {
            return Err(MomentError::InvalidParam(
                "hypergeometric denominator parameter hits zero before termination".into(),
            ));
        }
        term *= num / den * z / (kf + 1.0);
        sum += term;
        k += 1;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(-3.7, 0), 1.0);
        assert_eq!(pochhammer(3.0, 2), 12.0);
        assert_eq!(pochhammer(3.0, 2), 3.0 * 4.0);
        assert_eq!(pochhammer(1.0, 4), 24.0);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
    }

    #[test]
    fn log_forms_agree() {
        for &(q, n) in &[(0.5, 7usize), (3.0, 10), (2.25, 1)] {
            let direct = pochhammer(q, n).ln();
            assert!((ln_pochhammer(q, n) - direct).abs() < 1e-12);
        }
        assert!((ln_factorial(10) - 3628800f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn hypergeometric_examples() {
        assert_eq!(hyp_pfq(&[0.3, 1.7], &[2.2], 0.0, 50).unwrap(), 1.0);

        let x = 0.5;
        let v = hyp_pfq(&[-2.0, 2.0], &[0.5], (1.0 - x) / 2.0, 0).unwrap();
        assert!((v - (2.0 * x.acos()).cos()).abs() < 1e-14);
        assert!((v + 0.5).abs() < 1e-14);

        let v = hyp_pfq(&[1.0, 1.0], &[2.0], 0.5, 200).unwrap();
        let closed = -(1.0f64 - 0.5).ln() / 0.5;
        assert!((v - closed).abs() < 1e-10);
        assert!((v - 2.0 * 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn non_terminating_outside_unit_disk() {
        assert!(matches!(
            hyp_pfq(&[0.5, 1.5], &[2.0], 1.0, 100),
            Err(MomentError::NonTerminating)
        ));
        // terminating series are fine at any z
        assert!(hyp_pfq(&[-3.0, 1.5], &[2.0], 7.0, 0).is_ok());
    }
}
