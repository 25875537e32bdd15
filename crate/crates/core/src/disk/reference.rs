//! Explicit-sum forms of the disk radials, for cross-checking the recurrences.

use crate::special::pochhammer;

fn factorial(n: usize) -> f64 {
    pochhammer(1.0, n)
}

/// Unnormalized GPZM radial `R_{p,lambda}^alpha(r)` from its finite sum.
pub fn gpzm_radial_sum(p: usize, lambda: i64, alpha: f64, r: f64) -> f64 {
    let l = lambda.unsigned_abs() as usize;
    assert!(l <= p, "repetition exceeds order");
    let lead = factorial(p + l + 1) / pochhammer(alpha + 1.0, p + l + 1);
    let sum: f64 = (0..=p - l)
        .map(|s| {
            let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
            sign * pochhammer(alpha + 1.0, 2 * p + 1 - s) / (factorial(s) * factorial(p - l - s) * factorial(p + l + 1 - s))
                * r.powi((p - s) as i32)
        })
        .sum();
    lead * sum
}

/// Unnormalized Fourier-Mellin radial `R_p(r)` from its finite sum.
pub fn fourier_mellin_sum(p: usize, r: f64) -> f64 {
    (0..=p)
        .map(|k| {
            let sign = if (p + k).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * factorial(p + k + 1) / (factorial(k) * factorial(k + 1) * factorial(p - k)) * r.powi(k as i32)
        })
        .sum()
}

/// Polynomial part of the Chebyshev-Fourier radial, `U_p(2r - 1)`, from its finite sum.
pub fn cheby_fourier_sum(p: usize, r: f64) -> f64 {
    (0..=p / 2)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * factorial(p - k) / (factorial(k) * factorial(p - 2 * k)) * (2.0 * (2.0 * r - 1.0)).powi((p - 2 * k) as i32)
        })
        .sum()
}
