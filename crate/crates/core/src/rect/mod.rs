//! Kernel tables for the six families that are orthogonal over a rectangle.
//!
//! A [`KernelTable`] holds `k̂_p(x)` for orders `0..=P` (rows) at every sample
//! point of one image axis (columns). The weight and squared norm are folded
//! into the values, so for the discrete families the rows are exactly
//! orthonormal vectors, and for the continuous families `rows * dx` are
//! orthonormal up to midpoint-quadrature error.

mod continuous;
mod discrete;
pub mod reference;

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;

use crate::error::{MomentError, Result};

pub use continuous::{cheby_cont_table, gegenbauer_table, legendre_table};
pub use discrete::{cheby_disc_table, dual_hahn_table, krawtchouk_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RectFamily {
    /// Continuous Chebyshev (first kind).
    ChebyCont,
    Legendre,
    Gegenbauer,
    /// Discrete Chebyshev (Tchebichef).
    ChebyDisc,
    Krawtchouk,
    DualHahn,
}

impl RectFamily {
    pub const ALL: [RectFamily; 6] = [
        RectFamily::ChebyDisc,
        RectFamily::ChebyCont,
        RectFamily::Legendre,
        RectFamily::Gegenbauer,
        RectFamily::Krawtchouk,
        RectFamily::DualHahn,
    ];

    pub fn is_discrete(self) -> bool {
        matches!(self, RectFamily::ChebyDisc | RectFamily::Krawtchouk | RectFamily::DualHahn)
    }

    pub fn token(self) -> &'static str {
        match self {
            RectFamily::ChebyCont => "chebycont",
            RectFamily::Legendre => "legend",
            RectFamily::Gegenbauer => "gegen",
            RectFamily::ChebyDisc => "cheby",
            RectFamily::Krawtchouk => "krawt",
            RectFamily::DualHahn => "hahn",
        }
    }

    /// Parameter string for reports, e.g. `alpha=2` for Gegenbauer.
    pub fn describe_params(self, params: &FamilyParams) -> String {
        match self {
            RectFamily::Gegenbauer => format!("alpha={}", params.gegenbauer_alpha),
            RectFamily::Krawtchouk => format!("alpha={}", params.krawtchouk_alpha),
            RectFamily::DualHahn => format!("a={};c={}", params.hahn_a, params.hahn_c),
            _ => String::new(),
        }
    }
}

impl fmt::Display for RectFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for RectFamily {
    type Err = MomentError;

    fn from_str(s: &str) -> Result<Self> {
        RectFamily::ALL
            .into_iter()
            .find(|f| f.token() == s)
            .ok_or_else(|| MomentError::InvalidParam(format!("unknown rectangular family '{s}'")))
    }
}

/// Free parameters of the parameterized families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    /// Gegenbauer `alpha > -1/2`, `alpha != 0`.
    pub gegenbauer_alpha: f64,
    /// Krawtchouk `alpha` in `(0, 1)`.
    pub krawtchouk_alpha: f64,
    /// Dual Hahn lattice origin `a > -1/2`; `b = a + N`.
    pub hahn_a: f64,
    /// Dual Hahn `c` with `|c| < 1 + a`.
    pub hahn_c: f64,
    /// Generalized pseudo-Zernike `alpha >= 0`.
    pub gpzm_alpha: f64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self {
            gegenbauer_alpha: 2.0,
            krawtchouk_alpha: 0.5,
            hahn_a: 0.0,
            hahn_c: 0.0,
            gpzm_alpha: 1.0,
        }
    }
}

impl FamilyParams {
    pub fn validate_gegenbauer(&self) -> Result<()> {
        let a = self.gegenbauer_alpha;
        if !a.is_finite() || a <= -0.5 || a == 0.0 {
            return Err(MomentError::InvalidParam(format!(
                "gegenbauer alpha must satisfy alpha > -1/2 and alpha != 0, got {a}"
            )));
        }
        Ok(())
    }

    pub fn validate_krawtchouk(&self) -> Result<()> {
        let a = self.krawtchouk_alpha;
        if !(a > 0.0 && a < 1.0) {
            return Err(MomentError::InvalidParam(format!(
                "krawtchouk alpha must lie in (0, 1), got {a}"
            )));
        }
        Ok(())
    }

    pub fn validate_hahn(&self) -> Result<()> {
        let (a, c) = (self.hahn_a, self.hahn_c);
        if !a.is_finite() || a <= -0.5 {
            return Err(MomentError::InvalidParam(format!("dual hahn a must exceed -1/2, got {a}")));
        }
        if c.is_nan() || c.abs() >= 1.0 + a {
            return Err(MomentError::InvalidParam(format!(
                "dual hahn c must satisfy |c| < 1 + a, got a={a}, c={c}"
            )));
        }
        Ok(())
    }

    pub fn validate_gpzm(&self) -> Result<()> {
        let a = self.gpzm_alpha;
        if !a.is_finite() || a < 0.0 {
            return Err(MomentError::InvalidParam(format!("gpzm alpha must be >= 0, got {a}")));
        }
        Ok(())
    }
}

/// Normalized polynomial values `k̂_p(x)` for one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable {
    pub family: RectFamily,
    pub max_order: usize,
    /// Sample points: scaled midpoints for continuous families, `0..N` for
    /// Chebyshev/Krawtchouk, lattice positions `s = a..b-1` for dual Hahn.
    pub points: Vec<f64>,
    /// `(max_order + 1) x N`, row `p` holds `k̂_p` at every point.
    pub values: Array2<f64>,
    pub params: FamilyParams,
}

impl KernelTable {
    pub fn sample_count(&self) -> usize {
        self.values.ncols()
    }

    pub fn is_discrete(&self) -> bool {
        self.family.is_discrete()
    }

    /// Quadrature cell width folded into moments: `2/N` for continuous
    /// families, 1 for discrete ones.
    pub fn cell_width(&self) -> f64 {
        if self.is_discrete() {
            1.0
        } else {
            2.0 / self.sample_count() as f64
        }
    }

    /// `V * Vᵀ * cell_width`, the identity for an orthonormal table.
    pub fn gram(&self) -> Array2<f64> {
        self.values.dot(&self.values.t()) * self.cell_width()
    }

    /// Largest `|G - I|` entry of [`KernelTable::gram`].
    pub fn orthonormality_error(&self) -> f64 {
        let g = self.gram();
        g.indexed_iter()
            .map(|((i, j), &v)| (v - if i == j { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max)
    }

    /// Writes the table as CSV: a `# family,P,N,params` header then one row per order.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "# {},{},{},{}",
            self.family,
            self.max_order,
            self.sample_count(),
            self.family.describe_params(&self.params)
        )?;
        for row in self.values.outer_iter() {
            let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// Builds the table of `family` for an axis with `n` samples, orders `0..=order`.
pub fn build_table(family: RectFamily, n: usize, order: usize, params: &FamilyParams) -> Result<KernelTable> {
    if n == 0 {
        return Err(MomentError::InvalidParam("axis needs at least one sample".into()));
    }
    match family {
        RectFamily::ChebyCont => Ok(cheby_cont_table(&crate::geometry::midpoints(n), order)),
        RectFamily::Legendre => Ok(legendre_table(&crate::geometry::midpoints(n), order)),
        RectFamily::Gegenbauer => {
            gegenbauer_table(&crate::geometry::midpoints(n), order, params.gegenbauer_alpha)
        }
        RectFamily::ChebyDisc => cheby_disc_table(n, order),
        RectFamily::Krawtchouk => krawtchouk_table(n, order, params.krawtchouk_alpha),
        RectFamily::DualHahn => dual_hahn_table(n, order, params.hahn_a, params.hahn_c),
    }
}

/// Evaluates `t_0 .. t_{len-1}` of a three-term recurrence whose true values
/// are `exp(log_base) * t_k`. Terms are kept rescaled by powers of two so
/// neither tiny seeds nor fast growth leave the `f64` range; the result is
/// recombined in the log domain.
pub(crate) fn scaled_recurrence(
    log_base: f64,
    seed0: f64,
    seed1: f64,
    len: usize,
    mut next: impl FnMut(usize, f64, f64) -> f64,
) -> Vec<f64> {
    const BIG: f64 = 1e150;
    let ln_big = BIG.ln();
    let mut out = Vec::with_capacity(len);
    let mut offset = 0.0;
    let emit = |t: f64, offset: f64| -> f64 {
        if t == 0.0 {
            0.0
        } else {
            t.signum() * (t.abs().ln() + log_base + offset).exp()
        }
    };
    if len == 0 {
        return out;
    }
    out.push(emit(seed0, 0.0));
    if len == 1 {
        return out;
    }
    let (mut prev, mut cur) = (seed0, seed1);
    out.push(emit(cur, 0.0));
    for k in 2..len {
        let t = next(k, prev, cur);
        prev = cur;
        cur = t;
        let mag = prev.abs().max(cur.abs());
        if mag > BIG {
            prev /= BIG;
            cur /= BIG;
            offset += ln_big;
        } else if mag < 1.0 / BIG && mag > 0.0 {
            prev *= BIG;
            cur *= BIG;
            offset -= ln_big;
        }
        out.push(emit(cur, offset));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        for f in RectFamily::ALL {
            assert_eq!(f.token().parse::<RectFamily>().unwrap(), f);
        }
        assert!("zernike".parse::<RectFamily>().is_err());
    }

    #[test]
    fn param_validation() {
        let mut p = FamilyParams::default();
        assert!(p.validate_gegenbauer().is_ok());
        p.gegenbauer_alpha = 0.0;
        assert!(p.validate_gegenbauer().is_err());
        p.gegenbauer_alpha = -0.6;
        assert!(p.validate_gegenbauer().is_err());
        p.krawtchouk_alpha = 1.0;
        assert!(p.validate_krawtchouk().is_err());
        p.hahn_a = 1.0;
        p.hahn_c = 1.9;
        assert!(p.validate_hahn().is_ok());
        p.hahn_c = -2.0;
        assert!(p.validate_hahn().is_err());
        p.hahn_a = -0.5;
        p.hahn_c = 0.0;
        assert!(p.validate_hahn().is_err());
    }

    #[test]
    fn scaled_recurrence_tracks_huge_growth() {
        // t_k = 1e20 * t_{k-1}: scaled terms reach 1e480, true values stay in range
        let vals = scaled_recurrence(-700.0, 1.0, 1e20, 25, |_, _, cur| cur * 1e20);
        for (k, v) in vals.iter().enumerate() {
            let expect = (-700.0 + k as f64 * 20.0 * 10f64.ln()).exp();
            assert!((v - expect).abs() <= 1e-10 * expect, "k={k}");
        }
    }

    #[test]
    fn recurrences_match_closed_forms() {
        let params = [
            FamilyParams::default(),
            FamilyParams { gegenbauer_alpha: 0.75, krawtchouk_alpha: 0.3, hahn_a: 1.0, hahn_c: 0.5, ..FamilyParams::default() },
        ];
        for params in &params {
            for family in RectFamily::ALL {
                for n in 1..=8 {
                    let order = 5.min(n - 1);
                    let t = build_table(family, n, order, params).unwrap();
                    for p in 0..=order {
                        for i in 0..n {
                            let want = reference::normalized(family, p, i, n, params).unwrap();
                            let got = t.values[[p, i]];
                            assert!((got - want).abs() < 1e-9, "{family} n={n} p={p} i={i}: {got} vs {want}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn discrete_grams_up_to_64() {
        for n in [8, 16, 32, 64] {
            let p = FamilyParams::default();
            assert!(build_table(RectFamily::ChebyDisc, n, n - 1, &p).unwrap().orthonormality_error() < 1e-8);
            assert!(build_table(RectFamily::Krawtchouk, n, n - 1, &p).unwrap().orthonormality_error() < 1e-8);
            assert!(build_table(RectFamily::DualHahn, n, n - 1, &p).unwrap().orthonormality_error() < 1e-6);
        }
    }

    #[test]
    fn csv_dump_has_header_and_rows() {
        let t = build_table(RectFamily::ChebyDisc, 4, 2, &FamilyParams::default()).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# cheby,2,4,");
        assert_eq!(lines.len(), 4);
        let parsed: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(parsed, t.values.row(0).to_vec());
    }
}
