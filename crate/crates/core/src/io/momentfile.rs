//! Moment files: `#`-prefixed `key=value` header lines followed by CSV.
//!
//! Rectangular payloads hold one matrix row per x-order. Disk payloads have a
//! `p,lambda,re,im` column header and one line per `|lambda| <= p`.

use std::fs;
use std::io::Write;
use std::path::Path;

use ndarray::Array2;
use num_complex::Complex64;

use crate::disk::DiskFamily;
use crate::engine::{DiskMoments, MomentSet, RectMoments};
use crate::error::{MomentError, Result};
use crate::geometry::Centroid;
use crate::rect::{FamilyParams, RectFamily};

const MAGIC: &str = "# imoments moment file";

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn params_line(p: &FamilyParams) -> String {
    format!(
        "gegenbauer_alpha={};krawtchouk_alpha={};hahn_a={};hahn_c={};gpzm_alpha={}",
        p.gegenbauer_alpha, p.krawtchouk_alpha, p.hahn_a, p.hahn_c, p.gpzm_alpha
    )
}

fn parse_params(s: &str) -> Result<FamilyParams> {
    let mut p = FamilyParams::default();
    for item in s.split(';').filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| MomentError::Format(format!("bad parameter entry '{item}'")))?;
        let v: f64 = v.parse().map_err(|_| MomentError::Format(format!("bad parameter value '{item}'")))?;
        match k {
            "gegenbauer_alpha" => p.gegenbauer_alpha = v,
            "krawtchouk_alpha" => p.krawtchouk_alpha = v,
            "hahn_a" => p.hahn_a = v,
            "hahn_c" => p.hahn_c = v,
            "gpzm_alpha" => p.gpzm_alpha = v,
            _ => return Err(MomentError::Format(format!("unknown parameter '{k}'"))),
        }
    }
    Ok(p)
}

/// Renders a moment set in the moment-file format.
pub fn format_moments(m: &MomentSet) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    match m {
        MomentSet::Rect(r) => {
            let (p, q) = r.orders();
            out.push_str("# kind=rect\n");
            out.push_str(&format!("# family={},{}\n", r.family_x, r.family_y));
            out.push_str(&format!("# order={p}x{q}\n"));
            out.push_str(&format!("# params={}\n", params_line(&r.params)));
            out.push_str(&format!("# dims={}x{}\n", r.width, r.height));
            for row in r.values.outer_iter() {
                let line: Vec<String> = row.iter().map(|&v| num(v)).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
        }
        MomentSet::Disk(d) => {
            let order = d.order();
            out.push_str("# kind=disk\n");
            out.push_str(&format!("# family={}\n", d.family));
            out.push_str(&format!("# order={order}\n"));
            out.push_str(&format!("# params={}\n", params_line(&d.params)));
            out.push_str(&format!("# dims={}x{}\n", d.width, d.height));
            out.push_str(&format!("# center={},{},{}\n", d.center.xbar, d.center.ybar, d.center.mass));
            out.push_str("p,lambda,re,im\n");
            for p in 0..=order {
                for l in -(p as i64)..=p as i64 {
                    let v = d.get(p, l);
                    out.push_str(&format!("{p},{l},{},{}\n", num(v.re), num(v.im)));
                }
            }
        }
    }
    out
}

pub fn save_moments(m: &MomentSet, path: impl AsRef<Path>) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(format_moments(m).as_bytes())?;
    Ok(())
}

pub fn load_moments(path: impl AsRef<Path>) -> Result<MomentSet> {
    parse_moments(&fs::read_to_string(path)?)
}

struct Header {
    kind: String,
    family: String,
    order: String,
    params: FamilyParams,
    dims: (usize, usize),
    center: Option<Centroid>,
}

fn parse_pair(s: &str, sep: char, what: &str) -> Result<(String, String)> {
    s.split_once(sep)
        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
        .ok_or_else(|| MomentError::Format(format!("malformed {what} '{s}'")))
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| MomentError::Format(format!("malformed {what} '{s}'")))
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| MomentError::Format(format!("malformed {what} '{s}'")))
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = &'a str>, payload: &mut Vec<&'a str>) -> Result<Header> {
    let mut kind = None;
    let mut family = None;
    let mut order = None;
    let mut params = FamilyParams::default();
    let mut dims = None;
    let mut center = None;
    let mut saw_magic = false;
    for line in lines.by_ref() {
        let line = line.trim_end_matches('\r');
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if line == MAGIC {
                saw_magic = true;
                continue;
            }
            let Some((k, v)) = rest.split_once('=') else { continue };
            match k.trim() {
                "kind" => kind = Some(v.trim().to_string()),
                "family" => family = Some(v.trim().to_string()),
                "order" => order = Some(v.trim().to_string()),
                "params" => params = parse_params(v.trim())?,
                "dims" => {
                    let (w, h) = parse_pair(v, 'x', "dims")?;
                    dims = Some((parse_usize(&w, "width")?, parse_usize(&h, "height")?));
                }
                "center" => {
                    let parts: Vec<&str> = v.split(',').collect();
                    if !(2..=3).contains(&parts.len()) {
                        return Err(MomentError::Format(format!("malformed center '{v}'")));
                    }
                    let mut c = Centroid::new(parse_f64(parts[0], "center")?, parse_f64(parts[1], "center")?);
                    if let Some(m) = parts.get(2) {
                        c.mass = parse_f64(m, "center")?;
                    }
                    center = Some(c);
                }
                _ => {}
            }
        } else if !line.trim().is_empty() {
            payload.push(line);
        }
    }
    if !saw_magic {
        return Err(MomentError::Format("missing moment file header".into()));
    }
    let missing = |k: &str| MomentError::Format(format!("header lacks '{k}'"));
    Ok(Header {
        kind: kind.ok_or_else(|| missing("kind"))?,
        family: family.ok_or_else(|| missing("family"))?,
        order: order.ok_or_else(|| missing("order"))?,
        params,
        dims: dims.ok_or_else(|| missing("dims"))?,
        center,
    })
}

/// Parses moment-file text, re-checking shape and disk conjugate symmetry.
pub fn parse_moments(text: &str) -> Result<MomentSet> {
    let mut payload = Vec::new();
    let header = parse_header(&mut text.lines(), &mut payload)?;
    let (width, height) = header.dims;
    match header.kind.as_str() {
        "rect" => {
            let (fx, fy) = parse_pair(&header.family, ',', "family")?;
            let family_x: RectFamily = fx.parse().map_err(|_| MomentError::Format(format!("unknown family '{fx}'")))?;
            let family_y: RectFamily = fy.parse().map_err(|_| MomentError::Format(format!("unknown family '{fy}'")))?;
            let (p, q) = parse_pair(&header.order, 'x', "order")?;
            let (p, q) = (parse_usize(&p, "order")?, parse_usize(&q, "order")?);
            if payload.len() != p + 1 {
                return Err(MomentError::Format(format!("expected {} moment rows, found {}", p + 1, payload.len())));
            }
            let mut values = Array2::zeros((p + 1, q + 1));
            for (i, line) in payload.iter().enumerate() {
                let cells: Vec<&str> = line.split(',').collect();
                if cells.len() != q + 1 {
                    return Err(MomentError::Format(format!(
                        "row {i} has {} values, expected {}",
                        cells.len(),
                        q + 1
                    )));
                }
                for (j, c) in cells.iter().enumerate() {
                    let v = parse_f64(c, "moment")?;
                    if !v.is_finite() {
                        return Err(MomentError::InvariantViolation(format!("non-finite moment at ({i}, {j})")));
                    }
                    values[[i, j]] = v;
                }
            }
            Ok(MomentSet::Rect(RectMoments { family_x, family_y, params: header.params, width, height, values }))
        }
        "disk" => {
            let family: DiskFamily = header
                .family
                .parse()
                .map_err(|_| MomentError::Format(format!("unknown family '{}'", header.family)))?;
            let order = parse_usize(&header.order, "order")?;
            let center = header.center.ok_or_else(|| MomentError::Format("disk file lacks 'center'".into()))?;
            let rows: Vec<&str> = payload.into_iter().filter(|l| !l.starts_with("p,")).collect();
            let expect = (order + 1) * (order + 1);
            if rows.len() != expect {
                return Err(MomentError::Format(format!("expected {expect} moment lines, found {}", rows.len())));
            }
            let big_p = order as i64;
            let mut values = Array2::from_elem((order + 1, 2 * order + 1), Complex64::new(0.0, 0.0));
            let mut seen = Array2::from_elem((order + 1, 2 * order + 1), false);
            for line in rows {
                let cells: Vec<&str> = line.split(',').collect();
                if cells.len() != 4 {
                    return Err(MomentError::Format(format!("malformed moment line '{line}'")));
                }
                let p = parse_usize(cells[0].trim(), "order")?;
                let l: i64 = cells[1].trim().parse().map_err(|_| MomentError::Format(format!("bad repetition '{}'", cells[1])))?;
                if p > order || l.abs() > p as i64 {
                    return Err(MomentError::Format(format!("moment ({p}, {l}) outside order {order}")));
                }
                let v = Complex64::new(parse_f64(cells[2], "moment")?, parse_f64(cells[3], "moment")?);
                let idx = [p, (l + big_p) as usize];
                if seen[idx] {
                    return Err(MomentError::Format(format!("duplicate moment ({p}, {l})")));
                }
                seen[idx] = true;
                values[idx] = v;
            }
            let m = DiskMoments { family, params: header.params, width, height, center, values };
            check_conjugate_symmetry(&m)?;
            Ok(MomentSet::Disk(m))
        }
        other => Err(MomentError::Format(format!("unknown kind '{other}'"))),
    }
}

fn check_conjugate_symmetry(m: &DiskMoments) -> Result<()> {
    let scale = m.values.iter().fold(0.0f64, |a, v| a.max(v.norm()));
    let tol = 1e-9 * scale;
    for p in 0..=m.order() {
        for l in 0..=p as i64 {
            let pos = m.get(p, l);
            if !pos.re.is_finite() || !pos.im.is_finite() {
                return Err(MomentError::InvariantViolation(format!("non-finite moment ({p}, {l})")));
            }
            if (m.get(p, -l) - pos.conj()).norm() > tol {
                return Err(MomentError::InvariantViolation(format!(
                    "M({p},-{l}) is not the conjugate of M({p},{l})"
                )));
            }
        }
    }
    Ok(())
}
