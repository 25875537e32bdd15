use std::collections::BTreeMap;

use imoments::engine::MomentKind;
use imoments::{Centroid, FamilyParams};

use crate::args::Common;
use crate::error::CliError;

const KEYS: [&str; 8] = ["type", "order", "alpha", "hahn-a", "hahn-c", "resolution", "center", "threads"];

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", i + 1)))?;
        let k = k.trim().replace('_', "-");
        if !KEYS.contains(&k.as_str()) {
            return Err(CliError::usage(format!("config line {}: unknown key '{k}'", i + 1)));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

fn number<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::usage(format!("invalid value '{v}' for {key}")))
}

/// Fills options missing from the command line with values from `--config`.
pub fn merge(mut c: Common) -> Result<Common, CliError> {
    let Some(path) = c.config.clone() else { return Ok(c) };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let file = parse_config(&text)?;
    let get = |k: &str| file.get(k).cloned();
    c.kind = c.kind.or(get("type"));
    c.order = c.order.or(get("order"));
    c.center = c.center.or(get("center"));
    if c.alpha.is_none() {
        c.alpha = get("alpha").map(|v| number("alpha", &v)).transpose()?;
    }
    if c.hahn_a.is_none() {
        c.hahn_a = get("hahn-a").map(|v| number("hahn-a", &v)).transpose()?;
    }
    if c.hahn_c.is_none() {
        c.hahn_c = get("hahn-c").map(|v| number("hahn-c", &v)).transpose()?;
    }
    if c.resolution.is_none() {
        c.resolution = get("resolution").map(|v| number("resolution", &v)).transpose()?;
    }
    if c.threads.is_none() {
        c.threads = get("threads").map(|v| number("threads", &v)).transpose()?;
    }
    Ok(c)
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub kind: MomentKind,
    pub order: Option<(usize, Option<usize>)>,
    pub params: FamilyParams,
    pub resolution: usize,
    pub center: Option<Centroid>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_common(c: &Common, default_kind: &str) -> Result<Self, CliError> {
        let kind: MomentKind = c.kind.as_deref().unwrap_or(default_kind).parse()?;
        let order = c.order.as_deref().map(parse_order).transpose()?;
        if let (MomentKind::Disk(_), Some((_, Some(_)))) = (kind, order) {
            return Err(CliError::usage("disk families take a single order P"));
        }
        let params = family_params(kind, c)?;
        let resolution = c.resolution.unwrap_or(20);
        if resolution == 0 {
            return Err(CliError::usage("--resolution must be at least 1"));
        }
        let center = c.center.as_deref().map(parse_center).transpose()?.flatten();
        let threads = match c.threads {
            Some(t) => Some(t),
            None => match std::env::var("IM_THREADS") {
                Ok(v) if !v.trim().is_empty() => Some(number("IM_THREADS", v.trim())?),
                _ => None,
            },
        };
        if threads == Some(0) {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        Ok(Self { kind, order, params, resolution, center, threads })
    }

    /// Orders along x and y; a single `P` applies to both.
    pub fn rect_order(&self, default: usize) -> (usize, usize) {
        match self.order {
            Some((p, q)) => (p, q.unwrap_or(p)),
            None => (default, default),
        }
    }

    pub fn disk_order(&self, default: usize) -> usize {
        self.order.map_or(default, |(p, _)| p)
    }
}

pub fn parse_order(s: &str) -> Result<(usize, Option<usize>), CliError> {
    let bad = || CliError::usage(format!("invalid order '{s}', expected P or PxQ"));
    match s.split_once(['x', 'X']) {
        Some((p, q)) => Ok((p.trim().parse().map_err(|_| bad())?, Some(q.trim().parse().map_err(|_| bad())?))),
        None => Ok((s.trim().parse().map_err(|_| bad())?, None)),
    }
}

/// `None` for `auto`.
pub fn parse_center(s: &str) -> Result<Option<Centroid>, CliError> {
    if s.trim() == "auto" {
        return Ok(None);
    }
    let bad = || CliError::usage(format!("invalid center '{s}', expected auto or cx,cy"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    let x: f64 = x.trim().parse().map_err(|_| bad())?;
    let y: f64 = y.trim().parse().map_err(|_| bad())?;
    Ok(Some(Centroid::new(x, y)))
}

/// Defaults, with `--alpha` routed to whichever families of `kind` take one.
fn family_params(kind: MomentKind, c: &Common) -> Result<FamilyParams, CliError> {
    use imoments::disk::DiskFamily;
    use imoments::RectFamily;
    let mut p = FamilyParams::default();
    let families: Vec<MomentKind> = match kind {
        MomentKind::Rect { x, y } => vec![MomentKind::rect(x), MomentKind::rect(y)],
        d => vec![d],
    };
    for f in &families {
        match f {
            MomentKind::Rect { x: RectFamily::Gegenbauer, .. } => {
                if let Some(a) = c.alpha {
                    p.gegenbauer_alpha = a;
                }
                p.validate_gegenbauer()?;
            }
            MomentKind::Rect { x: RectFamily::Krawtchouk, .. } => {
                if let Some(a) = c.alpha {
                    p.krawtchouk_alpha = a;
                }
                p.validate_krawtchouk()?;
            }
            MomentKind::Rect { x: RectFamily::DualHahn, .. } => {
                p.hahn_a = c.hahn_a.unwrap_or(p.hahn_a);
                p.hahn_c = c.hahn_c.unwrap_or(p.hahn_c);
                p.validate_hahn()?;
            }
            MomentKind::Disk(DiskFamily::Gpzm) => {
                if let Some(a) = c.alpha {
                    p.gpzm_alpha = a;
                }
                p.validate_gpzm()?;
            }
            _ => {}
        }
    }
    Ok(p)
}
