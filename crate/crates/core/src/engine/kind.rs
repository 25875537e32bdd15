use std::fmt;
use std::str::FromStr;

use crate::disk::DiskFamily;
use crate::error::{MomentError, Result};
use crate::rect::RectFamily;

/// A rectangular family pair or a disk family, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    Rect { x: RectFamily, y: RectFamily },
    Disk(DiskFamily),
}

impl MomentKind {
    pub fn rect(family: RectFamily) -> Self {
        MomentKind::Rect { x: family, y: family }
    }
}

impl fmt::Display for MomentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentKind::Rect { x, y } if x == y => write!(f, "{x}"),
            MomentKind::Rect { x, y } => write!(f, "{x},{y}"),
            MomentKind::Disk(d) => write!(f, "{d}"),
        }
    }
}

fn token(s: &str) -> Result<MomentKind> {
    if let Ok(r) = s.parse::<RectFamily>() {
        return Ok(MomentKind::rect(r));
    }
    s.parse::<DiskFamily>()
        .map(MomentKind::Disk)
        .map_err(|_| MomentError::InvalidParam(format!("unknown moment type '{s}'")))
}

/// Accepts `family` or `xfamily,yfamily`. Pairs must be two rectangular
/// families of the same class.
impl FromStr for MomentKind {
    type Err = MomentError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [one] => token(one),
            [a, b] => match (token(a)?, token(b)?) {
                (MomentKind::Rect { x, .. }, MomentKind::Rect { x: y, .. }) => {
                    if x.is_discrete() != y.is_discrete() {
                        return Err(MomentError::MixedFamilyClass(a.to_string(), b.to_string()));
                    }
                    Ok(MomentKind::Rect { x, y })
                }
                _ => Err(MomentError::MixedFamilyClass(a.to_string(), b.to_string())),
            },
            _ => Err(MomentError::InvalidParam(format!("expected one or two families, got '{s}'"))),
        }
    }
}
