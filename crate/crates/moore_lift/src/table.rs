//! The Adams mu-family and the image of J as named, periodic entries.

use crate::error::{MooreError, Result};
use chart_core::BiDegree;
use serde::{Deserialize, Serialize};
use std::fmt;

pub fn nu2(k: u32) -> u32 {
    k.trailing_zeros()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `mu_{8k+1}`, `k >= 0`.
    Mu1,
    /// `mu_{8k+2} = h1 mu_{8k+1}`, `k >= 0`.
    Mu2,
    /// `j_{8k-5}`, `k >= 1`.
    J3,
    /// `j_{8k-1}`, `k >= 1`.
    J7,
    /// `j'_{8k-1} = h0^(nu2(k)+1) j_{8k-1}`.
    J7Prime,
    /// `j_{8k}`, `k >= 1`.
    J0,
    /// `j_{8k+1} = h1 j_{8k}`, `k >= 1`.
    J1,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::Mu1, Family::Mu2, Family::J3, Family::J7, Family::J7Prime, Family::J0, Family::J1];

    pub fn min_k(self) -> u32 {
        match self {
            Family::Mu1 | Family::Mu2 => 0,
            _ => 1,
        }
    }

    fn stem_offset(self) -> i64 {
        match self {
            Family::Mu1 | Family::J1 => 1,
            Family::Mu2 => 2,
            Family::J3 => -5,
            Family::J7 | Family::J7Prime => -1,
            Family::J0 => 0,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Family::Mu1 | Family::Mu2 => "mu",
            Family::J7Prime => "j'",
            _ => "j",
        }
    }
}

/// `tau^tau * x` for a family member `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Entry {
    pub family: Family,
    pub k: u32,
    #[serde(default)]
    pub tau: u32,
}

impl Entry {
    pub fn new(family: Family, k: u32) -> Result<Self> {
        if k < family.min_k() {
            return Err(MooreError::Parse(format!("{family:?} needs k >= {}", family.min_k())));
        }
        Ok(Entry { family, k, tau: 0 })
    }

    pub fn with_tau(self, tau: u32) -> Self {
        Entry { tau, ..self }
    }

    pub fn untwisted(self) -> Self {
        self.with_tau(0)
    }

    pub fn stem(&self) -> i64 {
        8 * i64::from(self.k) + self.family.stem_offset()
    }

    /// Filtration of the family member itself.
    pub fn natural_filtration(&self) -> i64 {
        let k = i64::from(self.k);
        match self.family {
            Family::Mu1 => 4 * k + 1,
            Family::Mu2 => 4 * k + 2,
            Family::J3 => 4 * k - 3,
            Family::J7 => 4 * k - 3 - i64::from(nu2(self.k)),
            Family::J7Prime => 4 * k - 2,
            Family::J0 => 4 * k - 1,
            Family::J1 => 4 * k,
        }
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.stem(), self.natural_filtration() - i64::from(self.tau))
    }

    /// Order of the classical class.
    pub fn order(&self) -> u64 {
        match self.family {
            Family::Mu1 | Family::Mu2 | Family::J0 | Family::J1 => 2,
            Family::J3 | Family::J7Prime => 8,
            Family::J7 => 1 << (nu2(self.k) + 4),
        }
    }

    /// Name of the fixture class carrying this entry.
    pub fn class_name(&self) -> String {
        match self.family {
            Family::Mu1 | Family::Mu2 => format!("mu{}", self.stem()),
            _ => format!("j{}", self.stem()),
        }
    }

    /// The entry as a multiple of its fixture class.
    pub fn multiple(&self) -> i128 {
        match self.family {
            Family::J7Prime => 1 << (nu2(self.k) + 1),
            _ => 1,
        }
    }

    /// Same family, `n` steps along.
    pub fn shifted(&self, n: u32) -> Entry {
        Entry { k: self.k + n, ..*self }
    }

    /// Parse `mu9`, `j'47`, `t^12 j'47`, `t j8`.
    pub fn parse(s: &str) -> Result<Entry> {
        let s = s.trim();
        let (tau, body) = match s.split_once(char::is_whitespace) {
            Some((t, rest)) if t.starts_with('t') => (parse_tau(t)?, rest.trim()),
            _ => (0, s),
        };
        let bad = || MooreError::Parse(format!("`{s}` is not a table entry"));
        let (family_of, digits): (fn(i64) -> Option<Family>, &str) = if let Some(d) = body.strip_prefix("mu") {
            (
                |n| match n.rem_euclid(8) {
                    1 => Some(Family::Mu1),
                    2 => Some(Family::Mu2),
                    _ => None,
                },
                d,
            )
        } else if let Some(d) = body.strip_prefix("j'") {
            (|n| (n.rem_euclid(8) == 7).then_some(Family::J7Prime), d)
        } else if let Some(d) = body.strip_prefix('j') {
            (
                |n| match n.rem_euclid(8) {
                    3 => Some(Family::J3),
                    7 => Some(Family::J7),
                    0 => Some(Family::J0),
                    1 => Some(Family::J1),
                    _ => None,
                },
                d,
            )
        } else {
            return Err(bad());
        };
        let n: i64 = digits.parse().map_err(|_| bad())?;
        let family = family_of(n).ok_or_else(bad)?;
        let k = (n - family.stem_offset()) / 8;
        let k = u32::try_from(k).map_err(|_| bad())?;
        Ok(Entry::new(family, k).map_err(|_| bad())?.with_tau(tau))
    }
}

fn parse_tau(t: &str) -> Result<u32> {
    match t {
        "t" => Ok(1),
        _ => t
            .strip_prefix("t^")
            .and_then(|e| e.parse().ok())
            .ok_or_else(|| MooreError::Parse(format!("bad tau power `{t}`"))),
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tau {
            0 => {}
            1 => write!(f, "t ")?,
            t => write!(f, "t^{t} ")?,
        }
        write!(f, "{}{}", self.family.prefix(), self.stem())
    }
}

/// A `v2^32` self-map of a finite complex, recorded as a shift only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfMap {
    pub complex: String,
    /// `M(2^i, v1^j)`.
    pub i: u32,
    pub j: u32,
    pub degree: i64,
    pub provenance: String,
}

impl SelfMap {
    pub fn shift(&self, stem: i64) -> i64 {
        stem + self.degree
    }
}

/// Bidegree formulas for the families and the known `v2^32` self-maps.
#[derive(Clone, Debug)]
pub struct PeriodicClassTable {
    pub self_maps: Vec<SelfMap>,
}

impl Default for PeriodicClassTable {
    fn default() -> Self {
        let m = |complex: &str, i, j| SelfMap {
            complex: complex.into(),
            i,
            j,
            degree: 192,
            provenance: "lifts/selfmaps".into(),
        };
        PeriodicClassTable { self_maps: vec![m("M(8,v1^8)", 3, 8), m("M(2,v1^4)", 1, 4), m("M(4,v1^4)", 2, 4)] }
    }
}

impl PeriodicClassTable {
    /// Every family member with stem at most `max_stem`.
    pub fn entries(&self, max_stem: i64) -> Vec<Entry> {
        let mut out = Vec::new();
        for fam in Family::ALL {
            let mut k = fam.min_k();
            loop {
                let e = Entry { family: fam, k, tau: 0 };
                if e.stem() > max_stem {
                    break;
                }
                out.push(e);
                k += 1;
            }
        }
        out.sort_by_key(|e| (e.stem(), e.natural_filtration(), e.family));
        out
    }

    pub fn self_map(&self, i: u32, j: u32) -> Option<&SelfMap> {
        self.self_maps.iter().find(|m| m.i == i && m.j == j)
    }

    /// `v1^4 x-bar = (x shifted by one period)-bar` on the cokernel part.
    ///
    /// For `j_{8k-1}` with `k >= 3` this holds up to tau-power torsion with a
    /// tau exponent fixed by the bidegrees.
    pub fn v1_shift(&self, x: Entry) -> Result<Entry> {
        match x.family {
            Family::Mu1 | Family::Mu2 | Family::J0 | Family::J1 | Family::J3 => Ok(x.shifted(1)),
            Family::J7 if x.k >= 3 => {
                let next = x.untwisted().shifted(1);
                let f = x.bidegree().filtration + 4;
                let tau = next.natural_filtration() - f;
                let tau = u32::try_from(tau).map_err(|_| {
                    MooreError::Precondition(format!("v1^4 {x}-bar sits above {next}-bar"))
                })?;
                Ok(next.with_tau(tau))
            }
            _ => Err(MooreError::Precondition(format!("no v1^4 rule for {x}-bar"))),
        }
    }
}
