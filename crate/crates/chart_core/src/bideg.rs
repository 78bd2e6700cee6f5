use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Sub};

/// A (stem, filtration) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct BiDegree {
    pub stem: i64,
    pub filtration: i64,
}

impl BiDegree {
    pub const fn new(stem: i64, filtration: i64) -> Self {
        BiDegree { stem, filtration }
    }

    /// Target of a page-`r` differential leaving `self`.
    pub const fn diff_target(self, r: i64) -> Self {
        BiDegree::new(self.stem - 1, self.filtration + r)
    }

    pub const fn total(self) -> i64 {
        self.stem + self.filtration
    }

    /// Parse `"23,5"` or `"(23,5)"`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = s.split_once(',')?;
        Some(BiDegree::new(a.trim().parse().ok()?, b.trim().parse().ok()?))
    }
}

impl From<(i64, i64)> for BiDegree {
    fn from((s, f): (i64, i64)) -> Self {
        BiDegree::new(s, f)
    }
}

impl From<BiDegree> for (i64, i64) {
    fn from(b: BiDegree) -> Self {
        (b.stem, b.filtration)
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.stem + o.stem, self.filtration + o.filtration)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.stem - o.stem, self.filtration - o.filtration)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.stem, self.filtration)
    }
}

/// A spectral-sequence page; `Infinite` orders after every finite page.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Page {
    Finite(u32),
    Infinite,
}

impl Page {
    pub fn is_finite(self) -> bool {
        matches!(self, Page::Finite(_))
    }
}

impl fmt::Display for Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Page::Finite(r) => write!(f, "{r}"),
            Page::Infinite => write!(f, "inf"),
        }
    }
}
