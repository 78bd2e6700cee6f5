//! Polynomials in the level-three generators `a1`, `a3` with `|a1| = 2`,
//! `|a3| = 6` (stems), and the leading term of `(q - p)(Delta^k)`.

use crate::error::{MapError, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const A1_STEM: u32 = 2;
pub const A3_STEM: u32 = 6;

/// An element of `Z[a1, a3]`; keys are `(a1 exponent, a3 exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LevelThreeRing {
    terms: BTreeMap<(u32, u32), i128>,
}

impl LevelThreeRing {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i128) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: i128, e1: u32, e3: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((e1, e3), c);
        }
        LevelThreeRing { terms }
    }

    pub fn a1() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn a3() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `v1 = a1`.
    pub fn v1() -> Self {
        Self::a1()
    }

    /// `v2 = a3`.
    pub fn v2() -> Self {
        Self::a3()
    }

    /// The discriminant `a1^3 a3^3 - 27 a3^4`.
    pub fn delta() -> Self {
        Self::a1().pow(3) * Self::a3().pow(3) - Self::a3().pow(4).scale(27)
    }

    pub fn c4() -> Self {
        Self::a1().pow(4) - (Self::a1() * Self::a3()).scale(24)
    }

    pub fn c6() -> Self {
        -Self::a1().pow(6) + (Self::a1().pow(3) * Self::a3()).scale(36) - Self::a3().pow(2).scale(216)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e1: u32, e3: u32) -> i128 {
        self.terms.get(&(e1, e3)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i128)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn scale(&self, k: i128) -> Self {
        let mut out = Self::zero();
        for (&m, &c) in &self.terms {
            out.push(m, c * k);
        }
        out
    }

    fn push(&mut self, m: (u32, u32), c: i128) {
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(1);
        for _ in 0..k {
            out = out * self.clone();
        }
        out
    }

    /// Stem of each monomial, `None` when the terms disagree.
    pub fn stem(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|(a, b)| a * A1_STEM + b * A3_STEM);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Reduce coefficients mod 2.
    pub fn mod2(&self) -> Self {
        let mut out = Self::zero();
        for (&m, &c) in &self.terms {
            if c.rem_euclid(2) == 1 {
                out.push(m, 1);
            }
        }
        out
    }

    pub fn eval(&self, a1: i128, a3: i128) -> i128 {
        self.terms.iter().map(|(&(e1, e3), &c)| c * a1.pow(e1) * a3.pow(e3)).sum()
    }
}

impl Add for LevelThreeRing {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.push(m, c);
        }
        self
    }
}

impl Neg for LevelThreeRing {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl Sub for LevelThreeRing {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for LevelThreeRing {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), &c) in &self.terms {
            for (&(x, y), &d) in &o.terms {
                out.push((a + x, b + y), c * d);
            }
        }
        out
    }
}

impl fmt::Display for LevelThreeRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(e1, e3), &c) in self.terms.iter().rev() {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            write!(f, "{sign}")?;
            let mono = [(e1, "a1"), (e3, "a3")]
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
                .collect::<String>();
            match (c.abs(), mono.is_empty()) {
                (a, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{mono}")?,
                (a, false) => write!(f, "{a}{mono}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Leading term of `(q - p)(Delta^k)` mod 2 with `k = 2^r (2s + 1)`:
/// `a1^(3*2^(r+1)) a3^(2^(r+1)(4s+1)) + O(a1^(3*2^(r+1)+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub k: u64,
    pub r: u32,
    pub s: u64,
    pub a1_exp: u32,
    pub a3_exp: u32,
    /// Correction terms are divisible by `a1` to this power.
    pub error_order: u32,
}

impl LeadingTerm {
    pub fn poly(&self) -> LevelThreeRing {
        LevelThreeRing::monomial(1, self.a1_exp, self.a3_exp)
    }

    pub fn stem(&self) -> u64 {
        u64::from(self.a1_exp) * u64::from(A1_STEM) + u64::from(self.a3_exp) * u64::from(A3_STEM)
    }

    pub fn is_nonzero(&self) -> bool {
        !self.poly().mod2().is_zero()
    }
}

impl fmt::Display for LeadingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(a1^{})", self.poly(), self.error_order)
    }
}

pub fn qp_leading_term(k: i64) -> Result<LeadingTerm> {
    if k <= 0 {
        return Err(MapError::Domain(format!("Delta^{k}: the exponent must be positive")));
    }
    let k = k as u64;
    let r = k.trailing_zeros();
    let s = (k >> r) / 2;
    let two = 1u64 << (r + 1);
    let a1 = 3 * two;
    let a3 = two * (4 * s + 1);
    let conv = |x: u64| u32::try_from(x).map_err(|_| MapError::Domain(format!("Delta^{k} is too large")));
    Ok(LeadingTerm { k, r, s, a1_exp: conv(a1)?, a3_exp: conv(a3)?, error_order: conv(a1 + 1)? })
}
