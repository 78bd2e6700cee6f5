//! The synthetic sphere modulo tau-power torsion.
//!
//! `pi_{s,f}` modulo tau-power torsion is the subgroup of classes of Adams
//! filtration at least `f` in the classical stem `s`. A fixture lists
//! classical generators with the filtration of each 2-power multiple, so
//! `h0` acts as 2 and `tau` as the inclusion of filtrations.

use crate::error::{MooreError, Result};
use crate::table::Entry;
use chart_core::snf::{self, Matrix, Vector};
use chart_core::{BiDegree, Cell, Chart, Generator, Window};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub const UNIT: &str = "1";
pub const SIGMA: &str = "j7";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub name: String,
    pub stem: i64,
    /// A power of 2; 0 for a free class.
    pub order: u64,
    /// Adams filtration of `2^m x` for `m = 0, 1, ...`; later multiples go
    /// up by one each.
    pub filtrations: Vec<i64>,
    pub provenance: String,
}

impl ClassSpec {
    pub fn filtration(&self) -> i64 {
        self.filtrations[0]
    }

    pub fn filtration_of_multiple(&self, m: u32) -> i64 {
        let m = m as usize;
        match self.filtrations.get(m) {
            Some(&f) => f,
            None => self.filtrations.last().copied().unwrap_or(0) + (m + 1 - self.filtrations.len()) as i64,
        }
    }

    /// `log2(order)`, `None` for a free class.
    pub fn exponent(&self) -> Option<u32> {
        (self.order != 0).then(|| self.order.trailing_zeros())
    }

    /// Least `m` with `2^m x` nonzero of filtration `>= f`.
    pub fn step_for(&self, f: i64) -> Option<u32> {
        let mut m = 0;
        loop {
            if self.exponent().is_some_and(|n| m >= n) {
                return None;
            }
            if self.filtration_of_multiple(m) >= f {
                return Some(m);
            }
            m += 1;
        }
    }
}

/// All classes of filtration `>= from` in `stem` are listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completeness {
    pub stem: i64,
    pub from: i64,
    pub provenance: String,
}

/// `sigma * class` in the classical stems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaProduct {
    pub class: String,
    pub result: BTreeMap<String, i64>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereSpec {
    pub name: String,
    pub classes: Vec<ClassSpec>,
    #[serde(default)]
    pub complete: Vec<Completeness>,
    #[serde(default)]
    pub sigma_products: Vec<SigmaProduct>,
}

/// An integer combination of classes in one stem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub stem: i64,
    pub coeffs: BTreeMap<String, i128>,
}

impl Element {
    pub fn zero(stem: i64) -> Self {
        Element { stem, coeffs: BTreeMap::new() }
    }

    pub fn class(stem: i64, name: &str, c: i128) -> Self {
        let mut e = Element::zero(stem);
        e.push(name, c);
        e
    }

    fn push(&mut self, name: &str, c: i128) {
        let v = self.coeffs.entry(name.to_string()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.coeffs.remove(name);
        }
    }

    pub fn scale(&self, k: i128) -> Self {
        let mut e = Element::zero(self.stem);
        for (n, c) in &self.coeffs {
            e.push(n, c * k);
        }
        e
    }

    pub fn add(&self, o: &Element) -> Self {
        let mut e = self.clone();
        for (n, c) in &o.coeffs {
            e.push(n, *c);
        }
        e
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(n, c)| if *c == 1 { n.clone() } else { format!("{c} {n}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A subgroup of one classical stem given by generating rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub stem: i64,
    pub basis: Vec<String>,
    pub gens: Matrix,
    /// `order * e_c` for each finite class.
    pub relations: Matrix,
}

impl Lattice {
    pub fn vector(&self, x: &Element) -> Result<Vector> {
        let mut v = vec![0; self.basis.len()];
        for (n, c) in &x.coeffs {
            let i = self.basis.iter().position(|b| b == n).ok_or_else(|| {
                MooreError::Inconsistent(format!("{n} is not a class in stem {}", self.stem))
            })?;
            v[i] = *c;
        }
        Ok(v)
    }

    pub fn element(&self, v: &[i128]) -> Element {
        let mut e = Element::zero(self.stem);
        for (n, c) in self.basis.iter().zip(v) {
            e.push(n, *c);
        }
        e
    }

    pub fn generators(&self) -> Vec<Element> {
        self.gens.iter().map(|g| self.element(g)).collect()
    }

    /// `x` is in the span of `others` plus the relations.
    pub fn spanned(&self, x: &Element, others: &[Element]) -> Result<bool> {
        let mut rows: Matrix = others.iter().map(|o| self.vector(o)).collect::<Result<_>>()?;
        rows.extend(self.relations.iter().cloned());
        Ok(snf::contains(&rows, &self.vector(x)?, Some(2)))
    }

    /// Every generator lies in `span(others) + extra + relations`.
    pub fn covered_by(&self, others: &[Element], extra: &[Element]) -> Result<Vec<Element>> {
        let mut all = others.to_vec();
        all.extend(extra.iter().cloned());
        let mut missing = Vec::new();
        for g in self.generators() {
            if !self.spanned(&g, &all)? {
                missing.push(g);
            }
        }
        Ok(missing)
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.covered_by(&[], &[])?.is_empty())
    }

    /// Invariant factors of the subgroup, largest first.
    pub fn invariants(&self) -> Vec<i128> {
        // Generators and relations are diagonal in the class basis.
        let mut out: Vec<i128> = self
            .gens
            .iter()
            .filter_map(|g| {
                let (i, c) = g.iter().enumerate().find(|(_, c)| **c != 0)?;
                let ord = self.relations.iter().find(|r| r[i] != 0).map_or(0, |r| r[i]);
                if ord == 0 {
                    Some(0)
                } else {
                    let q = ord / gcd(ord, *c);
                    (q > 1).then_some(q)
                }
            })
            .collect();
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn format_invariants(inv: &[i128]) -> String {
    if inv.is_empty() {
        return "0".into();
    }
    inv.iter().map(|q| if *q == 0 { "Z".to_string() } else { format!("Z/{q}") }).collect::<Vec<_>>().join("+")
}

#[derive(Clone, Debug)]
pub struct SphereModel {
    pub spec: SphereSpec,
}

impl SphereModel {
    pub fn new(spec: SphereSpec) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for c in &spec.classes {
            if !seen.insert(c.name.as_str()) {
                return Err(MooreError::Inconsistent(format!("class {} listed twice", c.name)));
            }
            if c.filtrations.is_empty() || c.filtrations.windows(2).any(|w| w[1] <= w[0]) {
                return Err(MooreError::Inconsistent(format!("{}: filtrations must increase", c.name)));
            }
            if c.order != 0 && !c.order.is_power_of_two() {
                return Err(MooreError::Inconsistent(format!("{}: order {} is not a power of 2", c.name, c.order)));
            }
            if c.provenance.trim().is_empty() {
                return Err(MooreError::Inconsistent(format!("{} has no provenance", c.name)));
            }
        }
        for p in &spec.sigma_products {
            let c = spec
                .classes
                .iter()
                .find(|c| c.name == p.class)
                .ok_or_else(|| MooreError::UnknownClass(p.class.clone()))?;
            for n in p.result.keys() {
                let r = spec.classes.iter().find(|c| &c.name == n).ok_or_else(|| MooreError::UnknownClass(n.clone()))?;
                if r.stem != c.stem + 7 {
                    return Err(MooreError::Inconsistent(format!("sigma * {} lands in stem {}", c.name, r.stem)));
                }
            }
        }
        Ok(SphereModel { spec })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::new(serde_json::from_str(s).map_err(|e| MooreError::Parse(e.to_string()))?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.spec).expect("sphere spec serialises")
    }

    pub fn class(&self, name: &str) -> Result<&ClassSpec> {
        self.spec.classes.iter().find(|c| c.name == name).ok_or_else(|| MooreError::UnknownClass(name.into()))
    }

    pub fn classes_in(&self, stem: i64) -> Vec<&ClassSpec> {
        self.spec.classes.iter().filter(|c| c.stem == stem).collect()
    }

    /// Negative filtrations behave as filtration 0.
    pub fn completeness(&self, stem: i64, from: i64) -> Result<&Completeness> {
        self.spec.complete.iter().filter(|c| c.stem == stem && c.from <= from.max(0)).min_by_key(|c| c.from).ok_or_else(|| {
            MooreError::IncompleteFixture(format!("stem {stem} is not declared complete from filtration {from}"))
        })
    }

    fn stem_basis(&self, stem: i64) -> (Vec<String>, Matrix) {
        let classes = self.classes_in(stem);
        let n = classes.len();
        let basis = classes.iter().map(|c| c.name.clone()).collect();
        let relations = classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.order != 0)
            .map(|(i, c)| {
                let mut r = vec![0; n];
                r[i] = c.order as i128;
                r
            })
            .collect();
        (basis, relations)
    }

    /// `pi_{s,f}` modulo tau-power torsion, built from the listed classes.
    pub fn listed(&self, at: BiDegree) -> Lattice {
        let classes = self.classes_in(at.stem);
        let (basis, relations) = self.stem_basis(at.stem);
        let n = basis.len();
        let gens = classes
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                let m = c.step_for(at.filtration)?;
                let mut r = vec![0; n];
                r[i] = 1 << m;
                Some(r)
            })
            .collect();
        Lattice { stem: at.stem, basis, gens, relations }
    }

    /// As [`listed`](Self::listed), but only where the stem is complete.
    pub fn tau_free(&self, at: BiDegree) -> Result<Lattice> {
        self.completeness(at.stem, at.filtration)?;
        Ok(self.listed(at))
    }

    /// `x` has Adams filtration at least `f`.
    pub fn in_filtration(&self, x: &Element, f: i64) -> Result<bool> {
        for (n, c) in &x.coeffs {
            let cl = self.class(n)?;
            let c = match cl.order {
                0 => *c,
                o => c.rem_euclid(o as i128),
            };
            if c == 0 {
                continue;
            }
            match cl.step_for(f) {
                None => return Ok(false),
                Some(m) => {
                    if c % (1 << m) != 0 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self, x: &Element) -> Result<bool> {
        for (n, c) in &x.coeffs {
            let cl = self.class(n)?;
            if cl.order == 0 || c.rem_euclid(cl.order as i128) != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `2^e x = 0`.
    pub fn killed_by_two_power(&self, x: &Element, e: u32) -> Result<bool> {
        self.is_zero(&x.scale(1 << e))
    }

    /// Least `e` with `2^e x = 0`, `None` if `x` has infinite order.
    pub fn two_order(&self, x: &Element) -> Result<Option<u32>> {
        let mut best = 0;
        for (n, c) in &x.coeffs {
            let cl = self.class(n)?;
            let Some(k) = cl.exponent() else {
                if *c != 0 {
                    return Ok(None);
                }
                continue;
            };
            let c = c.rem_euclid(cl.order as i128);
            if c != 0 {
                best = best.max(k - (c.trailing_zeros()).min(k));
            }
        }
        Ok(Some(best))
    }

    /// The element named by a table entry; the fixture class must agree with
    /// the table.
    pub fn entry_element(&self, e: &Entry) -> Result<Element> {
        let name = e.class_name();
        let c = self
            .class(&name)
            .map_err(|_| MooreError::IncompleteFixture(format!("no class {name} for {e}")))?;
        let base = e.untwisted();
        let base = match base.family {
            crate::table::Family::J7Prime => Entry { family: crate::table::Family::J7, ..base },
            _ => base,
        };
        if c.stem != base.stem() || c.filtration() != base.natural_filtration() || c.order != base.order() {
            return Err(MooreError::Inconsistent(format!(
                "class {name} is ({}, {}) of order {}, the table says ({}, {}) of order {}",
                c.stem,
                c.filtration(),
                c.order,
                base.stem(),
                base.natural_filtration(),
                base.order()
            )));
        }
        Ok(Element::class(c.stem, &name, e.multiple()))
    }

    /// `sigma * x`, from the unit and the declared products.
    pub fn sigma_times(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero(x.stem + 7);
        for (n, c) in &x.coeffs {
            let cl = self.class(n)?;
            let c = match cl.order {
                0 => *c,
                o => c.rem_euclid(o as i128),
            };
            if c == 0 {
                continue;
            }
            if n == UNIT {
                self.class(SIGMA)?;
                out = out.add(&Element::class(x.stem + 7, SIGMA, c));
                continue;
            }
            let p = self.spec.sigma_products.iter().find(|p| &p.class == n).ok_or_else(|| {
                MooreError::IncompleteFixture(format!("sigma * {n} is not declared"))
            })?;
            for (r, k) in &p.result {
                out = out.add(&Element::class(x.stem + 7, r, c * i128::from(*k)));
            }
        }
        Ok(out)
    }

    /// `(2^e sigma) * x = sigma * (2^e x)`; no product data is needed when
    /// `2^e x = 0`.
    pub fn two_power_sigma_times(&self, e: u32, x: &Element) -> Result<Element> {
        let y = x.scale(1 << e);
        if self.is_zero(&y)? {
            return Ok(Element::zero(x.stem + 7));
        }
        self.sigma_times(&y)
    }

    /// Chart of the listed classes: one `Z/2` generator per 2-power multiple.
    pub fn to_chart(&self, window: Window) -> Chart {
        let mut chart = Chart::new(self.spec.name.clone(), window);
        chart.prime = Some(2);
        chart.connective = true;
        let mut cells: BTreeMap<BiDegree, (Vec<Generator>, Vec<String>)> = BTreeMap::new();
        for c in &self.spec.classes {
            let top = c.exponent().unwrap_or(1);
            for m in 0..top {
                let at = BiDegree::new(c.stem, c.filtration_of_multiple(m));
                if !window.contains(at) {
                    continue;
                }
                let name = if m == 0 { c.name.clone() } else { format!("{}{}", 1u64 << m, c.name) };
                let order = if c.order == 0 { 0 } else { 2 };
                let slot = cells.entry(at).or_default();
                slot.0.push(Generator::new(name, order));
                if !slot.1.contains(&c.provenance) {
                    slot.1.push(c.provenance.clone());
                }
            }
        }
        for (at, (gens, prov)) in cells {
            chart.add_cell(Cell::new(at, gens).with_provenance(prov.join(", ")));
        }
        chart
    }
}
