//! The long exact sequences of `M(h0^i)` and `M(h0^i, v1^j)`.
//!
//! `pi_{s,f} M(h0^i)` sits between the cokernel of `h0^i` into `(s,f)` and
//! the `h0^i`-torsion of `pi_{s-1,f-i+1}`.

use crate::error::{MooreError, Result};
use crate::sphere::{format_invariants, gcd, Element, Lattice, SphereModel};
use chart_core::snf::{self, Matrix};
use chart_core::{BiDegree, Cell, Chart, Generator, Window};
use std::fmt;

/// `pi_{s,f}` divided by `2^i pi_{s,f-i}`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ambient: Lattice,
    pub sub: Vec<Element>,
}

impl Quotient {
    /// Generators of the ambient group that are not in `span(others) + sub`.
    pub fn uncovered(&self, others: &[Element]) -> Result<Vec<Element>> {
        self.ambient.covered_by(others, &self.sub)
    }

    pub fn invariants(&self) -> Vec<i128> {
        let mut out = Vec::new();
        for g in &self.ambient.gens {
            let Some((idx, &a)) = g.iter().enumerate().find(|(_, c)| **c != 0) else { continue };
            let name = &self.ambient.basis[idx];
            let ord = self.ambient.relations.iter().find(|r| r[idx] != 0).map_or(0, |r| r[idx]);
            let b = self.sub.iter().filter_map(|s| s.coeffs.get(name)).fold(ord, |acc, c| gcd(acc, *c));
            let q = if b == 0 { 0 } else { b / gcd(b, a) };
            if q != 1 {
                out.push(q);
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

#[derive(Clone, Debug)]
pub struct LadderCell {
    pub at: BiDegree,
    pub coker: Vec<i128>,
    pub ker: Vec<i128>,
    /// Both parts are nonzero, so the cell may be a nontrivial extension.
    pub extension: bool,
}

impl fmt::Display for LadderCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} | {}", self.at, format_invariants(&self.coker), format_invariants(&self.ker))?;
        if self.extension {
            write!(f, " (extension)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CofiberLadder<'a> {
    pub sphere: &'a SphereModel,
    pub i: u32,
    pub j: Option<u32>,
}

impl<'a> CofiberLadder<'a> {
    pub fn new(sphere: &'a SphereModel, i: u32, j: Option<u32>) -> Result<Self> {
        if !(1..=3).contains(&i) {
            return Err(MooreError::Precondition(format!("M(h0^{i}) is outside i = 1..3")));
        }
        if j == Some(0) {
            return Err(MooreError::Precondition("v1^0 is not a self-map".into()));
        }
        Ok(CofiberLadder { sphere, i, j })
    }

    pub fn name(&self) -> String {
        let two = 1u32 << self.i;
        match self.j {
            Some(j) => format!("M({two},v1^{j})"),
            None => format!("M({two})"),
        }
    }

    /// `M(h0^i) -> Sigma^{1,i-1} S`.
    pub fn h0_boundary_shift(&self) -> BiDegree {
        BiDegree::new(-1, -(i64::from(self.i) - 1))
    }

    /// `M(h0^i, v1^j) -> Sigma^{2j+1,j-1} M(h0^i)`.
    pub fn v1_boundary_shift(&self) -> Option<BiDegree> {
        self.j.map(|j| BiDegree::new(-(2 * i64::from(j) + 1), -(i64::from(j) - 1)))
    }

    /// Where a lift of a sphere class at `x` lands in `M(h0^i)`.
    pub fn lift_bidegree(&self, x: BiDegree) -> BiDegree {
        x - self.h0_boundary_shift()
    }

    /// Stem of the top cell lift in `M(h0^i, v1^j)` of a class lifted to
    /// stem `s` of `M(h0^i)`.
    pub fn top_cell_stem(&self, s: i64) -> Option<i64> {
        self.v1_boundary_shift().map(|d| s - d.stem)
    }

    /// `h0^i`-torsion in `pi_{s-1,f-i+1}`: the image of the boundary.
    pub fn ker_part(&self, at: BiDegree) -> Result<Lattice> {
        let src = at + self.h0_boundary_shift();
        let t = self.sphere.tau_free(src)?;
        let mut gens = Vec::new();
        for g in &t.gens {
            let Some((idx, &a)) = g.iter().enumerate().find(|(_, c)| **c != 0) else { continue };
            let ord = t.relations.iter().find(|r| r[idx] != 0).map_or(0, |r| r[idx]);
            if ord == 0 {
                continue;
            }
            // smallest multiple of a killed by 2^i
            let need = (ord >> self.i).max(1);
            let c = a * need / gcd(a, need);
            if c % ord != 0 {
                let mut r = vec![0; g.len()];
                r[idx] = c;
                gens.push(r);
            }
        }
        Ok(Lattice { gens, ..t })
    }

    /// Cokernel of `h0^i` into `(s,f)`: the image of the inclusion.
    pub fn coker_part(&self, at: BiDegree) -> Result<Quotient> {
        let i = i64::from(self.i);
        let below = BiDegree::new(at.stem, at.filtration - i);
        let src = self.sphere.tau_free(below)?;
        let ambient = self.sphere.tau_free(at)?;
        let sub = src.generators().iter().map(|g| g.scale(1 << self.i)).collect();
        Ok(Quotient { ambient, sub })
    }

    pub fn cell(&self, at: BiDegree) -> Result<LadderCell> {
        let coker = self.coker_part(at)?.invariants();
        let ker = self.ker_part(at)?.invariants();
        let extension = !coker.is_empty() && !ker.is_empty();
        Ok(LadderCell { at, coker, ker, extension })
    }

    /// Check exactness around the cell at `at` by SNF:
    /// `h0^i` maps `pi_{s,f-i}` into `pi_{s,f}`, so the kernel of the
    /// inclusion is its image; and the kernel of `h0^i` on `pi_{s-1,f-i+1}`,
    /// computed as a left kernel, equals the image of the boundary.
    pub fn check_exactness(&self, at: BiDegree) -> Result<()> {
        let q = self.coker_part(at)?;
        for s in &q.sub {
            if !self.sphere.in_filtration(s, at.filtration)? {
                return Err(MooreError::Inconsistent(format!("h0^{} sends a class to {s}, below {at}", self.i)));
            }
        }
        let k = self.ker_part(at)?;
        let t = self.sphere.tau_free(at + self.h0_boundary_shift())?;
        let n = t.basis.len();
        let mut stacked: Matrix = t.gens.iter().map(|g| g.iter().map(|c| c << self.i).collect()).collect();
        stacked.extend(t.relations.iter().cloned());
        let m = t.gens.len();
        let kernel: Vec<Element> = snf::left_kernel(&stacked, n)
            .into_iter()
            .map(|c| t.element(&snf::combine(&c[..m], &t.gens, n)))
            .collect();
        let image = k.generators();
        for x in &kernel {
            if !k.spanned(x, &image)? {
                return Err(MooreError::Inconsistent(format!("{x} is killed by h0^{} but is not a boundary at {at}", self.i)));
            }
        }
        for x in &image {
            if !self.sphere.killed_by_two_power(x, self.i)? || !k.spanned(x, &kernel)? {
                return Err(MooreError::Inconsistent(format!("boundary {x} at {at} is not h0^{}-torsion", self.i)));
            }
        }
        Ok(())
    }

    /// Cells of `M(h0^i)` in `window` where the fixture is complete.
    pub fn cells(&self, window: Window) -> Vec<LadderCell> {
        let mut out = Vec::new();
        for s in window.stems.0..=window.stems.1 {
            for f in window.filtrations.0..=window.filtrations.1 {
                if let Ok(c) = self.cell(BiDegree::new(s, f)) {
                    if !c.coker.is_empty() || !c.ker.is_empty() {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Chart of `M(h0^i)`, one cyclic summand per invariant factor.
    pub fn to_chart(&self, window: Window) -> Chart {
        let mut chart = Chart::new(self.name(), window);
        chart.prime = Some(2);
        for c in self.cells(window) {
            let mut gens = Vec::new();
            for (k, q) in c.coker.iter().enumerate() {
                gens.push(Generator::new(format!("i{k}"), *q as u64));
            }
            for (k, q) in c.ker.iter().enumerate() {
                gens.push(Generator::new(format!("d{k}"), *q as u64));
            }
            chart.add_cell(Cell::new(c.at, gens).with_provenance(self.sphere.spec.name.clone()));
        }
        chart
    }
}
