//! E2 data of the fiber `F -> X -> Y` of a chart map.
//!
//! In bidegree (s, f) the fiber sits in
//! `0 -> coker(f at (s+1, f-1)) -> F(s, f) -> ker(f at (s, f)) -> 0`.
//! Kernel classes are lifts, cokernel classes are boundaries.

use crate::error::{MapError, Result};
use crate::map::ChartMap;
use chart_core::group::combo_name;
use chart_core::snf::{self, Matrix};
use chart_core::{BiDegree, Cell, Chart, Generator, Invariants, PresentedAbGroup, Window};
use std::collections::BTreeSet;
use std::fmt;

/// Shift from a cokernel cell of the target to the fiber cell it feeds.
pub const BOUNDARY_SHIFT: BiDegree = BiDegree::new(-1, 1);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub at: BiDegree,
    /// Where the classes come from: `at` for lifts, the target cell for boundaries.
    pub from: BiDegree,
    pub group: PresentedAbGroup,
    pub invariants: Invariants,
}

/// A fiber cell group, exact or known only up to an extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberGroup {
    Known(Invariants),
    UpToExtension { sub: Invariants, quotient: Invariants },
}

impl FiberGroup {
    pub fn order(&self) -> Option<u64> {
        match self {
            FiberGroup::Known(g) => g.order(),
            FiberGroup::UpToExtension { sub, quotient } => Some(sub.order()? * quotient.order()?),
        }
    }
}

impl fmt::Display for FiberGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberGroup::Known(g) => write!(f, "{g}"),
            FiberGroup::UpToExtension { sub, quotient } => write!(f, "ext({quotient} by {sub})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub at: BiDegree,
    pub group: Invariants,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct FiberChart {
    /// Cells carry the split guess (lifts then boundaries) for ambiguous cells.
    pub chart: Chart,
    pub lifts: Vec<LedgerEntry>,
    pub boundaries: Vec<LedgerEntry>,
    pub ambiguous: Vec<BiDegree>,
    /// Bidegrees that could not be computed for lack of map data.
    pub unknown: Vec<BiDegree>,
    pub resolutions: Vec<Resolution>,
}

impl FiberChart {
    pub fn group_at(&self, at: BiDegree) -> Option<FiberGroup> {
        if self.unknown.contains(&at) {
            return None;
        }
        let p = self.chart.prime();
        if let Some(r) = self.resolutions.iter().find(|r| r.at == at) {
            return Some(FiberGroup::Known(r.group.clone()));
        }
        let sub = self.boundaries.iter().find(|e| e.at == at).map(|e| e.invariants.clone());
        let quo = self.lifts.iter().find(|e| e.at == at).map(|e| e.invariants.clone());
        Some(match (sub, quo) {
            (Some(s), Some(q)) if self.ambiguous.contains(&at) => FiberGroup::UpToExtension { sub: s, quotient: q },
            _ => FiberGroup::Known(self.chart.cell(at).map_or_else(
                || Invariants { torsion: vec![], free_rank: 0 },
                |c| c.group.invariants(p),
            )),
        })
    }

    /// Settle an extension problem with an outside argument. The order must
    /// agree with the exact sequence.
    pub fn resolve(&mut self, at: BiDegree, group: Invariants, provenance: impl Into<String>) -> Result<()> {
        let Some(FiberGroup::UpToExtension { sub, quotient }) = self.group_at(at) else {
            return Err(MapError::Precondition(format!("no open extension at {at}")));
        };
        let want = sub.order().zip(quotient.order()).map(|(a, b)| a * b);
        if group.order() != want || group.free_rank != sub.free_rank + quotient.free_rank {
            return Err(MapError::Precondition(format!(
                "{group} cannot be an extension of {quotient} by {sub}"
            )));
        }
        self.resolutions.push(Resolution { at, group, provenance: provenance.into() });
        Ok(())
    }
}

/// Kernel of the component at `at` as a presented group with named generators.
pub fn kernel_group(f: &ChartMap, at: BiDegree) -> Result<PresentedAbGroup> {
    let src = f.source_group(at);
    let n = src.ngens();
    if n == 0 {
        return Ok(PresentedAbGroup::default());
    }
    let tgt = f.target_group(at);
    let m = f.component(at)?.rows();
    let mut stacked = m.clone();
    stacked.extend(tgt.relation_rows());
    let lattice: Matrix = if tgt.ngens() == 0 {
        snf::identity(n)
    } else {
        snf::echelon(
            &snf::left_kernel(&stacked, tgt.ngens()).into_iter().map(|c| c[..n].to_vec()).collect::<Vec<_>>(),
            n,
        )
    };
    Ok(sub_presentation(&src, &lattice))
}

/// The subgroup of `g` generated by `rows`, presented on those rows.
pub fn sub_presentation(g: &PresentedAbGroup, rows: &Matrix) -> PresentedAbGroup {
    let n = g.ngens();
    let k = rows.len();
    let names = g.names();
    let mut stacked = rows.clone();
    stacked.extend(g.relation_rows());
    let rels: Vec<Vec<i64>> = if stacked.is_empty() {
        Vec::new()
    } else {
        snf::left_kernel(&stacked, n)
            .into_iter()
            .map(|c| chart_core::chart::narrow(&c[..k]))
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect()
    };
    PresentedAbGroup {
        generators: rows.iter().map(|r| Generator::new(combo_name(r, &names), 0)).collect(),
        relations: rels,
    }
}

/// Cokernel of the component at `at`, on the target generators.
pub fn cokernel_group(f: &ChartMap, at: BiDegree) -> Result<PresentedAbGroup> {
    let mut tgt = f.target_group(at);
    if tgt.ngens() == 0 {
        return Ok(tgt);
    }
    if f.source_group(at).ngens() > 0 {
        for row in &f.component(at)?.matrix {
            tgt.relations.push(row.clone());
        }
    }
    Ok(tgt)
}

fn renamed(g: PresentedAbGroup, p: Option<i128>, wrap: impl Fn(&str) -> String) -> PresentedAbGroup {
    let mut r = g.reduced(p);
    for gen in r.generators.iter_mut() {
        gen.name = wrap(&gen.name);
    }
    r
}

fn direct_sum(a: &PresentedAbGroup, b: &PresentedAbGroup) -> PresentedAbGroup {
    let (na, nb) = (a.ngens(), b.ngens());
    let mut gens = a.generators.clone();
    gens.extend(b.generators.iter().cloned());
    let mut rels: Vec<Vec<i64>> = a.relations.iter().map(|r| [r.clone(), vec![0; nb]].concat()).collect();
    rels.extend(b.relations.iter().map(|r| [vec![0; na], r.clone()].concat()));
    PresentedAbGroup { generators: gens, relations: rels }
}

/// Fiber chart of `f` over `window`.
pub fn build_fiber_chart(f: &ChartMap, window: Window) -> Result<FiberChart> {
    if f.source.window != f.target.window {
        return Err(MapError::Window(format!(
            "{} and {} have different windows",
            f.source.name, f.target.name
        )));
    }
    let w = f.source.window;
    let inside = |b: BiDegree| w.contains(b);
    if !inside(BiDegree::new(window.stems.0, window.filtrations.0))
        || !inside(BiDegree::new(window.stems.1, window.filtrations.1))
    {
        return Err(MapError::Window(format!(
            "requested stems {:?} filtrations {:?} exceed the chart window",
            window.stems, window.filtrations
        )));
    }
    let p = f.prime();
    let mut spots = BTreeSet::new();
    for c in f.source.nonzero_cells() {
        spots.insert(c.at);
    }
    for c in f.target.nonzero_cells() {
        spots.insert(c.at + BOUNDARY_SHIFT);
    }
    let mut chart = Chart::new(format!("fib({})", f.name), window);
    chart.prime = f.source.prime;
    chart.connective = f.source.connective && f.target.connective;
    chart.parity = if f.source.parity.is_some() && f.target.parity.is_some() { f.source.parity } else { None };
    let mut out = FiberChart {
        chart,
        lifts: Vec::new(),
        boundaries: Vec::new(),
        ambiguous: Vec::new(),
        unknown: Vec::new(),
        resolutions: Vec::new(),
    };
    for at in spots.into_iter().filter(|&b| window.contains(b)) {
        let from = at - BOUNDARY_SHIFT;
        let ker = match kernel_group(f, at) {
            Ok(g) => renamed(g, p, |n| n.to_string()),
            Err(MapError::IncompleteFixture(_)) => {
                out.unknown.push(at);
                continue;
            }
            Err(e) => return Err(e),
        };
        let coker = match cokernel_group(f, from) {
            Ok(g) => renamed(g, p, |n| format!("∂({n})")),
            Err(MapError::IncompleteFixture(_)) => {
                out.unknown.push(at);
                continue;
            }
            Err(e) => return Err(e),
        };
        let ki = ker.invariants(p);
        let ci = coker.invariants(p);
        if !ki.is_trivial() {
            out.lifts.push(LedgerEntry { at, from: at, group: ker.clone(), invariants: ki.clone() });
        }
        if !ci.is_trivial() {
            out.boundaries.push(LedgerEntry { at, from, group: coker.clone(), invariants: ci.clone() });
        }
        if !ki.is_trivial() && !ci.is_trivial() {
            out.ambiguous.push(at);
        }
        if ki.is_trivial() && ci.is_trivial() {
            continue;
        }
        let group = direct_sum(&ker, &coker);
        let prov = if out.ambiguous.last() == Some(&at) { "split guess; extension open" } else { "exact" };
        out.chart.add_cell(Cell { at, group, provenance: Some(prov.into()) });
    }
    Ok(out)
}
