//! Page turning on cycle and boundary lattices kept in E2 coordinates.
//!
//! For each cell, `K_r` is the lattice of classes surviving to E_r as cycles
//! and `B_r` (which contains the relations) the classes already zero. The
//! E_r group is `K_r / B_r`.

use crate::chart::{narrow, Chart, Differential};
use crate::error::{ChartError, Result};
use crate::group::{combo_name, Generator, PresentedAbGroup};
use crate::snf::{self, Matrix, Vector};
use crate::{BiDegree, Cell, Page};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattices {
    pub k: Matrix,
    pub b: Matrix,
    pub n: usize,
}

/// `states[i]` describes page `start + i`; the last entry is the page after
/// `end`, i.e. E-infinity inside the window.
#[derive(Clone, Debug)]
pub struct PageTable {
    pub start: u32,
    pub end: u32,
    pub states: Vec<BTreeMap<BiDegree, Lattices>>,
}

impl PageTable {
    pub fn at(&self, page: u32) -> Option<&BTreeMap<BiDegree, Lattices>> {
        let i = page.checked_sub(self.start)? as usize;
        self.states.get(i.min(self.states.len() - 1))
    }
}

/// A differential restricted to the current cycle lattice of its source.
struct Action {
    /// Rows spanning `K_r(source)` (localised), possibly rescaled by units.
    k: Matrix,
    /// `d` of each row of `k`, in target coordinates.
    d: Matrix,
    /// Stacked `[basis; B_r(source)]` and the matching images, for evaluation.
    stacked: Matrix,
    images: Matrix,
}

fn cell_state(cur: &BTreeMap<BiDegree, Lattices>, at: BiDegree) -> Result<&Lattices> {
    cur.get(&at).ok_or(ChartError::MissingCell(at))
}

fn action(d: &Differential, cur: &BTreeMap<BiDegree, Lattices>, p: Option<i128>) -> Result<Action> {
    if d.target != d.source.diff_target(i64::from(d.page)) {
        return Err(ChartError::Structural(format!(
            "d{} from {} must land in {}, not {}",
            d.page,
            d.source,
            d.source.diff_target(i64::from(d.page)),
            d.target
        )));
    }
    let s = cell_state(cur, d.source)?;
    let t = cell_state(cur, d.target)?;
    let basis = d.basis_rows(s.n);
    let images = d.image_rows();
    if basis.len() != images.len() {
        return Err(ChartError::Structural(format!(
            "d{} from {}: {} basis vectors but {} images",
            d.page,
            d.source,
            basis.len(),
            images.len()
        )));
    }
    if basis.iter().any(|b| b.len() != s.n) || images.iter().any(|v| v.len() != t.n) {
        return Err(ChartError::Structural(format!(
            "d{} from {}: vector length does not match the cell ranks",
            d.page, d.source
        )));
    }
    for b in &basis {
        if !snf::contains(&s.k, b, p) {
            return Err(ChartError::Consistency(format!(
                "d{} from {}: basis vector {:?} does not survive to E{}",
                d.page, d.source, b, d.page
            )));
        }
    }
    for v in &images {
        if !snf::contains(&t.k, v, p) {
            return Err(ChartError::Consistency(format!(
                "d{} from {}: image {:?} is not an E{} class of {}",
                d.page, d.source, v, d.page, d.target
            )));
        }
    }
    let nb = basis.len();
    let mut stacked = basis.clone();
    stacked.extend(s.b.iter().cloned());
    let mut all_images = images.clone();
    all_images.extend(std::iter::repeat_n(vec![0; t.n], s.b.len()));
    for kv in snf::left_kernel(&stacked, s.n) {
        let val = snf::combine(&kv[..nb], &images, t.n);
        if !snf::contains(&t.b, &val, p) {
            return Err(ChartError::Consistency(format!(
                "d{} from {} is not well defined: a relation maps to {:?}",
                d.page, d.source, val
            )));
        }
    }
    let mut k = Vec::new();
    let mut dk = Vec::new();
    for row in &s.k {
        let Some((m, c)) = snf::solve(&stacked, row, p) else {
            return Err(ChartError::Consistency(format!(
                "d{} from {}: the basis does not span E{} (missing {:?})",
                d.page, d.source, d.page, row
            )));
        };
        k.push(snf::scale(row, m));
        dk.push(snf::combine(&c, &all_images, t.n));
    }
    Ok(Action { k, d: dk, stacked, images: all_images })
}

fn eval(a: &Action, x: &[i128], n_target: usize, p: Option<i128>) -> Option<(i128, Vector)> {
    let (m, c) = snf::solve(&a.stacked, x, p)?;
    Some((m, snf::combine(&c, &a.images, n_target)))
}

/// Run all pages from the chart's start page through its last page.
pub fn compute(chart: &Chart) -> Result<PageTable> {
    let p = chart.prime();
    let start = chart.page;
    let end = chart.last_page().max(start);
    let mut first = BTreeMap::new();
    for c in &chart.cells {
        let n = c.group.ngens();
        if first.contains_key(&c.at) {
            return Err(ChartError::Structural(format!("two cells at {}", c.at)));
        }
        first.insert(
            c.at,
            Lattices { k: snf::identity(n), b: snf::echelon(&c.group.relation_rows(), n), n },
        );
    }
    for d in &chart.differentials {
        if d.page < start.max(2) || d.page > end {
            return Err(ChartError::Structural(format!(
                "d{} from {} is outside pages {}..={}",
                d.page, d.source, start, end
            )));
        }
    }
    let mut states = vec![first];
    for r in start..=end {
        let cur = states.last().expect("nonempty");
        let mut seen = std::collections::BTreeSet::new();
        let mut acts: BTreeMap<BiDegree, (Action, &Differential)> = BTreeMap::new();
        for d in chart.differentials_on(r) {
            if !seen.insert(d.source) {
                return Err(ChartError::Structural(format!("two d{r} from {}", d.source)));
            }
            acts.insert(d.source, (action(d, cur, p)?, d));
        }
        // d_r composed with d_r vanishes on E_r
        for (a, d) in acts.values() {
            if let Some((b, e)) = acts.get(&d.target) {
                let u = cell_state(cur, e.target)?;
                for row in &a.d {
                    let (_, v) = eval(b, row, u.n, p).ok_or_else(|| {
                        ChartError::Consistency(format!("d{r} image {:?} outside the domain at {}", row, d.target))
                    })?;
                    if !snf::contains(&u.b, &v, p) {
                        return Err(ChartError::Consistency(format!(
                            "d{r} after d{r} from {} is nonzero: {:?}",
                            d.source, v
                        )));
                    }
                }
            }
        }
        let mut next = cur.clone();
        let mut added: BTreeMap<BiDegree, Matrix> = BTreeMap::new();
        for (a, d) in acts.values() {
            let s = &cur[&d.source];
            let t = &cur[&d.target];
            let mut rows = a.d.clone();
            rows.extend(t.b.iter().cloned());
            let ker = snf::left_kernel(&rows, t.n);
            let kvecs: Matrix = ker
                .iter()
                .map(|g| snf::combine(&g[..a.k.len()], &a.k, s.n))
                .collect();
            let kb = snf::echelon(&kvecs, s.n);
            next.get_mut(&d.source).expect("cell").k = kb;
            added.entry(d.target).or_default().extend(a.d.iter().cloned());
        }
        for (at, rows) in added {
            let st = next.get_mut(&at).expect("cell");
            let mut all = st.b.clone();
            all.extend(rows);
            st.b = snf::echelon(&all, st.n);
        }
        states.push(next);
    }
    Ok(PageTable { start, end, states })
}

/// Smallest page whose differential hits `x`; `Infinite` when none does.
pub fn min_kill_page(chart: &Chart, at: BiDegree, x: &[i128]) -> Result<Page> {
    if chart.max_page.is_none() {
        return Err(ChartError::Domain(format!("chart `{}` declares no max_page", chart.name)));
    }
    let table = compute(chart)?;
    min_kill_page_in(&table, chart.prime(), at, x)
}

pub fn min_kill_page_in(table: &PageTable, p: Option<i128>, at: BiDegree, x: &[i128]) -> Result<Page> {
    let st0 = table.states[0].get(&at).ok_or(ChartError::MissingCell(at))?;
    if x.len() != st0.n {
        return Err(ChartError::Structural(format!("vector length {} at {} (rank {})", x.len(), at, st0.n)));
    }
    if snf::contains(&st0.b, x, p) {
        return Err(ChartError::Domain(format!("class {:?} at {} is zero on E{}", x, at, table.start)));
    }
    for (i, st) in table.states.iter().enumerate().skip(1) {
        if snf::contains(&st[&at].b, x, p) {
            return Ok(Page::Finite(table.start + i as u32 - 1));
        }
    }
    Ok(Page::Infinite)
}

/// Smallest page on which `x` supports a nonzero differential.
pub fn support_page_in(table: &PageTable, p: Option<i128>, at: BiDegree, x: &[i128]) -> Result<Page> {
    let st0 = table.states[0].get(&at).ok_or(ChartError::MissingCell(at))?;
    if snf::contains(&st0.b, x, p) {
        return Err(ChartError::Domain(format!("class {:?} at {} is zero on E{}", x, at, table.start)));
    }
    for (i, w) in table.states.windows(2).enumerate() {
        let (a, b) = (&w[0][&at], &w[1][&at]);
        if snf::contains(&a.k, x, p) && !snf::contains(&b.k, x, p) && !snf::contains(&a.b, x, p) {
            return Ok(Page::Finite(table.start + i as u32));
        }
    }
    Ok(Page::Infinite)
}

/// `tau^k` times any lift of `x` is nonzero: nothing of page `<= k + 1` hits it.
pub fn tau_power_nonzero(chart: &Chart, at: BiDegree, x: &[i128], k: u32) -> Result<bool> {
    Ok(min_kill_page(chart, at, x)? > Page::Finite(k + 1))
}

/// A class of a chart with its recomputable kill and support pages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticClass {
    pub bidegree: BiDegree,
    pub element: Vector,
    pub kill_page: Page,
    pub support_page: Page,
}

impl SyntheticClass {
    pub fn of(chart: &Chart, at: BiDegree, element: Vector) -> Result<Self> {
        if chart.max_page.is_none() {
            return Err(ChartError::Domain(format!("chart `{}` declares no max_page", chart.name)));
        }
        let t = compute(chart)?;
        let p = chart.prime();
        Ok(SyntheticClass {
            bidegree: at,
            kill_page: min_kill_page_in(&t, p, at, &element)?,
            support_page: support_page_in(&t, p, at, &element)?,
            element,
        })
    }

    pub fn named(chart: &Chart, name: &str) -> Result<Self> {
        let g = chart.generator(name)?;
        let v = chart.group(g.at)?.unit(g.index);
        Self::of(chart, g.at, v)
    }

    /// Stored pages agree with a fresh computation.
    pub fn is_consistent(&self, chart: &Chart) -> Result<bool> {
        Ok(Self::of(chart, self.bidegree, self.element.clone())? == *self)
    }

    pub fn is_permanent_detected(&self) -> bool {
        self.kill_page == Page::Infinite && self.support_page == Page::Infinite
    }
}

/// Reduce relation rows to a fixed point: diagonal rows become orders and
/// generators that vanish are dropped. Returns kept columns, orders, relations.
fn canonical_relations(
    rows: Matrix,
    n: usize,
    p: Option<i128>,
) -> (Vec<usize>, Vec<u64>, Matrix) {
    let mut cols: Vec<usize> = (0..n).collect();
    let mut rows = snf::echelon(&rows, n);
    loop {
        let width = cols.len();
        let mut orders = vec![0u64; width];
        let mut rest = Vec::new();
        let mut changed = false;
        for r in &rows {
            let nz: Vec<usize> = (0..width).filter(|&j| r[j] != 0).collect();
            if nz.len() == 1 {
                let c = r[nz[0]].abs();
                let c2 = p.map_or(c, |p| snf::p_part(c, p));
                changed |= c2 != c;
                orders[nz[0]] = snf::gcd(i128::from(orders[nz[0]]), c2) as u64;
            } else {
                rest.push(r.clone());
            }
        }
        let keep: Vec<usize> = (0..width).filter(|&j| orders[j] != 1).collect();
        if keep.len() != width {
            changed = true;
        }
        let mut new_rows: Matrix = Vec::new();
        for (jj, &j) in keep.iter().enumerate() {
            if orders[j] > 1 {
                let mut e = vec![0; keep.len()];
                e[jj] = i128::from(orders[j]);
                new_rows.push(e);
            }
        }
        for r in &rest {
            new_rows.push(keep.iter().map(|&j| r[j]).collect());
        }
        let new_cols: Vec<usize> = keep.iter().map(|&j| cols[j]).collect();
        let echeloned = snf::echelon(&new_rows, keep.len());
        if !changed && echeloned == rows {
            let orders = keep.iter().map(|&j| orders[j]).collect();
            return (cols, orders, rest);
        }
        cols = new_cols;
        rows = echeloned;
    }
}

/// The E_r chart: each cell is `K_r / B_r` with propagated names; the
/// differentials of page at least `r` are re-expressed on the new cells.
pub fn turn_page(chart: &Chart, r: u32) -> Result<Chart> {
    let table = compute(chart)?;
    if r < chart.page || r < 2 || r > table.end + 1 {
        return Err(ChartError::Domain(format!(
            "page {r} outside {}..={} for `{}`",
            chart.page,
            table.end + 1,
            chart.name
        )));
    }
    let p = chart.prime();
    let st = table.at(r).expect("page in range");
    // per cell: echelon basis of K, kept columns
    let mut bases: BTreeMap<BiDegree, (Matrix, Vec<usize>)> = BTreeMap::new();
    let mut out = Chart {
        page: r,
        cells: Vec::new(),
        differentials: Vec::new(),
        products: Vec::new(),
        extensions: Vec::new(),
        ..chart.clone()
    };
    for cell in &chart.cells {
        let lat = &st[&cell.at];
        let kb = lat.k.clone();
        let mut rel = Vec::new();
        for brow in &lat.b {
            let (_, c) = snf::solve(&kb, brow, p).ok_or_else(|| {
                ChartError::Consistency(format!("boundary {:?} at {} is not a cycle", brow, cell.at))
            })?;
            rel.push(c);
        }
        let (cols, orders, rest) = canonical_relations(rel, kb.len(), p);
        if cols.is_empty() {
            continue;
        }
        let names = cell.group.names();
        let gens = cols
            .iter()
            .zip(&orders)
            .map(|(&j, &o)| Generator::new(combo_name(&kb[j], &names), o))
            .collect();
        out.cells.push(Cell {
            at: cell.at,
            group: PresentedAbGroup {
                generators: gens,
                relations: rest.iter().map(|r| narrow(r)).collect(),
            },
            provenance: cell.provenance.clone(),
        });
        bases.insert(cell.at, (kb, cols));
    }
    let coords = |at: BiDegree, v: &[i128]| -> Result<Option<(i128, Vector)>> {
        let Some((kb, cols)) = bases.get(&at) else { return Ok(None) };
        let (m, c) = snf::solve(kb, v, p)
            .ok_or_else(|| ChartError::Consistency(format!("{:?} at {} is not an E{r} class", v, at)))?;
        Ok(Some((m, cols.iter().map(|&j| c[j]).collect())))
    };
    for d in chart.differentials.iter().filter(|d| d.page >= r) {
        let n = chart.group(d.source)?.ngens();
        let mut basis = Vec::new();
        let mut images = Vec::new();
        let mut live = true;
        for (b, im) in d.basis_rows(n).iter().zip(d.image_rows()) {
            let (Some((m1, cb)), Some((m2, ci))) = (coords(d.source, b)?, coords(d.target, &im)?) else {
                live = false;
                break;
            };
            basis.push(narrow(&snf::scale(&cb, m2)));
            images.push(narrow(&snf::scale(&ci, m1)));
        }
        if live {
            out.differentials.push(Differential {
                basis: Some(basis),
                images,
                ..d.clone()
            });
        }
    }
    let names: std::collections::BTreeSet<String> =
        out.cells.iter().flat_map(|c| c.group.names()).collect();
    let present = |n: &str| names.contains(n);
    out.products = chart
        .products
        .iter()
        .filter(|e| present(&e.left) && present(&e.right) && e.result.iter().all(|t| present(&t.1)))
        .cloned()
        .collect();
    out.extensions = chart
        .extensions
        .iter()
        .filter(|e| present(&e.source) && e.result.iter().all(|t| present(&t.1)))
        .cloned()
        .collect();
    Ok(out)
}

/// Value of `d_r` on `x` at `at`, in E2 coordinates of the target cell.
///
/// `Ok(None)` when `x` does not survive to E_r; a zero vector when no page-`r`
/// differential leaves the cell (charts list every nonzero differential).
pub fn apply_differential(
    chart: &Chart,
    table: &PageTable,
    r: u32,
    at: BiDegree,
    x: &[i128],
) -> Result<Option<(BiDegree, Vector)>> {
    let p = chart.prime();
    let cur = table.at(r).ok_or_else(|| ChartError::Domain(format!("page {r} before the chart start")))?;
    let st = cur.get(&at).ok_or(ChartError::MissingCell(at))?;
    if !snf::contains(&st.k, x, p) {
        return Ok(None);
    }
    let target = at.diff_target(i64::from(r));
    let Some(d) = chart.differentials.iter().find(|d| d.page == r && d.source == at) else {
        let n = cur.get(&target).map_or(0, |t| t.n);
        return Ok(Some((target, vec![0; n])));
    };
    let a = action(d, cur, p)?;
    let n = cur[&target].n;
    let (m, v) = eval(&a, x, n, p).ok_or_else(|| ChartError::Consistency(format!("{:?} outside the domain of d{r} at {at}", x)))?;
    if m != 1 {
        // only happens over a localisation; the value is then m * d(x)
        return Err(ChartError::Domain(format!("d{r}({:?}) at {at} needs a unit rescaling by {m}", x)));
    }
    Ok(Some((target, v)))
}
