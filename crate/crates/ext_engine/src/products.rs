//! Yoneda products by lifting cocycles to chain maps, and chart export.

use std::collections::{BTreeMap, HashMap};

use chart_core::{BiDegree, Cell, Chart, Generator, ProductEntry, Term, Window};

use crate::error::{ExtError, Result};
use crate::gf2::{BitVec, Echelon};
use crate::resolution::{act, Element, Resolution};

/// An element of `Ext^{s,t}`, in the basis dual to the stage-`s` generators
/// of degree `t` (listed in generator order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtClass {
    pub s: usize,
    pub t: usize,
    pub coords: BitVec,
}

impl ExtClass {
    pub fn stem(&self) -> i64 {
        self.t as i64 - self.s as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.stem(), self.s as i64)
    }
}

impl Resolution {
    /// Basis class `k` of `Ext^{s,t}`.
    pub fn class(&self, s: usize, t: usize, k: usize) -> Result<ExtClass> {
        let n = self.ext_dim(s, t);
        if !self.in_window(t as i64 - s as i64, s) || k >= n {
            return Err(ExtError::Window { stem: t as i64 - s as i64, s });
        }
        Ok(ExtClass { s, t, coords: BitVec::from_ones(n, [k]) })
    }

    pub fn unit(&self) -> ExtClass {
        ExtClass { s: 0, t: 0, coords: BitVec::from_ones(1, [0]) }
    }

    /// `h_i`, the class of the indecomposable in degree `2^i`.
    pub fn h(&self, i: usize) -> Result<ExtClass> {
        let t = 1usize << i;
        if self.ext_dim(1, t) != 1 {
            return Err(ExtError::UnknownClass(format!("h{i}")));
        }
        self.class(1, t, 0)
    }
}

/// Chain map `F_{s_y + j} -> F_j` lifting a cocycle, built on demand.
struct Lift<'a> {
    res: &'a Resolution,
    ys: usize,
    yt: usize,
    memo: HashMap<(usize, usize), Element>,
    solvers: HashMap<(usize, usize), (Echelon, usize)>,
}

impl<'a> Lift<'a> {
    fn new(res: &'a Resolution, y: &ExtClass) -> Self {
        let mut memo = HashMap::new();
        let gens = res.stages[y.s].gens_in(y.t);
        let unit = res.algebra.in_degree(0)[0];
        for (k, &g) in gens.iter().enumerate() {
            let e = if y.coords.get(k) { vec![(unit, 0)] } else { Vec::new() };
            memo.insert((0, g), e);
        }
        Lift { res, ys: y.s, yt: y.t, memo, solvers: HashMap::new() }
    }

    /// Image of generator `g` of stage `ys + j`.
    fn on(&mut self, j: usize, g: usize) -> Element {
        if let Some(e) = self.memo.get(&(j, g)) {
            return e.clone();
        }
        let deg = self.res.stages[self.ys + j].degrees[g];
        let e = if deg < self.yt || (j == 0) {
            Vec::new()
        } else {
            let t = deg - self.yt;
            // f_{j-1}(d g), then solve d_j e = that
            let mut target: HashMap<(usize, usize), ()> = HashMap::new();
            for &(a, g2) in &self.res.stages[self.ys + j].boundary[g].clone() {
                let img = self.on(j - 1, g2);
                for key in act(&self.res.algebra, a, &img) {
                    if target.remove(&key).is_none() {
                        target.insert(key, ());
                    }
                }
            }
            let target: Element = target.into_keys().collect();
            self.solve(j, t, &target)
        };
        self.memo.insert((j, g), e.clone());
        e
    }

    fn solve(&mut self, j: usize, t: usize, target: &Element) -> Element {
        let res = self.res;
        let (ech, width) = self.solvers.entry((j, t)).or_insert_with(|| {
            let (rows, width) = res.matrix(j, t);
            let n = rows.len();
            let mut ech = Echelon::new(width + n);
            for (i, r) in rows.into_iter().enumerate() {
                ech.insert(r.concat(&BitVec::from_ones(n, [i])));
            }
            (ech, width)
        });
        let width = *width;
        let n = res.module_dim(j as isize, t);
        let tv = res.to_vector(j as isize - 1, t, target);
        let mut v = tv.concat(&BitVec::zeros(n));
        ech.reduce_below(&mut v, width);
        assert!(v.slice(0, width).is_zero(), "exactness fails at stage {j}, degree {t}");
        res.from_vector(j, t, &v.slice(width, n))
    }
}

/// The Yoneda product `x * y`.
pub fn product(res: &Resolution, x: &ExtClass, y: &ExtClass) -> Result<ExtClass> {
    let s = x.s + y.s;
    let t = x.t + y.t;
    let stem = t as i64 - s as i64;
    if !res.in_window(stem, s) || s >= res.stages.len() {
        return Err(ExtError::Window { stem, s });
    }
    let unit = res.algebra.in_degree(0)[0];
    let xgens = res.stages[x.s].gens_in(x.t);
    let zgens = res.stages[s].gens_in(t);
    let mut lift = Lift::new(res, y);
    let mut coords = BitVec::zeros(zgens.len());
    for (m, &gz) in zgens.iter().enumerate() {
        let img = lift.on(x.s, gz);
        let mut bit = false;
        for (k, &gx) in xgens.iter().enumerate() {
            if x.coords.get(k) && img.contains(&(unit, gx)) {
                bit = !bit;
            }
        }
        coords.set(m, bit);
    }
    Ok(ExtClass { s, t, coords })
}

/// `h * x` for `h` one of `h0`, `h1`, `h2`, ... or `1`.
pub fn ext_product(res: &Resolution, x: &ExtClass, h: &str) -> Result<ExtClass> {
    if h == "1" {
        return product(res, x, &res.unit());
    }
    let i: usize = h
        .strip_prefix('h')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| ExtError::UnknownClass(h.to_string()))?;
    product(res, x, &res.h(i)?)
}

/// Names for the basis classes: `h`-monomials where a class is reached from a
/// named one by a single `h_i`, otherwise `x{stem}_{s}` with a letter suffix
/// when the bidegree has more than one generator.
pub fn class_names(res: &Resolution) -> BTreeMap<(usize, usize, usize), String> {
    let hs: Vec<(usize, ExtClass)> = (0..4).filter_map(|i| res.h(i).ok().map(|h| (i, h))).collect();
    let mut names: BTreeMap<(usize, usize, usize), (Vec<u32>, Option<String>)> = BTreeMap::new();
    names.insert((0, 0, 0), (vec![0; 4], None));
    for s in 0..=res.max_s {
        if s > 0 {
            let mut by_t: BTreeMap<usize, usize> = BTreeMap::new();
            for &t in res.stages[s].degrees.iter() {
                *by_t.entry(t).or_default() += 1;
            }
            for (t, n) in by_t {
                if t - s > res.max_stem {
                    continue;
                }
                for k in 0..n {
                    names.entry((s, t, k)).or_insert_with(|| {
                        let base = if n == 1 {
                            format!("x{}_{}", t - s, s)
                        } else {
                            format!("x{}_{}{}", t - s, s, (b'a' + k as u8) as char)
                        };
                        (vec![0; 4], Some(base))
                    });
                }
            }
        }
        let here: Vec<_> = names.range((s, 0, 0)..(s + 1, 0, 0)).map(|(k, v)| (*k, v.clone())).collect();
        for ((_, t, k), (exps, base)) in here {
            let x = ExtClass { s, t, coords: BitVec::from_ones(res.ext_dim(s, t), [k]) };
            for (i, h) in &hs {
                let Ok(y) = product(res, &x, h) else { continue };
                if y.coords.count_ones() == 1 {
                    let m = y.coords.next_one(0).expect("one bit");
                    let mut e = exps.clone();
                    e[*i] += 1;
                    names.entry((y.s, y.t, m)).or_insert((e, base.clone()));
                }
            }
        }
    }
    names
        .into_iter()
        .map(|(key, (exps, base))| {
            let mut out = String::new();
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => out.push_str(&format!("h{i}")),
                    _ => out.push_str(&format!("h{i}^{e}")),
                }
            }
            if let Some(b) = base {
                out.push_str(&b);
            }
            if out.is_empty() {
                out.push('1');
            }
            (key, out)
        })
        .collect()
}

/// The E2 chart of the resolution: elementary abelian cells, products by
/// every `h_i` that lands inside the window, no differentials.
pub fn export_chart(res: &Resolution) -> Chart {
    let names = class_names(res);
    let mut chart = Chart::new(
        format!("Ext over {}", res.algebra.name),
        Window::new((0, res.max_stem as i64), (0, res.max_s as i64)),
    );
    chart.prime = Some(2);
    chart.connective = true;
    let mut cells: BTreeMap<(usize, usize), Vec<Generator>> = BTreeMap::new();
    for (&(s, t, _), name) in &names {
        cells.entry((s, t)).or_default().push(Generator::new(name.clone(), 2));
    }
    for ((s, t), gens) in cells {
        chart.add_cell(Cell::new(BiDegree::new((t - s) as i64, s as i64), gens));
    }
    chart.cells.sort_by_key(|c| (c.at.stem, c.at.filtration));
    let hs: Vec<(String, ExtClass)> = (0..4).filter_map(|i| res.h(i).ok().map(|h| (format!("h{i}"), h))).collect();
    for (&(s, t, k), name) in &names {
        let x = ExtClass { s, t, coords: BitVec::from_ones(res.ext_dim(s, t), [k]) };
        for (hname, h) in &hs {
            let Ok(y) = product(res, &x, h) else { continue };
            let result = y
                .coords
                .ones()
                .map(|m| Term(1, names[&(y.s, y.t, m)].clone()))
                .collect();
            chart.products.push(ProductEntry {
                left: hname.clone(),
                right: name.clone(),
                result,
                tau: 0,
                provenance: Some(format!("minimal resolution over {}", res.algebra.name)),
            });
        }
    }
    chart
}
