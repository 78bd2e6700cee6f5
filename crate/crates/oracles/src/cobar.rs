//! Cohomology of the cobar complex of the dual of A(n).
//!
//! A(n)_* = F2[xi_1, ..., xi_{n+1}] / (xi_k^{2^{n+2-k}}) with the Milnor
//! coproduct. The normalised cobar complex has C^s spanned by bars
//! [a_1 | ... | a_s] of positive-degree monomials, and
//! d[a_1|...|a_s] = sum_i [a_1|...|a_i'|a_i''|...|a_s] over the reduced
//! coproduct of a_i. Ranks come from sparse column reduction with clearing.

use std::collections::{BTreeSet, HashMap};

type Mono = Vec<u32>;

/// The dual Hopf algebra, with its basis and reduced coproduct tabulated.
pub struct DualAlgebra {
    pub n: usize,
    pub basis: Vec<Mono>,
    pub degree: Vec<usize>,
    /// Reduced coproduct of each positive-degree basis element as index pairs.
    pub reduced: Vec<Vec<(usize, usize)>>,
}

fn bound(n: usize, k: usize) -> u32 {
    1 << (n + 2 - k)
}

impl DualAlgebra {
    pub fn new(n: usize) -> Self {
        let vars = n + 1;
        let mut basis: Vec<Mono> = vec![vec![]];
        for k in 1..=vars {
            let mut next = Vec::new();
            for m in &basis {
                for e in 0..bound(n, k) {
                    let mut m2 = m.clone();
                    m2.push(e);
                    next.push(m2);
                }
            }
            basis = next;
        }
        let deg = |m: &Mono| m.iter().enumerate().map(|(i, &e)| e as usize * ((1 << (i + 1)) - 1)).sum::<usize>();
        basis.sort_by_key(|m| (deg(m), m.clone()));
        let index: HashMap<Mono, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let degree = basis.iter().map(deg).collect();
        let zero = vec![0u32; vars];
        let truncated = |m: &Mono| m.iter().enumerate().all(|(i, &e)| e < bound(n, i + 1));
        // coproduct of xi_k: sum_{i+j=k} xi_i^{2^j} (x) xi_j
        let xi_delta = |k: usize| -> Vec<(Mono, Mono)> {
            (0..=k)
                .map(|i| {
                    let j = k - i;
                    let mut l = zero.clone();
                    if i > 0 {
                        l[i - 1] = 1 << j;
                    }
                    let mut r = zero.clone();
                    if j > 0 {
                        r[j - 1] = 1;
                    }
                    (l, r)
                })
                .collect()
        };
        let mut reduced = Vec::new();
        for m in &basis {
            let mut acc: BTreeSet<(Mono, Mono)> = BTreeSet::new();
            acc.insert((zero.clone(), zero.clone()));
            for (k, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    let mut next = BTreeSet::new();
                    for (a, b) in &acc {
                        for (l, r) in xi_delta(k + 1) {
                            let a2: Mono = a.iter().zip(&l).map(|(x, y)| x + y).collect();
                            let b2: Mono = b.iter().zip(&r).map(|(x, y)| x + y).collect();
                            if truncated(&a2) && truncated(&b2) {
                                let key = (a2, b2);
                                if !next.remove(&key) {
                                    next.insert(key);
                                }
                            }
                        }
                    }
                    acc = next;
                }
            }
            reduced.push(
                acc.into_iter()
                    .filter(|(a, b)| *a != zero && *b != zero)
                    .map(|(a, b)| (index[&a], index[&b]))
                    .collect(),
            );
        }
        DualAlgebra { n, basis, degree, reduced }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// All bars of length `s` and internal degree `t`.
fn bars(alg: &DualAlgebra, s: usize, t: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn go(alg: &DualAlgebra, left: usize, rem: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if left == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // every remaining slot needs degree >= 1
        for (i, &d) in alg.degree.iter().enumerate().skip(1) {
            if d + (left - 1) > rem {
                break;
            }
            cur.push(i as u16);
            go(alg, left - 1, rem - d, cur, out);
            cur.pop();
        }
    }
    go(alg, s, t, &mut cur, &mut out);
    out
}

/// `dim H^{s,t}` for `0 <= s <= max_s` and `t - s <= max_stem`, as `dims[s][stem]`.
pub fn ext_dims(n: usize, max_stem: usize, max_s: usize) -> Vec<Vec<usize>> {
    let alg = DualAlgebra::new(n);
    let mut dims = vec![vec![0; max_stem + 1]; max_s + 1];
    // group by t; within one t the complex runs over s
    for t in 0..=max_stem + max_s {
        let lo = t.saturating_sub(max_stem);
        let top = max_s.min(t) + 1;
        let mut ranks = vec![0usize; top + 1];
        let mut sizes = vec![0usize; top + 1];
        let mut cleared: BTreeSet<u32> = BTreeSet::new();
        let mut prev: Option<HashMap<Vec<u16>, u32>> = None;
        let start = lo.saturating_sub(1);
        let mut level: Vec<Vec<u16>> = if start == 0 { if t == 0 { vec![vec![]] } else { vec![] } } else { bars(&alg, start, t) };
        for s in start..top {
            let next = bars(&alg, s + 1, t);
            let index: HashMap<Vec<u16>, u32> = next.iter().cloned().enumerate().map(|(i, b)| (b, i as u32)).collect();
            sizes[s] = level.len();
            let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
            let mut rank = 0;
            let mut new_cleared = BTreeSet::new();
            for (ci, bar) in level.iter().enumerate() {
                if cleared.contains(&(ci as u32)) {
                    continue;
                }
                let mut col: BTreeSet<u32> = BTreeSet::new();
                for (pos, &a) in bar.iter().enumerate() {
                    for &(l, r) in &alg.reduced[a as usize] {
                        let mut nb = Vec::with_capacity(bar.len() + 1);
                        nb.extend_from_slice(&bar[..pos]);
                        nb.push(l as u16);
                        nb.push(r as u16);
                        nb.extend_from_slice(&bar[pos + 1..]);
                        let row = index[&nb];
                        if !col.remove(&row) {
                            col.insert(row);
                        }
                    }
                }
                let mut col: Vec<u32> = col.into_iter().collect();
                while let Some(&low) = col.last() {
                    match pivots.get(&low) {
                        Some(p) => col = sym_diff(&col, p),
                        None => break,
                    }
                }
                if let Some(&low) = col.last() {
                    pivots.insert(low, col);
                    new_cleared.insert(low);
                    rank += 1;
                }
            }
            ranks[s] = rank;
            cleared = new_cleared;
            prev = Some(index);
            level = next;
        }
        let _ = prev;
        for s in lo..=max_s.min(t) {
            let below = if s == 0 { 0 } else { ranks[s - 1] };
            dims[s][t - s] = sizes[s] - ranks[s] - below;
        }
    }
    dims
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
