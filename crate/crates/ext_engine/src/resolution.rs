//! Minimal free resolutions of F2 over a finite graded algebra, computed one
//! internal degree at a time.

use std::collections::HashMap;

use crate::algebra::GradedAlgebra;
use crate::error::{ExtError, Result};
use crate::gf2::{self, BitVec, Echelon};

/// One homological degree of the resolution.
///
/// `boundary[k]` is `d(g_k) = sum a * g'` stored as `(a, g')` pairs, with `a`
/// an algebra basis index and `g'` a generator of the previous stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionStage {
    pub s: usize,
    pub degrees: Vec<usize>,
    pub boundary: Vec<Vec<(usize, usize)>>,
}

impl ResolutionStage {
    /// Generators in internal degree `t`, as indices.
    pub fn gens_in(&self, t: usize) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&k| self.degrees[k] == t).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub algebra: GradedAlgebra,
    pub max_stem: usize,
    pub max_s: usize,
    pub stages: Vec<ResolutionStage>,
}

/// Element of a free module: a set of `(a, g)` pairs, summed.
pub type Element = Vec<(usize, usize)>;

fn toggle(e: &mut HashMap<(usize, usize), ()>, key: (usize, usize)) {
    if e.remove(&key).is_none() {
        e.insert(key, ());
    }
}

fn sorted(e: HashMap<(usize, usize), ()>) -> Element {
    let mut v: Element = e.into_keys().collect();
    v.sort_unstable();
    v
}

/// Offsets of each generator's block in the degree-`t` part of a free module.
fn offsets(alg: &GradedAlgebra, degrees: &[usize], t: usize) -> (Vec<Option<usize>>, usize) {
    let mut off = Vec::with_capacity(degrees.len());
    let mut n = 0;
    for &d in degrees {
        if d <= t && !alg.in_degree(t - d).is_empty() {
            off.push(Some(n));
            n += alg.in_degree(t - d).len();
        } else {
            off.push(None);
        }
    }
    (off, n)
}

/// `a * e` for an algebra basis element `a`.
pub fn act(alg: &GradedAlgebra, a: usize, e: &Element) -> Element {
    let mut out = HashMap::new();
    for &(b, g) in e {
        for &c in alg.mul(a, b) {
            toggle(&mut out, (c, g));
        }
    }
    sorted(out)
}

impl Resolution {
    fn stage_degrees(&self, s: isize) -> &[usize] {
        if s < 0 {
            &[0]
        } else {
            &self.stages[s as usize].degrees
        }
    }

    /// Dimension of the degree-`t` part of stage `s` (stage -1 is F2).
    pub fn module_dim(&self, s: isize, t: usize) -> usize {
        if s < 0 {
            return usize::from(t == 0);
        }
        offsets(&self.algebra, self.stage_degrees(s), t).1
    }

    /// Element as a vector in the degree-`t` basis of stage `s`.
    pub fn to_vector(&self, s: isize, t: usize, e: &Element) -> BitVec {
        if s < 0 {
            let mut v = BitVec::zeros(self.module_dim(s, t));
            for &(a, _) in e {
                if self.algebra.degree(a) == 0 && t == 0 {
                    v.flip(0);
                }
            }
            return v;
        }
        let (off, n) = offsets(&self.algebra, self.stage_degrees(s), t);
        let mut v = BitVec::zeros(n);
        for &(a, g) in e {
            let o = off[g].expect("element lives in degree t");
            v.flip(o + self.algebra.position(a));
        }
        v
    }

    pub fn from_vector(&self, s: usize, t: usize, v: &BitVec) -> Element {
        let degrees = &self.stages[s].degrees;
        let (off, _) = offsets(&self.algebra, degrees, t);
        let mut out = Vec::new();
        for (g, o) in off.iter().enumerate() {
            if let Some(o) = o {
                for (p, &a) in self.algebra.in_degree(t - degrees[g]).iter().enumerate() {
                    if v.get(o + p) {
                        out.push((a, g));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `d(a * g)` for generator `g` of stage `s`.
    pub fn boundary_of(&self, s: usize, a: usize, g: usize) -> Element {
        if s == 0 {
            return if self.algebra.degree(a) == 0 { vec![(a, 0)] } else { Vec::new() };
        }
        act(&self.algebra, a, &self.stages[s].boundary[g])
    }

    pub fn boundary(&self, s: usize, e: &Element) -> Element {
        let mut out = HashMap::new();
        for &(a, g) in e {
            for key in self.boundary_of(s, a, g) {
                toggle(&mut out, key);
            }
        }
        sorted(out)
    }

    /// Rows of `d_s` in degree `t`, one per basis element of stage `s`.
    pub fn matrix(&self, s: usize, t: usize) -> (Vec<BitVec>, usize) {
        let width = self.module_dim(s as isize - 1, t);
        let degrees = &self.stages[s].degrees;
        let mut rows = Vec::new();
        for (g, &d) in degrees.iter().enumerate() {
            if d > t {
                continue;
            }
            for &a in self.algebra.in_degree(t - d) {
                rows.push(self.to_vector(s as isize - 1, t, &self.boundary_of(s, a, g)));
            }
        }
        (rows, width)
    }

    /// `dim Ext^{s,t}`.
    pub fn ext_dim(&self, s: usize, t: usize) -> usize {
        self.stages.get(s).map_or(0, |st| st.degrees.iter().filter(|&&d| d == t).count())
    }

    /// `dims[s][stem]` over the window.
    pub fn dims(&self) -> Vec<Vec<usize>> {
        (0..=self.max_s)
            .map(|s| (0..=self.max_stem).map(|n| self.ext_dim(s, n + s)).collect())
            .collect()
    }

    pub fn in_window(&self, stem: i64, s: usize) -> bool {
        stem >= 0 && stem as usize <= self.max_stem && s <= self.max_s
    }
}

/// Resolve F2 through stems `<= max_stem` and homological degrees `<= max_s`.
pub fn minimal_resolution(alg: &GradedAlgebra, max_stem: usize, max_s: usize) -> Result<Resolution> {
    minimal_resolution_with_budget(alg, max_stem, max_s, usize::MAX)
}

/// As `minimal_resolution`, failing once a single matrix would need more than
/// `budget` entries.
pub fn minimal_resolution_with_budget(
    alg: &GradedAlgebra,
    max_stem: usize,
    max_s: usize,
    budget: usize,
) -> Result<Resolution> {
    let mut res = Resolution {
        algebra: alg.clone(),
        max_stem,
        max_s,
        stages: (0..=max_s + 1)
            .map(|s| ResolutionStage { s, degrees: Vec::new(), boundary: Vec::new() })
            .collect(),
    };
    // the generator of stage 0 maps to 1 under the augmentation
    res.stages[0].degrees.push(0);
    res.stages[0].boundary.push(Vec::new());
    let top_s = max_s + 1;
    let top_t = max_stem + top_s + 1;
    for t in 0..=top_t {
        let lo = t.saturating_sub(max_stem + 1);
        let mut kernel: Option<Vec<BitVec>> = None;
        for s in lo..=top_s {
            if s > 0 && t - s.min(t) <= max_stem && s <= t {
                let prev = kernel.take().expect("kernel of the previous stage");
                let (rows, width) = res.matrix(s, t);
                if rows.len().saturating_mul(width) > budget {
                    return Err(ExtError::Resource {
                        budget,
                        stage: s,
                        t,
                        complete_through: t as i64 - top_s as i64 - 1,
                    });
                }
                let mut ech = Echelon::new(width);
                for r in rows {
                    ech.insert(r);
                }
                for kv in prev {
                    if ech.insert(kv.clone()) {
                        let e = res.from_vector(s - 1, t, &kv);
                        res.stages[s].degrees.push(t);
                        res.stages[s].boundary.push(e);
                    }
                }
            }
            if s == top_s {
                break;
            }
            kernel = Some(if s == 0 {
                let n = res.module_dim(0, t);
                if t == 0 {
                    Vec::new()
                } else {
                    (0..n).map(|i| BitVec::from_ones(n, [i])).collect()
                }
            } else {
                let (rows, width) = res.matrix(s, t);
                if rows.len().saturating_mul(width) > budget {
                    return Err(ExtError::Resource {
                        budget,
                        stage: s,
                        t,
                        complete_through: t as i64 - top_s as i64 - 1,
                    });
                }
                gf2::kernel(&rows, width)
            });
        }
    }
    Ok(res)
}
