//! Finite graded algebras over F2 given by structure constants, and the
//! Milnor basis of the subalgebras A(n) of the Steenrod algebra.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{ExtError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: usize,
}

/// A connected, finite-dimensional graded algebra over F2.
///
/// `products[i][j]` lists the basis elements whose sum is `b_i * b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedAlgebra {
    pub name: String,
    /// Algebra generators as (name, degree); each must be a basis element.
    pub generators: Vec<(String, usize)>,
    pub basis: Vec<BasisElement>,
    pub products: Vec<Vec<Vec<usize>>>,
    #[serde(skip)]
    by_degree: Vec<Vec<usize>>,
    #[serde(skip)]
    position: Vec<usize>,
}

/// Milnor basis element `Sq(r_1, r_2, ...)`, trailing zeros stripped.
pub type Milnor = Vec<u32>;

fn milnor_degree(r: &[u32]) -> usize {
    r.iter().enumerate().map(|(i, &x)| x as usize * ((1usize << (i + 1)) - 1)).sum()
}

fn milnor_name(r: &[u32]) -> String {
    if r.is_empty() {
        "1".into()
    } else {
        format!("Sq({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Mod 2 Milnor product `Sq(r) * Sq(s)` as a list of basis sequences.
///
/// Sums over matrices `x` with `sum_j 2^j x_ij = r_i` and `sum_i x_ij = s_j`;
/// each contributes `Sq(t)` with `t_n = sum_{i+j=n} x_ij` when the entries
/// on every antidiagonal have pairwise disjoint binary digits.
pub fn milnor_product(r: &[u32], s: &[u32]) -> Vec<Milnor> {
    let rows = r.len();
    let cols = s.len();
    let mut x = vec![vec![0u32; cols + 1]; rows + 1];
    let mut out: BTreeSet<Milnor> = BTreeSet::new();
    // cells (i, j) with i, j >= 1, filled row by row
    let cells: Vec<(usize, usize)> = (1..=rows).flat_map(|i| (1..=cols).map(move |j| (i, j))).collect();
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        r: &[u32],
        s: &[u32],
        x: &mut Vec<Vec<u32>>,
        out: &mut BTreeSet<Milnor>,
    ) {
        if k == cells.len() {
            let rows = r.len();
            let cols = s.len();
            for i in 1..=rows {
                let used: u32 = (1..=cols).map(|j| x[i][j] << j).sum();
                x[i][0] = r[i - 1] - used;
            }
            for j in 1..=cols {
                let used: u32 = (1..=rows).map(|i| x[i][j]).sum();
                if used > s[j - 1] {
                    return;
                }
                x[0][j] = s[j - 1] - used;
            }
            let mut t = Vec::new();
            for n in 1..=rows + cols {
                let mut acc = 0u32;
                let mut sum = 0u32;
                for i in 0..=n.min(rows) {
                    let j = n - i;
                    if j > cols {
                        continue;
                    }
                    let v = x[i][j];
                    if acc & v != 0 {
                        return;
                    }
                    acc |= v;
                    sum += v;
                }
                t.push(sum);
            }
            while t.last() == Some(&0) {
                t.pop();
            }
            if !out.remove(&t) {
                out.insert(t);
            }
            return;
        }
        let (i, j) = cells[k];
        let used_row: u32 = (1..j).map(|jj| x[i][jj] << jj).sum();
        let used_col: u32 = (1..i).map(|ii| x[ii][j]).sum();
        let mut v = 0;
        while (v << j) + used_row <= r[i - 1] && v + used_col <= s[j - 1] {
            x[i][j] = v;
            fill(k + 1, cells, r, s, x, out);
            v += 1;
        }
        x[i][j] = 0;
    }
    fill(0, &cells, r, s, &mut x, &mut out);
    out.into_iter().collect()
}

impl GradedAlgebra {
    /// The subalgebra A(n), with basis `Sq(r_1, ..., r_{n+1})`, `r_i < 2^{n+2-i}`.
    pub fn milnor(n: usize) -> Result<GradedAlgebra> {
        if n > 3 {
            return Err(ExtError::Algebra(format!("A({n}) is larger than supported")));
        }
        let mut seqs: Vec<Milnor> = vec![vec![]];
        for i in 1..=n + 1 {
            let bound = 1u32 << (n + 2 - i);
            seqs = seqs
                .into_iter()
                .flat_map(|m| (0..bound).map(move |e| {
                    let mut m2 = m.clone();
                    m2.push(e);
                    m2
                }))
                .collect();
        }
        let mut seqs: Vec<Milnor> = seqs
            .into_iter()
            .map(|mut m| {
                while m.last() == Some(&0) {
                    m.pop();
                }
                m
            })
            .collect();
        seqs.sort_by_key(|m| (milnor_degree(m), m.clone()));
        let index: std::collections::HashMap<Milnor, usize> =
            seqs.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut products = Vec::with_capacity(seqs.len());
        for a in &seqs {
            let mut row = Vec::with_capacity(seqs.len());
            for b in &seqs {
                let mut terms = Vec::new();
                for t in milnor_product(a, b) {
                    let k = *index.get(&t).ok_or_else(|| {
                        ExtError::Algebra(format!("{} * {} leaves A({n}) at {}", milnor_name(a), milnor_name(b), milnor_name(&t)))
                    })?;
                    terms.push(k);
                }
                terms.sort_unstable();
                row.push(terms);
            }
            products.push(row);
        }
        let basis = seqs.iter().map(|m| BasisElement { name: milnor_name(m), degree: milnor_degree(m) }).collect();
        let generators = (0..=n).map(|k| (format!("Sq({})", 1u32 << k), 1usize << k)).collect();
        let mut alg = GradedAlgebra {
            name: format!("A({n})"),
            generators,
            basis,
            products,
            by_degree: Vec::new(),
            position: Vec::new(),
        };
        alg.index();
        Ok(alg)
    }

    fn index(&mut self) {
        let top = self.basis.iter().map(|b| b.degree).max().unwrap_or(0);
        self.by_degree = vec![Vec::new(); top + 1];
        self.position = vec![0; self.basis.len()];
        for (i, b) in self.basis.iter().enumerate() {
            self.position[i] = self.by_degree[b.degree].len();
            self.by_degree[b.degree].push(i);
        }
    }

    /// Parse and check a presentation written as JSON.
    pub fn from_json(s: &str) -> Result<GradedAlgebra> {
        let mut a: GradedAlgebra = serde_json::from_str(s).map_err(|e| ExtError::Algebra(e.to_string()))?;
        a.index();
        a.check()?;
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra serialises")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].degree
    }

    pub fn top_degree(&self) -> usize {
        self.by_degree.len().saturating_sub(1)
    }

    /// Basis indices in degree `d`.
    pub fn in_degree(&self, d: usize) -> &[usize] {
        self.by_degree.get(d).map_or(&[], |v| v.as_slice())
    }

    /// Position of basis element `i` among those of its degree.
    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> &[usize] {
        &self.products[a][b]
    }

    /// Connectedness, grading and exhaustive associativity.
    pub fn check(&self) -> Result<()> {
        let n = self.dim();
        if self.in_degree(0).len() != 1 {
            return Err(ExtError::Algebra(format!("{}: degree 0 must be one-dimensional", self.name)));
        }
        let unit = self.in_degree(0)[0];
        if self.products.len() != n || self.products.iter().any(|r| r.len() != n) {
            return Err(ExtError::Algebra(format!("{}: product table is not {n} x {n}", self.name)));
        }
        for a in 0..n {
            if self.mul(unit, a) != [a] || self.mul(a, unit) != [a] {
                return Err(ExtError::Algebra(format!("{}: unit fails on {}", self.name, self.basis[a].name)));
            }
            for b in 0..n {
                let d = self.degree(a) + self.degree(b);
                if self.mul(a, b).iter().any(|&c| self.degree(c) != d) {
                    return Err(ExtError::Algebra(format!(
                        "{}: {} * {} is not homogeneous",
                        self.name, self.basis[a].name, self.basis[b].name
                    )));
                }
            }
        }
        for (g, d) in &self.generators {
            match self.find(g) {
                Some(i) if self.degree(i) == *d => {}
                _ => return Err(ExtError::Algebra(format!("{}: generator {g} is not a basis element of degree {d}", self.name))),
            }
        }
        let mut left = vec![false; n];
        let mut right = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    left.iter_mut().for_each(|x| *x = false);
                    right.iter_mut().for_each(|x| *x = false);
                    for &ab in self.mul(a, b) {
                        for &k in self.mul(ab, c) {
                            left[k] ^= true;
                        }
                    }
                    for &bc in self.mul(b, c) {
                        for &k in self.mul(a, bc) {
                            right[k] ^= true;
                        }
                    }
                    if left != right {
                        return Err(ExtError::Algebra(format!(
                            "{}: ({} {}) {} differs from {} ({} {})",
                            self.name,
                            self.basis[a].name,
                            self.basis[b].name,
                            self.basis[c].name,
                            self.basis[a].name,
                            self.basis[b].name,
                            self.basis[c].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products() {
        // Sq1 Sq1 = 0, Sq1 Sq2 = Sq3, Sq2 Sq2 = Sq(1,1)
        assert!(milnor_product(&[1], &[1]).is_empty());
        assert_eq!(milnor_product(&[1], &[2]), vec![vec![3]]);
        assert_eq!(milnor_product(&[2], &[2]), vec![vec![1, 1]]);
        assert_eq!(milnor_product(&[2], &[1]), vec![vec![0, 1], vec![3]]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(GradedAlgebra::milnor(0).unwrap().dim(), 2);
        assert_eq!(GradedAlgebra::milnor(1).unwrap().dim(), 8);
        let a2 = GradedAlgebra::milnor(2).unwrap();
        assert_eq!(a2.dim(), 64);
        assert_eq!(a2.top_degree(), 23);
        a2.check().unwrap();
    }
}
