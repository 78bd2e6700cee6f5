//! Integer Smith normal form and the lattice operations built on it.
//!
//! Vectors are rows. A lattice is given by a list of generating rows; with a
//! prime set, membership is decided over the localisation at that prime.

pub type Vector = Vec<i128>;
pub type Matrix = Vec<Vector>;

/// Result of `smith`: `u * m * v = d` with `u`, `v` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Matrix,
    pub v: Matrix,
    /// Diagonal of `d`, length `min(rows, cols)`; entries past `rank` are zero.
    pub diag: Vec<i128>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn zero_vector(n: usize) -> Vector {
    vec![0; n]
}

pub fn is_zero(v: &[i128]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn add_scaled(dst: &mut [i128], src: &[i128], k: i128) {
    if k == 0 {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d += k * *s;
    }
}

pub fn scale(v: &[i128], k: i128) -> Vector {
    v.iter().map(|x| x * k).collect()
}

/// `sum_i c_i * rows_i`, with `n` the ambient width.
pub fn combine(c: &[i128], rows: &[Vector], n: usize) -> Vector {
    let mut out = zero_vector(n);
    for (ci, r) in c.iter().zip(rows) {
        add_scaled(&mut out, r, *ci);
    }
    out
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            let mut out = zero_vector(cols);
            for (k, &x) in row.iter().enumerate().take(inner) {
                if x != 0 {
                    add_scaled(&mut out, &b[k], x);
                }
            }
            out
        })
        .collect()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b) * b).abs()
}

/// p-adic valuation; `None` for zero.
pub fn valuation(x: i128, p: i128) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut x = x.abs();
    let mut k = 0;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    Some(k)
}

/// The part of `x` prime to `p`, made positive.
pub fn prime_to_part(x: i128, p: i128) -> i128 {
    let mut x = x.abs();
    if x == 0 {
        return 0;
    }
    while x % p == 0 {
        x /= p;
    }
    x
}

/// The `p`-power part of `x` (0 stays 0).
pub fn p_part(x: i128, p: i128) -> i128 {
    if x == 0 {
        return 0;
    }
    x.abs() / prime_to_part(x, p)
}

/// Smith normal form of an `rows x cols` matrix.
pub fn smith(m: &[Vector], cols: usize) -> Smith {
    let rows = m.len();
    let mut a: Matrix = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let lim = rows.min(cols);
    let mut rank = 0;
    'outer: for t in 0..lim {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            a.swap(t, pi);
            u.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    let (top, rest) = a.split_at_mut(i);
                    add_scaled(&mut rest[0], &top[t], -q);
                    let (ut, ur) = u.split_at_mut(i);
                    add_scaled(&mut ur[0], &ut[t], -q);
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| a[i].iter().skip(t + 1).any(|&x| x % p != 0));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    add_scaled(&mut top[t], &rest[0], 1);
                    let (ut, ur) = u.split_at_mut(i);
                    add_scaled(&mut ut[t], &ur[0], 1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        rank = t + 1;
    }
    let diag = (0..lim).map(|i| a[i][i]).collect();
    Smith { u, v, diag, rank, rows, cols }
}

/// Invariant factors (nonzero diagonal entries, unit entries included).
pub fn invariant_factors(m: &[Vector], cols: usize) -> Vec<i128> {
    let s = smith(m, cols);
    s.diag[..s.rank].to_vec()
}

/// Solve `mult * x = sum_j c_j * gens_j`.
///
/// Over the integers `mult` is always 1. With a prime `p`, `mult` is prime to
/// `p`, so the relation holds after localising.
pub fn solve(gens: &[Vector], x: &[i128], prime: Option<i128>) -> Option<(i128, Vector)> {
    let n = x.len();
    if gens.is_empty() {
        return is_zero(x).then(Vec::new).map(|c| (1, c));
    }
    let s = smith(gens, n);
    let y = mat_mul(&vec![x.to_vec()], &s.v, n, n).remove(0);
    if y[s.rank..].iter().any(|&t| t != 0) {
        return None;
    }
    let mut mult = 1i128;
    for i in 0..s.rank {
        let d = s.diag[i];
        if y[i] == 0 {
            continue;
        }
        match prime {
            None => {
                if y[i] % d != 0 {
                    return None;
                }
            }
            Some(p) => {
                if valuation(y[i], p) < valuation(d, p) {
                    return None;
                }
                mult = lcm(mult, prime_to_part(d, p));
            }
        }
    }
    let k = gens.len();
    let mut cprime = zero_vector(k);
    for i in 0..s.rank {
        cprime[i] = y[i] * mult / s.diag[i];
    }
    let c = combine(&cprime, &s.u, k);
    Some((mult, c))
}

pub fn contains(gens: &[Vector], x: &[i128], prime: Option<i128>) -> bool {
    solve(gens, x, prime).is_some()
}

/// Integer basis of `{ c : sum_j c_j rows_j = 0 }`.
pub fn left_kernel(rows: &[Vector], cols: usize) -> Matrix {
    if rows.is_empty() {
        return Vec::new();
    }
    let s = smith(rows, cols);
    s.u[s.rank..].to_vec()
}

/// Row echelon (Hermite) basis of the lattice spanned by `gens`.
///
/// Pivots are positive and entries above a pivot are reduced into
/// `[0, pivot)`, so the output is canonical for the integral lattice.
pub fn echelon(gens: &[Vector], cols: usize) -> Matrix {
    let mut rows: Matrix = gens.iter().filter(|r| !is_zero(r)).cloned().collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].abs());
            let Some(b) = best else { break };
            rows.swap(r, b);
            let p = rows[r][col];
            let mut done = true;
            for i in r + 1..rows.len() {
                let q = rows[i][col] / p;
                if q != 0 {
                    let (top, rest) = rows.split_at_mut(i);
                    add_scaled(&mut rest[0], &top[r], -q);
                }
                done &= rows[i][col] == 0;
            }
            if done {
                break;
            }
        }
        if r < rows.len() && rows[r][col] != 0 {
            if rows[r][col] < 0 {
                for x in rows[r].iter_mut() {
                    *x = -*x;
                }
            }
            pivots.push((r, col));
            r += 1;
        }
    }
    rows.truncate(r);
    for &(pr, pc) in &pivots {
        let p = rows[pr][pc];
        for i in 0..pr {
            let q = rows[i][pc].div_euclid(p);
            if q != 0 {
                let (top, rest) = rows.split_at_mut(pr);
                add_scaled(&mut top[i], &rest[0], -q);
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &[Vector], cols: usize) {
        let s = smith(m, cols);
        let uv = mat_mul(&mat_mul(&s.u, &m.to_vec(), m.len(), cols), &s.v, cols, cols);
        for (i, row) in uv.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j && i < s.diag.len() { s.diag[i] } else { 0 };
                assert_eq!(x, want, "entry ({i},{j})");
            }
        }
        for w in s.diag[..s.rank].windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn smith_small() {
        check(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(
            invariant_factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3),
            vec![2, 6, 12]
        );
        check(&[vec![0, 0], vec![0, 3]], 2);
        check(&[], 3);
    }

    #[test]
    fn solve_and_localise() {
        let gens = vec![vec![4, 0], vec![0, 6]];
        assert_eq!(solve(&gens, &[8, 12], None), Some((1, vec![2, 2])));
        assert!(!contains(&gens, &[2, 0], None));
        assert!(contains(&gens, &[0, 2], Some(2)));
        assert!(!contains(&gens, &[0, 1], Some(2)));
        let (m, c) = solve(&gens, &[0, 2], Some(2)).unwrap();
        assert_eq!(combine(&c, &gens, 2), vec![0, 2 * m]);
    }

    #[test]
    fn kernel_and_echelon() {
        let rows = vec![vec![1, 2], vec![2, 4], vec![0, 1]];
        let k = left_kernel(&rows, 2);
        assert_eq!(k.len(), 1);
        assert!(is_zero(&combine(&k[0], &rows, 2)));
        assert_eq!(echelon(&rows, 2), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(echelon(&[vec![4, 6], vec![2, 3]], 2), vec![vec![2, 3]]);
    }
}
