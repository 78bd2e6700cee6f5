use crate::snf::{self, Matrix, Vector};
use serde::{Deserialize, Serialize};

/// A named generator; `order == 0` means infinite order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    #[serde(default)]
    pub order: u64,
}

impl Generator {
    pub fn new(name: impl Into<String>, order: u64) -> Self {
        Generator { name: name.into(), order }
    }
}

/// Finitely generated abelian group: generators with orders plus extra
/// relation rows over the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct PresentedAbGroup {
    pub generators: Vec<Generator>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<i64>>,
}

/// Invariant-factor form: torsion factors ascending (each dividing the next),
/// then a free rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Invariants {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl Invariants {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl std::fmt::Display for Invariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Render an integer combination of named generators, e.g. `2*u^2-eta`.
pub fn combo_name(coeffs: &[i128], names: &[String]) -> String {
    let mut out = String::new();
    for (c, n) in coeffs.iter().zip(names) {
        if *c == 0 {
            continue;
        }
        let sign = if *c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
        out.push_str(sign);
        if c.abs() != 1 {
            out.push_str(&format!("{}*", c.abs()));
        }
        out.push_str(n);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl PresentedAbGroup {
    pub fn cyclic(name: impl Into<String>, order: u64) -> Self {
        PresentedAbGroup { generators: vec![Generator::new(name, order)], relations: Vec::new() }
    }

    pub fn from_generators(gens: Vec<Generator>) -> Self {
        PresentedAbGroup { generators: gens, relations: Vec::new() }
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = snf::zero_vector(self.ngens());
        v[i] = 1;
        v
    }

    /// All relation rows: one per finite order, then the explicit relations.
    pub fn relation_rows(&self) -> Matrix {
        let n = self.ngens();
        let mut rows: Matrix = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.order != 0 {
                let mut r = snf::zero_vector(n);
                r[i] = i128::from(g.order);
                rows.push(r);
            }
        }
        for r in &self.relations {
            rows.push(r.iter().map(|&x| i128::from(x)).collect());
        }
        rows
    }

    pub fn invariants(&self, prime: Option<i128>) -> Invariants {
        let n = self.ngens();
        let rows = self.relation_rows();
        let s = snf::smith(&rows, n);
        let mut torsion = Vec::new();
        for &d in &s.diag[..s.rank] {
            let d = match prime {
                Some(p) => snf::p_part(d, p),
                None => d,
            };
            if d != 1 {
                torsion.push(d as u64);
            }
        }
        Invariants { torsion, free_rank: n - s.rank }
    }

    pub fn is_trivial(&self, prime: Option<i128>) -> bool {
        self.invariants(prime).is_trivial()
    }

    /// Whether `x` is zero in the group.
    pub fn is_zero(&self, x: &[i128], prime: Option<i128>) -> bool {
        snf::contains(&self.relation_rows(), x, prime)
    }

    pub fn equal(&self, x: &[i128], y: &[i128], prime: Option<i128>) -> bool {
        let d: Vector = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d, prime)
    }

    /// Additive order of `x`; `None` for infinite order.
    pub fn element_order(&self, x: &[i128], prime: Option<i128>) -> Option<u64> {
        let n = self.ngens();
        let rows = self.relation_rows();
        let s = snf::smith(&rows, n);
        let y = snf::mat_mul(&vec![x.to_vec()], &s.v, n, n).remove(0);
        if y[s.rank..].iter().any(|&t| t != 0) {
            return None;
        }
        let mut ord = 1i128;
        for i in 0..s.rank {
            let d = s.diag[i];
            let k = d / snf::gcd(d, y[i]);
            let k = match prime {
                Some(p) => snf::p_part(k, p),
                None => k,
            };
            ord = snf::lcm(ord, k);
        }
        Some(ord as u64)
    }

    /// Diagonal presentation with the invariant factors; generator names are
    /// combinations of the original ones. Applying it twice changes nothing.
    pub fn reduced(&self, prime: Option<i128>) -> PresentedAbGroup {
        let n = self.ngens();
        let rows = self.relation_rows();
        let s = snf::smith(&rows, n);
        let names = self.names();
        let mut gens = Vec::new();
        for j in 0..n {
            let d = if j < s.rank { s.diag[j] } else { 0 };
            let d = match prime {
                Some(p) if d != 0 => snf::p_part(d, p),
                _ => d,
            };
            if d == 1 {
                continue;
            }
            // generator j of the new basis is row j of v^{-1}
            let col: Vector = inverse_row(&s.v, j, n);
            gens.push(Generator::new(combo_name(&col, &names), d as u64));
        }
        gens.sort_by_key(|g| (g.order == 0, g.order));
        PresentedAbGroup::from_generators(gens)
    }
}

/// Row `j` of the inverse of the unimodular matrix `v`.
fn inverse_row(v: &Matrix, j: usize, n: usize) -> Vector {
    // rows of v^{-1} solve  w * v = e_j
    let mut e = snf::zero_vector(n);
    e[j] = 1;
    let (m, w) = snf::solve(v, &e, None).expect("unimodular");
    debug_assert_eq!(m, 1);
    w
}
