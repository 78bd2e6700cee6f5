//! Bit-packed vectors over GF(2) and incremental row echelon forms.

/// A dense GF(2) vector stored in 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        if self.get(i) != b {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, o: &BitVec) {
        debug_assert_eq!(self.len, o.len);
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// First set bit at or after `from`.
    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut w = from / 64;
        let mut word = self.words[w] & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                let i = w * 64 + word.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        let mut at = 0;
        std::iter::from_fn(move || {
            let i = self.next_one(at)?;
            at = i + 1;
            Some(i)
        })
    }

    /// Bits `[from, from + len)` as a new vector.
    pub fn slice(&self, from: usize, len: usize) -> BitVec {
        BitVec::from_ones(len, self.ones().filter(|&i| i >= from && i < from + len).map(|i| i - from))
    }

    /// `self` followed by `o`.
    pub fn concat(&self, o: &BitVec) -> BitVec {
        BitVec::from_ones(self.len + o.len, self.ones().chain(o.ones().map(|i| i + self.len)))
    }
}

/// Rows in echelon form keyed by their lowest set bit.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<BitVec>,
    by_pivot: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new(), by_pivot: vec![None; width] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Reduce only over pivots in `[0, limit)`.
    pub fn reduce_below(&self, v: &mut BitVec, limit: usize) {
        let mut at = 0;
        while let Some(c) = v.next_one(at) {
            if c >= limit {
                break;
            }
            if let Some(r) = self.by_pivot[c] {
                v.xor_assign(&self.rows[r]);
            }
            at = c + 1;
        }
    }

    pub fn reduce(&self, v: &mut BitVec) {
        self.reduce_below(v, self.width);
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    /// Add `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        self.reduce(&mut v);
        match v.next_one(0) {
            None => false,
            Some(p) => {
                self.by_pivot[p] = Some(self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }
}

/// Kernel of the map sending basis vector `i` to `rows[i]` (vectors of
/// length `width`), as vectors of length `rows.len()`.
///
/// Sparse rows are eliminated first to keep fill-in down.
pub fn kernel(rows: &[BitVec], width: usize) -> Vec<BitVec> {
    let n = rows.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| rows[i].count_ones());
    let mut ech = Echelon::new(width + n);
    let mut out = Vec::new();
    for i in order {
        let mut v = rows[i].concat(&BitVec::from_ones(n, [i]));
        ech.reduce_below(&mut v, width);
        if v.next_one(0).is_some_and(|p| p < width) {
            ech.insert(v);
        } else {
            let k = v.slice(width, n);
            out.push(k);
        }
    }
    out
}

pub fn rank(rows: &[BitVec], width: usize) -> usize {
    let mut e = Echelon::new(width);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Solve `sum_i c_i rows[i] = target`; `None` when `target` is not in the span.
pub fn solve(rows: &[BitVec], width: usize, target: &BitVec) -> Option<BitVec> {
    let n = rows.len();
    let mut ech = Echelon::new(width + n);
    for (i, r) in rows.iter().enumerate() {
        ech.insert(r.concat(&BitVec::from_ones(n, [i])));
    }
    let mut v = target.concat(&BitVec::zeros(n));
    ech.reduce_below(&mut v, width);
    v.slice(0, width).is_zero().then(|| v.slice(width, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits() {
        let mut v = BitVec::zeros(130);
        v.flip(3);
        v.flip(129);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 129]);
        assert_eq!(v.next_one(4), Some(129));
        assert_eq!(v.slice(100, 30).ones().collect::<Vec<_>>(), vec![29]);
    }

    #[test]
    fn kernel_and_solve() {
        let rows = vec![
            BitVec::from_ones(3, [0, 1]),
            BitVec::from_ones(3, [1, 2]),
            BitVec::from_ones(3, [0, 2]),
        ];
        let k = kernel(&rows, 3);
        assert_eq!(k, vec![BitVec::from_ones(3, [0, 1, 2])]);
        assert_eq!(rank(&rows, 3), 2);
        let c = solve(&rows, 3, &BitVec::from_ones(3, [0, 2])).unwrap();
        let mut acc = BitVec::zeros(3);
        for i in c.ones() {
            acc.xor_assign(&rows[i]);
        }
        assert_eq!(acc, BitVec::from_ones(3, [0, 2]));
        assert!(solve(&rows, 3, &BitVec::from_ones(3, [0])).is_none());
    }
}
