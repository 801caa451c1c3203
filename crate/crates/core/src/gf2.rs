//! Dense bit-packed linear algebra over the two-element field.

use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    n: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(n: usize) -> Self {
        BitVec { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn from_indices(n: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(n);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BitVec::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.n);
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    /// The first `m` coordinates.
    pub fn truncated(&self, m: usize) -> BitVec {
        assert!(m <= self.n);
        let mut v = BitVec::zeros(m);
        for (i, w) in v.words.iter_mut().enumerate() {
            *w = self.words[i];
        }
        if m % 64 != 0 {
            let last = v.words.len() - 1;
            v.words[last] &= (1u64 << (m % 64)) - 1;
        }
        v
    }

    /// Zero-padded to length `m`.
    pub fn extended(&self, m: usize) -> BitVec {
        assert!(m >= self.n);
        let mut v = BitVec::zeros(m);
        v.words[..self.words.len()].copy_from_slice(&self.words);
        v
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.n).map(|i| self.get(i)).collect()
    }
}

/// Reduced row echelon form of a set of rows, with pivots chosen in a given
/// column order.
#[derive(Debug, Clone)]
pub struct Rref {
    nvars: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn new(nvars: usize, rows: Vec<BitVec>) -> Rref {
        Rref::with_order(nvars, rows, &(0..nvars).collect::<Vec<_>>())
    }

    /// Elimination that picks pivot columns following `order`.
    pub fn with_order(nvars: usize, mut rows: Vec<BitVec>, order: &[usize]) -> Rref {
        rows.retain(|r| !r.is_zero());
        let mut pivots = Vec::new();
        let mut r = 0;
        for &c in order {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else { continue };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r);
            let (pivot_row, tail) = tail.split_first_mut().unwrap();
            let pivot_row = &*pivot_row;
            for row in head.iter_mut().chain(tail.iter_mut()) {
                if row.get(c) {
                    row.xor_assign(pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        let mut out = Rref { nvars, rows, pivots };
        out.sort_by_pivot();
        out
    }

    fn sort_by_pivot(&mut self) {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        self.rows = idx.iter().map(|&i| self.rows[i].clone()).collect();
        self.pivots = idx.iter().map(|&i| self.pivots[i]).collect();
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Dimension of the solution space of the homogeneous system.
    pub fn nullity(&self) -> usize {
        self.nvars - self.rank()
    }

    pub fn is_solution(&self, x: &BitVec) -> bool {
        self.rows.iter().all(|r| !r.dot(x))
    }

    /// Whether `x` lies in the row space.
    pub fn spans(&self, x: &BitVec) -> bool {
        let mut y = x.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if y.get(p) {
                y.xor_assign(row);
            }
        }
        y.is_zero()
    }

    fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.nvars];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.nvars).filter(|&c| !is_pivot[c]).collect()
    }

    /// One basis vector per free column.
    pub fn nullspace_basis(&self) -> Vec<BitVec> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = BitVec::zeros(self.nvars);
                v.set(f, true);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Completes `x` (whose free entries are set by `choose`) into a solution
    /// by setting pivot entries. Only valid when every pivot row has exactly
    /// one pivot among the entries being completed.
    fn complete(&self, x: &mut BitVec, is_pinned: impl Fn(usize) -> bool) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if is_pinned(p) {
                if row.dot(x) {
                    return false;
                }
            } else {
                x.set(p, false);
                let v = row.dot(x);
                x.set(p, v);
            }
        }
        true
    }

    pub fn random_solution<R: Rng + ?Sized>(&self, rng: &mut R) -> BitVec {
        let mut x = BitVec::zeros(self.nvars);
        for f in self.free_columns() {
            x.set(f, rng.gen_bool(0.5));
        }
        self.complete(&mut x, |_| false);
        x
    }
}

/// A homogeneous linear system: every row is a set of variables whose sum
/// must vanish.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    nvars: usize,
    rows: Vec<BitVec>,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, rows: Vec::new() }
    }

    pub fn push(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.nvars);
        self.rows.push(row);
    }

    pub fn push_indices(&mut self, ones: impl IntoIterator<Item = usize>) {
        self.push(BitVec::from_indices(self.nvars, ones));
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn rref(&self) -> Rref {
        Rref::new(self.nvars, self.rows.clone())
    }

    pub fn is_solution(&self, x: &BitVec) -> bool {
        self.rows.iter().all(|r| !r.dot(x))
    }

    /// Solutions whose first `prefix.len()` entries equal `prefix`; the
    /// remaining free entries are drawn from `choose`. `None` when the prefix
    /// admits no completion.
    pub fn solve_with_prefix(&self, prefix: &BitVec, choose: impl FnMut() -> bool) -> Option<BitVec> {
        self.prefix_solver(prefix.len()).solve(prefix, choose)
    }

    /// Eliminates once so that many prefixes of length `p` can be completed.
    pub fn prefix_solver(&self, p: usize) -> PrefixSolver {
        assert!(p <= self.nvars);
        let order: Vec<usize> = (p..self.nvars).chain(0..p).collect();
        let rref = Rref::with_order(self.nvars, self.rows.clone(), &order);
        let free = rref.free_columns().into_iter().filter(|&f| f >= p).collect();
        PrefixSolver { rref, p, free }
    }
}

/// Completion of fixed-length prefixes into solutions.
#[derive(Debug, Clone)]
pub struct PrefixSolver {
    rref: Rref,
    p: usize,
    free: Vec<usize>,
}

impl PrefixSolver {
    pub fn solve(&self, prefix: &BitVec, mut choose: impl FnMut() -> bool) -> Option<BitVec> {
        assert_eq!(prefix.len(), self.p);
        let mut x = prefix.extended(self.rref.nvars);
        for &f in &self.free {
            x.set(f, choose());
        }
        let p = self.p;
        self.rref.complete(&mut x, |c| c < p).then_some(x)
    }

    /// Whether a prefix extends at all.
    pub fn extends(&self, prefix: &BitVec) -> bool {
        self.solve(prefix, || false).is_some()
    }
}

/// Canonical form of a subspace given by spanning vectors.
pub fn span_rref(nvars: usize, vectors: Vec<BitVec>) -> Rref {
    Rref::new(nvars, vectors)
}
