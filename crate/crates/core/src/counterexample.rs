//! The SL(2, F_3) action on the rooted tree `T_{4,3,2}`, the parity
//! collapse from `T_{4,d1,2}`, and the exhaustive checks that no legal
//! coloring puts the alternating group inside the lifted group.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::{
    canonical_coloring_with_root, enumerate_legal_colorings, legal_coloring_count, local_parity, permutation_is_odd,
    ColoringError, LegalColoring,
};
use crate::permgrp::{closure, Perm, PermError, PermGroup, DEFAULT_BOUND};
use crate::tree_core::{Ball, BallAutomorphism, TreeError, TreeShape};

#[derive(Debug, Error)]
pub enum CounterexampleError {
    #[error("d1 must be at least 4, got {0}")]
    SmallDegree(usize),
    #[error("root colors differ ({0} and {1})")]
    RootMismatch(u16, u16),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A non-zero vector of `F_3^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F3Vector {
    pub x: u8,
    pub y: u8,
}

impl F3Vector {
    pub fn all() -> Vec<F3Vector> {
        let mut v = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if (x, y) != (0, 0) {
                    v.push(F3Vector { x, y });
                }
            }
        }
        v
    }

    /// Index of the line through the vector, in the order `[x=0]`, `[y=0]`,
    /// `[x=y]`, `[x=2y]`.
    pub fn line(self) -> usize {
        if self.x == 0 {
            0
        } else if self.y == 0 {
            1
        } else if self.x == self.y {
            2
        } else {
            3
        }
    }

    pub fn scale(self, c: u8) -> F3Vector {
        F3Vector { x: self.x * c % 3, y: self.y * c % 3 }
    }
}

pub const LINE_NAMES: [&str; 4] = ["[x=0]", "[y=0]", "[x=y]", "[x=2y]"];

/// A 2x2 matrix over `F_3`, rows `[[a, b], [c, d]]`, acting on column
/// vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[u8; 2]; 2]);

impl Mat2 {
    pub fn from_ints(m: [[i32; 2]; 2]) -> Mat2 {
        Mat2(m.map(|r| r.map(|x| x.rem_euclid(3) as u8)))
    }

    pub fn apply(&self, v: F3Vector) -> F3Vector {
        let [[a, b], [c, d]] = self.0;
        F3Vector { x: (a * v.x + b * v.y) % 3, y: (c * v.x + d * v.y) % 3 }
    }
}

/// Generators `(1 1; 0 1)` and `(0 -1; 1 0)` of SL(2, F_3).
pub fn sl23_generators() -> [Mat2; 2] {
    [Mat2::from_ints([[1, 1], [0, 1]]), Mat2::from_ints([[0, -1], [1, 0]])]
}

/// A bijection from the non-zero vectors to the leaves of `T_{4,3,2}`
/// respecting lines: the line of index `l` sits at root slot
/// `line_slot[l]`, and its two vectors (in lexicographic order) at leaf
/// slots `0, 1`, or `1, 0` when `flip[l]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Psi {
    pub line_slot: [usize; 4],
    pub flip: [bool; 4],
}

impl Psi {
    pub fn standard() -> Psi {
        Psi { line_slot: [0, 1, 2, 3], flip: [false; 4] }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Psi {
        let mut line_slot = [0, 1, 2, 3];
        line_slot.shuffle(rng);
        Psi { line_slot, flip: std::array::from_fn(|_| rng.gen_bool(0.5)) }
    }

    pub fn leaf(&self, ball: &Ball, v: F3Vector) -> usize {
        let l = v.line();
        let mut pair: Vec<F3Vector> = F3Vector::all().into_iter().filter(|w| w.line() == l).collect();
        pair.sort();
        let pos = pair.iter().position(|&w| w == v).unwrap() ^ self.flip[l] as usize;
        ball.child(ball.child(0, self.line_slot[l]), pos)
    }
}

/// The ball `T_{4,3,2}`.
pub fn t432() -> Ball {
    Ball::vertex_full(TreeShape::new(4, 3).unwrap(), 0, 2)
}

/// `T_{4,d1,2}`.
pub fn t4d2(d1: usize) -> Result<Ball, CounterexampleError> {
    Ok(Ball::vertex_full(TreeShape::new(4, d1)?, 0, 2))
}

/// The image of SL(2, F_3) in `Aut(T_{4,3,2})`, as permutations of the 13
/// vertex ids.
pub struct G0 {
    pub ball: Ball,
    pub psi: Psi,
    pub group: PermGroup,
}

fn perm_of_matrix(ball: &Ball, psi: &Psi, m: &Mat2) -> Perm {
    let mut img: Vec<u16> = (0..ball.len() as u16).collect();
    for v in F3Vector::all() {
        let w = m.apply(v);
        let (a, b) = (psi.leaf(ball, v), psi.leaf(ball, w));
        img[a] = b as u16;
        img[ball.parent(a).unwrap()] = ball.parent(b).unwrap() as u16;
    }
    Perm::from_images(img).expect("matrix action is a bijection")
}

pub fn to_perm(g: &BallAutomorphism) -> Perm {
    Perm::from_images(g.images().iter().map(|&x| x as u16).collect()).expect("automorphism is a bijection")
}

impl G0 {
    pub fn build(psi: Psi) -> G0 {
        let ball = t432();
        let gens: Vec<Perm> = sl23_generators().iter().map(|m| perm_of_matrix(&ball, &psi, m)).collect();
        let group = closure(ball.len(), &gens, DEFAULT_BOUND).expect("order 24");
        G0 { ball, psi, group }
    }

    pub fn standard() -> G0 {
        G0::build(Psi::standard())
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn contains(&self, g: &BallAutomorphism) -> bool {
        self.group.contains(&to_perm(g))
    }

    /// Elements fixing `B(v0, 1)` pointwise.
    pub fn fixator_order(&self) -> usize {
        self.group.elements().iter().filter(|g| (0..5).all(|v| g.apply(v) == v)).count()
    }

    /// The action on the four children of the root.
    pub fn root_action(&self) -> PermGroup {
        let gens: Vec<Perm> = self
            .group
            .generators()
            .iter()
            .map(|g| Perm::from_images((1..5).map(|v| g.apply(v) as u16 - 1).collect()).unwrap())
            .collect();
        closure(4, &gens, DEFAULT_BOUND).expect("order 12")
    }

    /// `-I` as a permutation of vertices.
    pub fn minus_identity(&self) -> Perm {
        perm_of_matrix(&self.ball, &self.psi, &Mat2::from_ints([[-1, 0], [0, -1]]))
    }
}

/// `Alt_(i)`: automorphisms whose local action at every non-leaf vertex is
/// even, by filtered enumeration.
pub fn alt_group_of(ball: &Ball, i: &LegalColoring, bound: u128) -> Result<Vec<BallAutomorphism>, CounterexampleError> {
    let inner = ball.prefix_len(ball.depth().saturating_sub(1));
    let mut out = Vec::new();
    'next: for g in ball.enumerate_automorphisms(bound)? {
        for v in 0..inner {
            if local_parity(ball, i, &g, v)? {
                continue 'next;
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// Outcome for one legal coloring of `T_{4,3,2}`.
#[derive(Debug, Clone)]
pub struct ColoringRecord {
    pub index: usize,
    pub coloring: LegalColoring,
    pub alt_order: usize,
    pub intersection_order: usize,
    /// An element of `Alt_(i0)` outside `G̃0`.
    pub witness: Option<Perm>,
    pub witness_verified: bool,
}

#[derive(Debug, Clone)]
pub struct NoAltReport {
    pub colorings_checked: usize,
    pub all_fail: bool,
    pub records: Vec<ColoringRecord>,
}

impl NoAltReport {
    pub fn all_witnesses_verified(&self) -> bool {
        self.records.iter().all(|r| r.witness_verified)
    }
}

fn check_coloring(g0: &G0, index: usize, i0: LegalColoring) -> Result<ColoringRecord, CounterexampleError> {
    let ball = &g0.ball;
    let alt = alt_group_of(ball, &i0, 1 << 20)?;
    let alt_perms: Vec<Perm> = alt.iter().map(to_perm).collect();
    let alt_set: HashSet<&Perm> = alt_perms.iter().collect();
    let intersection_order = alt_perms.iter().filter(|p| g0.group.contains(p)).count();
    // The element swapping [x=0] with [y=0] and [x=y] with [x=2y].
    let s = g0.psi.line_slot;
    let swaps = |p: &Perm| {
        let c = |l: usize| 1 + s[l];
        p.apply(c(0)) == c(1) && p.apply(c(1)) == c(0) && p.apply(c(2)) == c(3) && p.apply(c(3)) == c(2)
    };
    let witness = alt_perms
        .iter()
        .find(|p| swaps(p))
        .or_else(|| alt_perms.iter().find(|p| !g0.group.contains(p)))
        .cloned();
    let witness_verified = match &witness {
        Some(w) => {
            let sq = w.compose(w);
            let in_alt = alt_set.contains(w) && alt_set.contains(&sq);
            let g = alt.iter().find(|g| to_perm(g) == *w).unwrap();
            let even = (0..5).all(|v| !local_parity(ball, &i0, g, v).unwrap());
            in_alt && even && !g0.group.contains(w)
        }
        None => false,
    };
    Ok(ColoringRecord { index, coloring: i0, alt_order: alt.len(), intersection_order, witness, witness_verified })
}

/// Runs over all legal colorings of `T_{4,3,2}` and checks for each that
/// `Alt_(i0)` is not contained in `G̃0`.
pub fn verify_no_alt_coloring_with(g0: &G0) -> Result<NoAltReport, CounterexampleError> {
    let ball = &g0.ball;
    let it = enumerate_legal_colorings(ball, 1 << 20)?;
    let n = it.count_total() as usize;
    let mut records: Vec<ColoringRecord> = (0..n)
        .into_par_iter()
        .map(|k| check_coloring(g0, k, it.nth_coloring(k as u128)))
        .collect::<Result<_, _>>()?;
    records.sort_by_key(|r| r.index);
    let all_fail = records.iter().all(|r| r.intersection_order < r.alt_order && r.witness.is_some());
    Ok(NoAltReport { colorings_checked: n, all_fail, records })
}

pub fn verify_no_alt_coloring() -> Result<NoAltReport, CounterexampleError> {
    verify_no_alt_coloring_with(&G0::standard())
}

/// The data fixing the collapse `f: Aut(T_{4,d1,2}) -> Aut(T_{4,3,2})`:
/// colorings `j`, `j0` with equal root color and the color-preserving
/// bijection `alpha` of the first spheres.
pub struct Collapse {
    pub big: Ball,
    pub small: Ball,
    pub j: LegalColoring,
    pub j0: LegalColoring,
    /// `alpha[x]` for each child `x` of the root of `big`.
    alpha: Vec<usize>,
    alpha_inv: Vec<usize>,
}

/// Parity of the color permutation `i(y) -> i(g(y))` on the star of the
/// depth-1 vertex `x`, where `g` sends `x` to `gx`, the root to the root,
/// and the child in slot `s` to the child in slot `leaf[s]` of `gx`.
fn star_parity(ball: &Ball, i: &LegalColoring, x: usize, gx: usize, leaf: &[u8]) -> bool {
    let d = ball.shape().degree(ball.vertex_type(x));
    let mut img = vec![0u16; d];
    img[i.color(0) as usize - 1] = i.color(0) - 1;
    for (s, y) in ball.children(x).enumerate() {
        let gy = ball.child(gx, leaf[s] as usize);
        img[i.color(y) as usize - 1] = i.color(gy) - 1;
    }
    permutation_is_odd(&img)
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, (n - 1) as u8);
            out.push(q);
        }
    }
    out.sort();
    out
}

impl Collapse {
    pub fn new(big: Ball, j: LegalColoring, j0: LegalColoring) -> Result<Collapse, CounterexampleError> {
        if big.shape().d0() != 4 || big.depth() != 2 {
            return Err(TreeError::ShapeMismatch.into());
        }
        let small = t432();
        if j.key() != big.key() || j0.key() != small.key() {
            return Err(ColoringError::BallMismatch.into());
        }
        if j.color(0) != j0.color(0) {
            return Err(CounterexampleError::RootMismatch(j.color(0), j0.color(0)));
        }
        let alpha: Vec<usize> = big
            .children(0)
            .map(|x| small.children(0).find(|&y| j0.color(y) == j.color(x)).unwrap())
            .collect();
        let mut alpha_inv = vec![0; 4];
        for (s, &y) in alpha.iter().enumerate() {
            alpha_inv[small.slot(y)] = big.child(0, s);
        }
        Ok(Collapse { big, small, j, j0, alpha, alpha_inv })
    }

    /// The reference choice: canonical colorings with root color 1.
    pub fn standard(d1: usize) -> Result<Collapse, CounterexampleError> {
        if d1 < 4 {
            return Err(CounterexampleError::SmallDegree(d1));
        }
        let big = t4d2(d1)?;
        let j = canonical_coloring_with_root(&big, 1)?;
        let j0 = canonical_coloring_with_root(&t432(), 1)?;
        Collapse::new(big, j, j0)
    }

    pub fn alpha(&self, x: usize) -> usize {
        self.alpha[self.big.slot(x)]
    }

    pub fn alpha_inv(&self, y: usize) -> usize {
        self.alpha_inv[self.small.slot(y)]
    }

    /// `f(g)`: agrees with `g` on the first sphere through `alpha`, with the
    /// local action at each `alpha(x)` of the same parity as `g`'s at `x`.
    pub fn collapse(&self, g: &BallAutomorphism) -> Result<BallAutomorphism, CounterexampleError> {
        if g.key() != self.big.key() {
            return Err(ColoringError::BallMismatch.into());
        }
        let (big, small) = (&self.big, &self.small);
        let mut portrait: Vec<Vec<u8>> = (0..small.len()).map(|v| vec![0; small.num_children(v)]).collect();
        for y in small.children(0) {
            let gy = self.alpha(g.apply(self.alpha_inv(y)));
            portrait[0][small.slot(y)] = small.slot(gy) as u8;
        }
        for y in small.children(0) {
            let x = self.alpha_inv(y);
            let want = local_parity(big, &self.j, g, x)?;
            let gy = self.alpha(g.apply(x));
            let leaf = [[0u8, 1], [1, 0]]
                .into_iter()
                .find(|l| star_parity(small, &self.j0, y, gy, l) == want)
                .unwrap();
            portrait[y] = leaf.to_vec();
        }
        Ok(small.automorphism(&portrait, false)?)
    }

    /// Some `g` with `f(g) = w0` whose local action at each depth-1 vertex
    /// has parity `parity(x)` under `i`, optionally sending leaf `pin.1` to
    /// `pin.2` below `pin.0`.
    fn lift(
        &self,
        w0: &BallAutomorphism,
        i: &LegalColoring,
        parity: impl Fn(usize) -> bool,
        pin: Option<(usize, usize, usize)>,
    ) -> Result<Option<BallAutomorphism>, CounterexampleError> {
        let big = &self.big;
        let mut portrait: Vec<Vec<u8>> = (0..big.len()).map(|v| vec![0; big.num_children(v)]).collect();
        for x in big.children(0) {
            let gx = self.alpha_inv(w0.apply(self.alpha(x)));
            portrait[0][big.slot(x)] = big.slot(gx) as u8;
        }
        let perms = permutations(big.num_children(1));
        for x in big.children(0) {
            let gx = big.child(0, portrait[0][big.slot(x)] as usize);
            let ok = perms.iter().find(|l| {
                star_parity(big, i, x, gx, l) == parity(x)
                    && pin.is_none_or(|(px, a, b)| {
                        px != x || big.child(gx, l[big.slot(a)] as usize) == b
                    })
            });
            match ok {
                Some(l) => portrait[x] = l.clone(),
                None => return Ok(None),
            }
        }
        Ok(Some(big.automorphism(&portrait, false)?))
    }
}

/// `ĩ0`: equal to `j0` on `B(v0, 1)`, and below each `y` a relabelling of
/// `j0` whose parity matches that of `ĩ j^{-1}` on the star of
/// `alpha^{-1}(y)`.
pub fn induced_coloring(c: &Collapse, i: &LegalColoring) -> Result<LegalColoring, CounterexampleError> {
    let (big, small) = (&c.big, &c.small);
    let mut colors = c.j0.colors().to_vec();
    for y in small.children(0) {
        let x = c.alpha_inv(y);
        let d = big.shape().degree(1);
        let mut pi = vec![0u16; d];
        for z in big.neighbors(x) {
            pi[c.j.color(z) as usize - 1] = i.color(z) - 1;
        }
        if permutation_is_odd(&pi) {
            let (a, b) = (small.child(y, 0), small.child(y, 1));
            colors.swap(a, b);
        }
    }
    Ok(LegalColoring::from_colors(small, colors)?)
}

#[derive(Debug, Clone)]
pub struct LiftReport {
    pub d1: usize,
    pub colorings_checked: u128,
    pub exhaustive: bool,
    /// Parity classes (of `ĩ j^{-1}` on the four depth-1 stars) whose
    /// image `f(Alt_(ĩ)) = Alt_(ĩ0)` was checked element by element.
    pub classes_checked: usize,
    pub holds: bool,
}

/// No legal coloring `ĩ` of `T_{4,d1,2}` has `Alt_(ĩ) ⊆ f^{-1}(G̃0)`: for
/// each `ĩ`, the proof's witness for `ĩ0` lifts to an element of `Alt_(ĩ)`
/// whose collapse lies outside `G̃0`. All colorings are checked when there
/// are at most `exhaustive_bound`; otherwise a random sample, plus every
/// parity class.
pub fn verify_lift_with(
    d1: usize,
    exhaustive_bound: u128,
    sample: usize,
    seed: u64,
) -> Result<LiftReport, CounterexampleError> {
    let c = Collapse::standard(d1)?;
    let g0 = G0::standard();
    let no_alt = verify_no_alt_coloring_with(&g0)?;
    if !no_alt.all_fail {
        return Ok(LiftReport { d1, colorings_checked: 0, exhaustive: false, classes_checked: 0, holds: false });
    }
    let small_index: std::collections::HashMap<Vec<u16>, usize> =
        no_alt.records.iter().map(|r| (r.coloring.colors().to_vec(), r.index)).collect();

    let check = |i: &LegalColoring| -> Result<bool, CounterexampleError> {
        let i0 = induced_coloring(&c, i)?;
        let rec = &no_alt.records[small_index[i0.colors()]];
        let w = rec.witness.as_ref().unwrap();
        let w0 = c.small.automorphism(&portrait_of(&c.small, w), false)?;
        let Some(g) = c.lift(&w0, i, |_| false, None)? else { return Ok(false) };
        let in_alt = (0..5).all(|v| !local_parity(&c.big, i, &g, v).unwrap());
        let fg = c.collapse(&g)?;
        Ok(in_alt && fg == w0 && !g0.contains(&fg))
    };

    let total = legal_coloring_count(&c.big);
    let it = enumerate_legal_colorings(&c.big, u128::MAX)?;
    let (checked, exhaustive, mut holds) = if total <= exhaustive_bound {
        let ok = (0..total as usize)
            .into_par_iter()
            .map(|k| check(&it.nth_coloring(k as u128)))
            .collect::<Result<Vec<bool>, _>>()?
            .into_iter()
            .all(|b| b);
        (total, true, ok)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let idx: Vec<u128> = (0..sample).map(|_| rng.gen_range(0..total)).collect();
        let ok = idx
            .into_par_iter()
            .map(|k| check(&it.nth_coloring(k)))
            .collect::<Result<Vec<bool>, _>>()?
            .into_iter()
            .all(|b| b);
        (sample as u128, false, ok)
    };

    // One representative per parity class: `j` with two leaves swapped
    // below the chosen depth-1 vertices.
    let mut classes = 0;
    for mask in 0..16u32 {
        let mut colors = c.j.colors().to_vec();
        for (s, x) in c.big.children(0).enumerate() {
            if mask >> s & 1 == 1 {
                colors.swap(c.big.child(x, 0), c.big.child(x, 1));
            }
        }
        let i = LegalColoring::from_colors(&c.big, colors)?;
        holds &= check(&i)?;
        holds &= image_matches(&c, &i)?;
        classes += 1;
    }
    Ok(LiftReport { d1, colorings_checked: checked, exhaustive, classes_checked: classes, holds })
}

pub fn verify_lift(d1: usize) -> Result<bool, CounterexampleError> {
    Ok(verify_lift_with(d1, 200_000, 2_000, 1)?.holds)
}

fn portrait_of(ball: &Ball, p: &Perm) -> Vec<Vec<u8>> {
    (0..ball.len()).map(|v| ball.children(v).map(|c| ball.slot(p.apply(c)) as u8).collect()).collect()
}

/// `f(Alt_(i)) = Alt_(i0)`, with `Alt_(i)` generated level by level: an
/// even root action and, below each depth-1 vertex, the even local actions.
fn image_matches(c: &Collapse, i: &LegalColoring) -> Result<bool, CounterexampleError> {
    let i0 = induced_coloring(c, i)?;
    let want: HashSet<Perm> = alt_group_of(&c.small, &i0, 1 << 20)?.iter().map(to_perm).collect();
    let big = &c.big;
    let perms = permutations(big.num_children(1));
    let mut got: HashSet<Perm> = HashSet::new();
    for rp in permutations(4) {
        let mut portrait: Vec<Vec<u8>> = (0..big.len()).map(|v| (0..big.num_children(v) as u8).collect()).collect();
        portrait[0] = rp.clone();
        let probe = big.automorphism(&portrait, false)?;
        if local_parity(big, i, &probe, 0)? {
            continue;
        }
        // Per depth-1 vertex, the even leaf permutations; their collapse
        // only depends on the parity, so one of each suffices for the image.
        for x in big.children(0) {
            let gx = probe.apply(x);
            let l = perms.iter().find(|l| !star_parity(big, i, x, gx, l)).unwrap();
            portrait[x] = l.clone();
        }
        let g = big.automorphism(&portrait, false)?;
        got.insert(to_perm(&c.collapse(&g)?));
    }
    Ok(got == want)
}

/// Freedom of `G̃ = f^{-1}(G̃0)` at depth 2: its root action is 2-transitive
/// on the four children, and for each child `x` the stabilizer of `x` in
/// `G̃` is transitive on the children of `x`.
pub fn verify_freedom(d1: usize) -> Result<bool, CounterexampleError> {
    let c = Collapse::standard(d1)?;
    let g0 = G0::standard();
    if !g0.root_action().is_2transitive() {
        return Ok(false);
    }
    let big = &c.big;
    let small_autos: Vec<BallAutomorphism> = g0
        .group
        .elements()
        .iter()
        .map(|p| c.small.automorphism(&portrait_of(&c.small, p), false))
        .collect::<Result<_, _>>()?;
    for x in big.children(0) {
        let ax = c.alpha(x);
        let fixing: Vec<&BallAutomorphism> = small_autos.iter().filter(|w| w.apply(ax) == ax).collect();
        for a in big.children(x) {
            for b in big.children(x) {
                let mut found = false;
                for w0 in &fixing {
                    // f(g) = w0 needs the parity of g at x under j to match
                    // that of w0 at alpha(x) under j0.
                    let parity = |y: usize| local_parity(&c.small, &c.j0, w0, c.alpha(y)).unwrap();
                    if let Some(g) = c.lift(w0, &c.j, parity, Some((x, a, b)))? {
                        if c.collapse(&g)? == **w0 && g.apply(a) == b {
                            found = true;
                            break;
                        }
                    }
                }
                if !found {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_and_psi() {
        let b = t432();
        let psi = Psi::standard();
        for u in F3Vector::all() {
            for v in F3Vector::all() {
                let same_parent = b.parent(psi.leaf(&b, u)) == b.parent(psi.leaf(&b, v));
                let proportional = v == u || v == u.scale(2);
                assert_eq!(same_parent, proportional);
            }
        }
    }

    #[test]
    fn group_g0() {
        let g0 = G0::standard();
        assert_eq!(g0.order(), 24);
        assert_eq!(g0.fixator_order(), 2);
        let r = g0.root_action();
        assert_eq!(r.order(), 12);
        assert!(r.contains_alt() && r.is_2transitive());
        assert!(g0.group.contains(&g0.minus_identity()));
    }

    #[test]
    fn alt_orders() {
        let b = t432();
        let i = canonical_coloring_with_root(&b, 1).unwrap();
        assert_eq!(alt_group_of(&b, &i, 1000).unwrap().len(), 12);
        let b1 = Ball::vertex_full(TreeShape::new(4, 4).unwrap(), 0, 1);
        let i1 = canonical_coloring_with_root(&b1, 1).unwrap();
        let a = alt_group_of(&b1, &i1, 1000).unwrap();
        assert_eq!(a.len(), 12);
        assert!(a.iter().any(|g| g.is_identity()));
    }

    #[test]
    fn collapse_identity_and_products() {
        let c = Collapse::standard(4).unwrap();
        let id = c.big.identity();
        assert!(c.collapse(&id).unwrap().is_identity());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let g = c.big.random_automorphism(&mut rng);
            let h = c.big.random_automorphism(&mut rng);
            let gh = c.big.compose(&g, &h).unwrap();
            let lhs = c.collapse(&gh).unwrap();
            let rhs = c.small.compose(&c.collapse(&g).unwrap(), &c.collapse(&h).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn freedom() {
        assert!(verify_freedom(4).unwrap());
    }
}
