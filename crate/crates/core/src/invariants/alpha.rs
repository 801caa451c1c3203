//! The symbols `α_k^t` and the shapes of their sequences.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::groupspec::{FamilyClass, GroupSpec, Layout};
use crate::tree_core::{Ball, BallKind, TreeShape};

/// `∞`, `r` or `r*`, ordered by `0 < 0* < 1 < 1* < ... < ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlphaSymbol {
    Finite(usize),
    Starred(usize),
    Infinite,
}

impl AlphaSymbol {
    fn rank(self) -> usize {
        match self {
            AlphaSymbol::Finite(r) => 2 * r,
            AlphaSymbol::Starred(r) => 2 * r + 1,
            AlphaSymbol::Infinite => usize::MAX,
        }
    }
}

impl PartialOrd for AlphaSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlphaSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for AlphaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSymbol::Finite(r) => write!(f, "{r}"),
            AlphaSymbol::Starred(r) => write!(f, "{r}*"),
            AlphaSymbol::Infinite => write!(f, "inf"),
        }
    }
}

/// Vertex-full balls of one shape, built on first use.
pub struct BallCache {
    shape: TreeShape,
    balls: Vec<[OnceLock<Ball>; 2]>,
}

impl BallCache {
    pub fn new(shape: TreeShape, max_depth: usize) -> Self {
        BallCache { shape, balls: (0..=max_depth).map(|_| [OnceLock::new(), OnceLock::new()]).collect() }
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn get(&self, root_type: u8, depth: usize) -> &Ball {
        self.balls[depth][root_type as usize].get_or_init(|| Ball::vertex_full(self.shape, root_type, depth))
    }
}

/// Windows contained in the depth-`k` cut, per family.
fn contained_count(layout: &Layout, ball: &Ball, k: usize, f: usize) -> usize {
    let Some(fam) = &layout.fams[f] else { return 0 };
    (0..=k)
        .filter(|&d| {
            let level = ball.level(d);
            let w = level.start;
            ball.vertex_type(w) == fam.anchor_type && ball.boundary_distance(w, k).unwrap() >= fam.max()
        })
        .map(|d| ball.level(d).len())
        .sum()
}

fn walk(ball: &Ball, v: usize, from: usize, dist: usize, max: usize, out: &mut Vec<(usize, usize)>) {
    out.push((v, dist));
    if dist == max {
        return;
    }
    for w in ball.neighbors(v) {
        if w != from {
            walk(ball, w, v, dist + 1, max, out);
        }
    }
}

/// Membership of the diagram whose `o` labels are exactly `odd` in the
/// depth-`k` diagram set, looking only at windows near the `o` labels.
///
/// Only vertex-full and half-rooted balls are supported (their levels are
/// of a single type).
pub fn sparse_member(spec: &GroupSpec, ball: &Ball, k: usize, odd: &[usize]) -> bool {
    assert!(ball.kind() != BallKind::EdgeRooted, "sparse membership needs a single root");
    let layout = spec.layout();
    // Window (anchor, family) -> parity.
    let mut touched: HashMap<(usize, usize), bool> = HashMap::new();
    let mut near = Vec::new();
    for &u in odd {
        for f in 0..2 {
            let Some(fam) = &layout.fams[f] else { continue };
            near.clear();
            walk(ball, u, usize::MAX, 0, fam.max(), &mut near);
            for &(w, dist) in &near {
                if ball.vertex_type(w) != fam.anchor_type || !fam.set.contains(&(dist as u32)) {
                    continue;
                }
                if ball.boundary_distance(w, k).is_none_or(|r| r < fam.max()) {
                    continue;
                }
                *touched.entry((w, f)).or_insert(false) ^= true;
            }
        }
    }
    let mut groups: [Vec<bool>; 2] = [Vec::new(), Vec::new()];
    let mut totals = [0usize; 2];
    for f in 0..2 {
        if let FamilyClass::Shared(g) = layout.classes[f] {
            totals[g as usize] += contained_count(&layout, ball, k, f);
        }
    }
    for (&(_, f), &p) in &touched {
        match layout.classes[f] {
            FamilyClass::Even => {
                if p {
                    return false;
                }
            }
            FamilyClass::Shared(g) => groups[g as usize].push(p),
        }
    }
    (0..2).all(|g| {
        let ps = &groups[g];
        if ps.len() < totals[g] {
            // Some window of the class sees no `o` at all, so the class
            // parity is even.
            ps.iter().all(|&p| !p)
        } else {
            ps.windows(2).all(|w| w[0] == w[1])
        }
    })
}

/// Leaf reached from the root by following the given 0-based slots.
fn leaf(ball: &Ball, slots: &[usize]) -> usize {
    slots.iter().fold(0, |v, &s| ball.child(v, s))
}

/// `α_k^t`, from `O(k)` witness-membership tests on `B(v, k)` with `v` of
/// type `(t + k) mod 2`.
pub fn alpha(spec: &GroupSpec, cache: &BallCache, t: u8, k: usize) -> AlphaSymbol {
    let ball = cache.get(((t as usize + k) % 2) as u8, k);
    let first = leaf(ball, &vec![0; k]);
    if sparse_member(spec, ball, k, &[first]) {
        return AlphaSymbol::Infinite;
    }
    let mut x = 0;
    for cand in (1..=k).rev() {
        let mut slots = vec![0; k];
        slots[k - cand] = 1;
        if sparse_member(spec, ball, k, &[first, leaf(ball, &slots)]) {
            x = cand;
            break;
        }
    }
    if x == k && k > 0 {
        return AlphaSymbol::Finite(k);
    }
    if k >= 1 && x == k - 1 {
        let per_branch: Vec<usize> = (0..ball.num_children(0))
            .map(|c| {
                let mut slots = vec![0; k];
                slots[0] = c;
                leaf(ball, &slots)
            })
            .collect();
        if sparse_member(spec, ball, k, &per_branch) {
            return AlphaSymbol::Starred(k - 1);
        }
        return AlphaSymbol::Finite(k - 1);
    }
    AlphaSymbol::Finite(x)
}

pub fn alpha_sequence(spec: &GroupSpec, cache: &BallCache, t: u8, kmax: usize) -> Vec<AlphaSymbol> {
    (0..=kmax).map(|k| alpha(spec, cache, t, k)).collect()
}

/// Case of the sequence `(α_k)`: `#0` (always infinite) or `#1`, `#2`,
/// `#3` with the index `K` of the first finite term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceShape {
    pub case: u8,
    pub k: Option<usize>,
}

impl SequenceShape {
    /// `K' = lim α_k`.
    pub fn k_prime(&self) -> Option<usize> {
        match (self.case, self.k) {
            (1, Some(k)) => Some(k),
            (2 | 3, Some(k)) => Some(k - 1),
            _ => None,
        }
    }
}

/// Matches a computed prefix of the sequence against the four shapes;
/// `None` when it fits none of them.
pub fn sequence_shape(seq: &[AlphaSymbol]) -> Option<SequenceShape> {
    use AlphaSymbol::*;
    let Some(kk) = seq.iter().position(|&a| a != Infinite) else {
        return Some(SequenceShape { case: 0, k: None });
    };
    let rest = &seq[kk + 1..];
    let (case, tail) = match seq[kk] {
        Finite(r) if r == kk => (1, Finite(kk)),
        Finite(r) if kk >= 1 && r == kk - 1 => (2, Finite(kk - 1)),
        Starred(r) if kk >= 1 && r == kk - 1 => (3, Finite(kk - 1)),
        _ => return None,
    };
    rest.iter().all(|&a| a == tail).then_some(SequenceShape { case, k: Some(kk) })
}
