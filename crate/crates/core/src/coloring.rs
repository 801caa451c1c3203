//! Legal colorings of balls and the local action `σ_(i)(g, v)`.

use std::fmt::Write as _;

use crate::tree_core::{Address, Ball, BallAutomorphism, BallKey, BallKind, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("the star of vertex {0} is not contained in the ball")]
    StarNotContained(String),
    #[error("coloring is not legal at vertex {0}")]
    Illegal(String),
    #[error("coloring and ball do not match")]
    BallMismatch,
    #[error("color {color} is out of range at vertex {vertex}")]
    ColorOutOfRange { vertex: String, color: u16 },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Colors of all vertices of a ball. A type-0 vertex carries a color in
/// `1..=d1` and a type-1 vertex a color in `1..=d0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LegalColoring {
    key: BallKey,
    colors: Vec<u16>,
}

fn color_range(ball: &Ball, v: usize) -> u16 {
    ball.shape().degree(1 - ball.vertex_type(v)) as u16
}

impl LegalColoring {
    pub fn from_colors(ball: &Ball, colors: Vec<u16>) -> Result<Self, ColoringError> {
        if colors.len() != ball.len() {
            return Err(ColoringError::BallMismatch);
        }
        let c = LegalColoring { key: ball.key(), colors };
        c.check(ball)?;
        Ok(c)
    }

    fn check(&self, ball: &Ball) -> Result<(), ColoringError> {
        for v in 0..ball.len() {
            let c = self.colors[v];
            if c == 0 || c > color_range(ball, v) {
                return Err(ColoringError::ColorOutOfRange {
                    vertex: ball.address(v).to_string(),
                    color: c,
                });
            }
        }
        for w in 0..ball.len() {
            let mut seen = [false; 256];
            for x in ball.neighbors(w) {
                let c = self.colors[x] as usize;
                if std::mem::replace(&mut seen[c], true) {
                    return Err(ColoringError::Illegal(ball.address(w).to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn key(&self) -> BallKey {
        self.key
    }

    pub fn color(&self, v: usize) -> u16 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u16] {
        &self.colors
    }

    /// Restriction to the ball of depth `sub.depth()` with the same root.
    pub fn restrict(&self, sub: &Ball) -> Result<LegalColoring, ColoringError> {
        let k = self.key;
        if sub.shape() != k.shape || sub.root_type() != k.root_type || sub.kind() != k.kind || sub.depth() > k.depth {
            return Err(ColoringError::BallMismatch);
        }
        LegalColoring::from_colors(sub, self.colors[..sub.len()].to_vec())
    }

    /// One `address=color` line per vertex.
    pub fn to_text(&self, ball: &Ball) -> String {
        let mut s = String::new();
        for v in 0..ball.len() {
            let _ = writeln!(s, "{}={}", ball.address(v), self.colors[v]);
        }
        s
    }

    pub fn from_text(ball: &Ball, text: &str) -> Result<Self, ColoringError> {
        let mut colors = vec![0u16; ball.len()];
        let mut filled = vec![false; ball.len()];
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| ColoringError::Parse { line: n + 1, msg: msg.to_string() };
            let (a, c) = line.split_once('=').ok_or_else(|| err("expected address=color"))?;
            let addr: Address = a.parse().map_err(|_| err("bad address"))?;
            let v = ball.find(&addr).ok_or_else(|| err("address not in ball"))?;
            colors[v] = c.trim().parse().map_err(|_| err("bad color"))?;
            if std::mem::replace(&mut filled[v], true) {
                return Err(err("duplicate address"));
            }
        }
        if let Some(v) = filled.iter().position(|f| !f) {
            return Err(ColoringError::Parse { line: 0, msg: format!("missing {}", ball.address(v)) });
        }
        LegalColoring::from_colors(ball, colors)
    }
}

/// The reference coloring: the root gets the largest color, the children of
/// a vertex get the colors not used by its parent in increasing slot order.
/// The absent parent of a half-root counts as having the largest color, and
/// each root of an edge-rooted ball gets the largest color of the other's
/// star.
pub fn canonical_coloring(ball: &Ball) -> LegalColoring {
    canonical_coloring_with_root(ball, color_range(ball, 0)).expect("largest root color is legal")
}

/// Same as [`canonical_coloring`] with a chosen color at the (side-0) root.
pub fn canonical_coloring_with_root(ball: &Ball, root_color: u16) -> Result<LegalColoring, ColoringError> {
    let mut colors = vec![0u16; ball.len()];
    colors[0] = root_color;
    if ball.num_roots() == 2 {
        colors[1] = color_range(ball, 1);
    }
    for v in 0..ball.len() {
        let deg = ball.shape().degree(ball.vertex_type(v)) as u16;
        let banned = match (ball.parent(v), ball.kind()) {
            (Some(p), _) => colors[p],
            (None, BallKind::VertexFull) => 0,
            (None, BallKind::HalfRooted) => deg,
            (None, BallKind::EdgeRooted) => colors[1 - v],
        };
        let mut next = (1..=deg).filter(|&c| c != banned);
        for c in ball.children(v) {
            colors[c] = next.next().expect("enough colors");
        }
    }
    LegalColoring::from_colors(ball, colors)
}

fn allowed_colors(ball: &Ball, colors: &[u16], u: usize) -> Vec<u16> {
    let mut banned = [false; 256];
    for w in ball.neighbors(u) {
        for x in ball.neighbors(w) {
            if x != u && x < u {
                banned[colors[x] as usize] = true;
            }
        }
    }
    (1..=color_range(ball, u)).filter(|&c| !banned[c as usize]).collect()
}

/// Number of choices per vertex in breadth-first order. On a tree this does
/// not depend on the earlier choices.
fn coloring_radices(ball: &Ball) -> Vec<u128> {
    let mut colors = vec![0u16; ball.len()];
    let mut radices = Vec::with_capacity(ball.len());
    for u in 0..ball.len() {
        let a = allowed_colors(ball, &colors, u);
        radices.push(a.len() as u128);
        colors[u] = a[0];
    }
    radices
}

pub fn legal_coloring_count(ball: &Ball) -> u128 {
    coloring_radices(ball).iter().fold(1u128, |a, &r| a.saturating_mul(r))
}

/// All legal colorings, root color included, in lexicographic order of the
/// color vector.
pub fn enumerate_legal_colorings(ball: &Ball, bound: u128) -> Result<ColoringIter<'_>, TreeError> {
    let radices = coloring_radices(ball);
    let count = radices.iter().fold(1u128, |a, &r| a.saturating_mul(r));
    if count > bound {
        return Err(TreeError::BoundExceeded { count, bound });
    }
    Ok(ColoringIter { ball, radices, next: 0, count })
}

pub struct ColoringIter<'a> {
    ball: &'a Ball,
    radices: Vec<u128>,
    next: u128,
    count: u128,
}

impl ColoringIter<'_> {
    pub fn count_total(&self) -> u128 {
        self.count
    }

    pub fn nth_coloring(&self, index: u128) -> LegalColoring {
        let ball = self.ball;
        let mut digits = vec![0u128; ball.len()];
        let mut rest = index;
        for u in (0..ball.len()).rev() {
            digits[u] = rest % self.radices[u];
            rest /= self.radices[u];
        }
        let mut colors = vec![0u16; ball.len()];
        for u in 0..ball.len() {
            colors[u] = allowed_colors(ball, &colors, u)[digits[u] as usize];
        }
        LegalColoring { key: ball.key(), colors }
    }
}

impl Iterator for ColoringIter<'_> {
    type Item = LegalColoring;

    fn next(&mut self) -> Option<LegalColoring> {
        if self.next >= self.count {
            return None;
        }
        let c = self.nth_coloring(self.next);
        self.next += 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.count - self.next) as usize;
        (n, Some(n))
    }
}

/// A permutation of `{1, ..., m}`, stored 0-based as an image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalPermutation {
    images: Vec<u16>,
}

impl LocalPermutation {
    pub fn new(images: Vec<u16>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x as usize >= images.len() || std::mem::replace(&mut seen[x as usize], true) {
                return None;
            }
        }
        Some(LocalPermutation { images })
    }

    pub fn identity(m: usize) -> Self {
        LocalPermutation { images: (0..m as u16).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LocalPermutation) -> LocalPermutation {
        LocalPermutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> LocalPermutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        LocalPermutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// True for odd permutations.
    pub fn is_odd(&self) -> bool {
        permutation_is_odd(&self.images)
    }

    pub fn sign(&self) -> i8 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// Parity by cycle decomposition: odd iff `n - #cycles` is odd.
pub fn permutation_is_odd<T: Copy + Into<usize>>(images: &[T]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = images[x].into();
        }
    }
    (n - cycles) % 2 == 1
}

fn star(ball: &Ball, v: usize) -> Result<Vec<usize>, ColoringError> {
    if !ball.has_local_action(v) {
        return Err(ColoringError::StarNotContained(ball.address(v).to_string()));
    }
    Ok(ball.neighbors(v).collect())
}

/// `σ_(i)(g, v)`: the permutation of colors induced by `g` from the star of
/// `v` to the star of `g(v)`. At a half-root the star is the set of children
/// and colors are replaced by their rank.
pub fn local_action(
    ball: &Ball,
    i: &LegalColoring,
    g: &BallAutomorphism,
    v: usize,
) -> Result<LocalPermutation, ColoringError> {
    if i.key != ball.key() || g.key() != ball.key() {
        return Err(ColoringError::BallMismatch);
    }
    let src = star(ball, v)?;
    let gv = g.apply(v);
    let dst = star(ball, gv)?;
    let m = src.len();
    let rank = |s: &[usize]| {
        let mut cs: Vec<u16> = s.iter().map(|&x| i.colors[x]).collect();
        cs.sort_unstable();
        cs
    };
    let rs = rank(&src);
    let rd = rank(&dst);
    let pos = |r: &[u16], c: u16| r.binary_search(&c).expect("color in star") as u16;
    let mut images = vec![0u16; m];
    for &x in &src {
        images[pos(&rs, i.colors[x]) as usize] = pos(&rd, i.colors[g.apply(x)]);
    }
    Ok(LocalPermutation { images })
}

/// Parity of `σ_(i)(g, v)`, true when odd.
pub fn local_parity(
    ball: &Ball,
    i: &LegalColoring,
    g: &BallAutomorphism,
    v: usize,
) -> Result<bool, ColoringError> {
    Ok(local_action(ball, i, g, v)?.is_odd())
}

/// `Sgn_(i)(g, A)`: the product of the signs of the local actions over `A`.
pub fn sign_product(
    ball: &Ball,
    i: &LegalColoring,
    g: &BallAutomorphism,
    a: &[usize],
) -> Result<i8, ColoringError> {
    let mut odd = false;
    for &w in a {
        odd ^= local_parity(ball, i, g, w)?;
    }
    Ok(if odd { -1 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree_core::TreeShape;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ball(d0: usize, d1: usize, t: u8, k: usize) -> Ball {
        Ball::vertex_full(TreeShape::new(d0, d1).unwrap(), t, k)
    }

    #[test]
    fn canonical_examples() {
        let b = ball(4, 4, 0, 1);
        let c = canonical_coloring(&b);
        assert_eq!(&c.colors()[1..], &[1, 2, 3, 4]);
        let t = ball(4, 3, 0, 2);
        let c = canonical_coloring(&t);
        assert_eq!(&c.colors()[1..5], &[1, 2, 3, 4]);
        for x in 1..5 {
            let mut star: Vec<u16> = t.neighbors(x).map(|y| c.color(y)).collect();
            star.sort();
            assert_eq!(star, vec![1, 2, 3]);
        }
        assert_eq!(canonical_coloring(&t), c);
        for kind in [BallKind::HalfRooted, BallKind::EdgeRooted] {
            let b = Ball::build(TreeShape::new(4, 5).unwrap(), 1, 3, kind).unwrap();
            canonical_coloring(&b);
        }
    }

    #[test]
    fn coloring_counts() {
        assert_eq!(legal_coloring_count(&ball(4, 3, 0, 2)), 1152);
        assert_eq!(legal_coloring_count(&ball(4, 4, 0, 1)), 96);
        assert_eq!(legal_coloring_count(&ball(4, 5, 0, 0)), 5);
        let t = ball(4, 3, 0, 2);
        let all: Vec<_> = enumerate_legal_colorings(&t, 1 << 20).unwrap().collect();
        assert_eq!(all.len(), 1152);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 1152);
        for c in &all {
            LegalColoring::from_colors(&t, c.colors().to_vec()).unwrap();
        }
        assert!(enumerate_legal_colorings(&t, 100).is_err());
    }

    #[test]
    fn rejects_illegal() {
        let b = ball(4, 4, 0, 1);
        assert!(matches!(
            LegalColoring::from_colors(&b, vec![1, 1, 1, 3, 4]),
            Err(ColoringError::Illegal(_))
        ));
        assert!(LegalColoring::from_colors(&b, vec![5, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let b = Ball::build(TreeShape::new(4, 4).unwrap(), 0, 2, BallKind::EdgeRooted).unwrap();
        let c = canonical_coloring(&b);
        let text = c.to_text(&b);
        assert_eq!(LegalColoring::from_text(&b, &text).unwrap(), c);
    }

    #[test]
    fn identity_acts_trivially() {
        let b = ball(4, 4, 0, 3);
        let c = canonical_coloring(&b);
        let id = b.identity();
        for v in 0..b.len() {
            if b.has_local_action(v) {
                assert!(local_action(&b, &c, &id, v).unwrap().is_identity());
            } else {
                assert!(local_action(&b, &c, &id, v).is_err());
            }
        }
    }

    #[test]
    fn single_transposition_is_odd() {
        let b = ball(4, 4, 0, 2);
        let c = canonical_coloring(&b);
        let mut p = b.identity().portrait(&b);
        p[1] = vec![1, 0, 2];
        let g = b.automorphism(&p, false).unwrap();
        assert_eq!(sign_product(&b, &c, &g, &[1]).unwrap(), -1);
        assert_eq!(sign_product(&b, &c, &g, &[0, 2]).unwrap(), 1);
    }

    #[test]
    fn cocycle_and_inverse() {
        let b = ball(4, 4, 0, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = canonical_coloring(&b);
        let inner: Vec<usize> = (0..b.len()).filter(|&v| b.has_local_action(v)).collect();
        for _ in 0..200 {
            let g = b.random_automorphism(&mut rng);
            let h = b.random_automorphism(&mut rng);
            let gh = b.compose(&g, &h).unwrap();
            let gi = b.invert(&g).unwrap();
            for &v in &inner {
                let lhs = local_action(&b, &c, &gh, v).unwrap();
                let rhs = local_action(&b, &c, &g, h.apply(v))
                    .unwrap()
                    .compose(&local_action(&b, &c, &h, v).unwrap());
                assert_eq!(lhs, rhs);
                let inv = local_action(&b, &c, &gi, v).unwrap();
                assert_eq!(inv, local_action(&b, &c, &g, gi.apply(v)).unwrap().inverse());
            }
        }
    }

    #[test]
    fn half_root_action_has_degree_d_minus_one() {
        let b = Ball::build(TreeShape::new(5, 4).unwrap(), 0, 2, BallKind::HalfRooted).unwrap();
        let c = canonical_coloring(&b);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = b.random_automorphism(&mut rng);
        assert_eq!(local_action(&b, &c, &g, 0).unwrap().degree(), 4);
    }

    #[test]
    fn parity_of_cycles() {
        assert!(!permutation_is_odd::<u16>(&[0, 1, 2]));
        assert!(permutation_is_odd::<u16>(&[1, 0, 2]));
        assert!(!permutation_is_odd::<u16>(&[1, 2, 0]));
    }
}
