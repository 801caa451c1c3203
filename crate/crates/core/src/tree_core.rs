//! Finite balls of semiregular trees.
//!
//! A [`Ball`] stores its vertices in breadth-first order: by depth, then by
//! side (edge-rooted balls only), then lexicographically by child-slot path.
//! With that order the ball of depth `k` is a prefix of the ball of depth
//! `k + 1`, which the diagram code relies on.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::Rng;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("degree {0} is below the minimum of 3")]
    DegreeTooSmall(usize),
    #[error("side swap requires d0 = d1 on an edge-rooted ball")]
    SwapNeedsRegular,
    #[error("address {0} is not in the ball")]
    AddressOutOfBall(String),
    #[error("radius {r} exceeds ball depth {depth}")]
    RadiusTooLarge { r: usize, depth: usize },
    #[error("automorphisms belong to different balls")]
    ShapeMismatch,
    #[error("enumeration of {count} items exceeds the bound {bound}")]
    BoundExceeded { count: u128, bound: u128 },
    #[error("invalid portrait: {0}")]
    InvalidPortrait(String),
    #[error("cannot parse address {0:?}")]
    BadAddress(String),
}

/// Degrees of the two vertex types of a semiregular tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeShape {
    d0: usize,
    d1: usize,
}

impl TreeShape {
    pub fn new(d0: usize, d1: usize) -> Result<Self, TreeError> {
        for d in [d0, d1] {
            if d < 3 {
                return Err(TreeError::DegreeTooSmall(d));
            }
        }
        Ok(TreeShape { d0, d1 })
    }

    pub fn d0(&self) -> usize {
        self.d0
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    /// Degree of a vertex of type `t`.
    pub fn degree(&self, t: u8) -> usize {
        if t == 0 {
            self.d0
        } else {
            self.d1
        }
    }

    pub fn is_regular(&self) -> bool {
        self.d0 == self.d1
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d0, self.d1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BallKind {
    /// B(v, n): the root keeps all of its neighbours.
    VertexFull,
    /// One side of an edge: the root has lost its parent.
    HalfRooted,
    /// Two half-rooted balls glued along the root edge.
    EdgeRooted,
}

/// Position of a vertex: a side (edge-rooted balls) and a path of 1-based
/// child slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address {
    pub side: u8,
    pub path: Vec<u8>,
}

impl Address {
    pub fn root() -> Self {
        Address { side: 0, path: Vec::new() }
    }

    pub fn new(side: u8, path: Vec<u8>) -> Self {
        Address { side, path }
    }

    pub fn depth(&self) -> usize {
        self.path.len()
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.side != 0 {
            write!(f, "{}:", self.side)?;
        }
        if self.path.is_empty() {
            return write!(f, ".");
        }
        for (k, s) in self.path.iter().enumerate() {
            if k > 0 {
                write!(f, "/")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TreeError::BadAddress(s.to_string());
        let s = s.trim();
        let (side, rest) = match s.split_once(':') {
            Some((a, b)) => (a.parse::<u8>().map_err(|_| bad())?, b),
            None => (0, s),
        };
        if side > 1 {
            return Err(bad());
        }
        if rest == "." || rest.is_empty() {
            return Ok(Address { side, path: Vec::new() });
        }
        let path = rest
            .split('/')
            .map(|p| p.parse::<u8>().ok().filter(|&x| x >= 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        Ok(Address { side, path })
    }
}

/// Identifies a ball up to equality of all structural parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallKey {
    pub shape: TreeShape,
    pub root_type: u8,
    pub depth: usize,
    pub kind: BallKind,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    parent: u32,
    first_child: u32,
    nchild: u16,
    depth: u16,
    side: u8,
    ty: u8,
    slot: u8,
}

/// A finite ball with enumerable vertices.
#[derive(Debug, Clone)]
pub struct Ball {
    key: BallKey,
    nodes: Vec<Node>,
    levels: Vec<Range<usize>>,
    nroots: usize,
}

impl Ball {
    pub fn build(
        shape: TreeShape,
        root_type: u8,
        depth: usize,
        kind: BallKind,
    ) -> Result<Ball, TreeError> {
        assert!(root_type <= 1, "root type must be 0 or 1");
        let mut nodes = Vec::new();
        let root = |side: u8, ty: u8| Node {
            parent: NONE,
            first_child: NONE,
            nchild: 0,
            depth: 0,
            side,
            ty,
            slot: 0,
        };
        nodes.push(root(0, root_type));
        if kind == BallKind::EdgeRooted {
            nodes.push(root(1, 1 - root_type));
        }
        let nroots = nodes.len();
        let mut levels = vec![0..nroots];
        for d in 0..depth {
            let level = levels[d].clone();
            let start = nodes.len();
            for v in level {
                let node = nodes[v];
                let deg = shape.degree(node.ty);
                let n = if d == 0 && kind == BallKind::VertexFull { deg } else { deg - 1 };
                nodes[v].first_child = nodes.len() as u32;
                nodes[v].nchild = n as u16;
                for s in 0..n {
                    nodes.push(Node {
                        parent: v as u32,
                        first_child: NONE,
                        nchild: 0,
                        depth: (d + 1) as u16,
                        side: node.side,
                        ty: 1 - node.ty,
                        slot: s as u8,
                    });
                }
            }
            levels.push(start..nodes.len());
        }
        Ok(Ball { key: BallKey { shape, root_type, depth, kind }, nodes, levels, nroots })
    }

    pub fn vertex_full(shape: TreeShape, root_type: u8, depth: usize) -> Ball {
        Ball::build(shape, root_type, depth, BallKind::VertexFull).expect("vertex-full ball")
    }

    pub fn key(&self) -> BallKey {
        self.key
    }

    pub fn shape(&self) -> TreeShape {
        self.key.shape
    }

    pub fn root_type(&self) -> u8 {
        self.key.root_type
    }

    pub fn depth(&self) -> usize {
        self.key.depth
    }

    pub fn kind(&self) -> BallKind {
        self.key.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn num_roots(&self) -> usize {
        self.nroots
    }

    /// Number of vertices of depth at most `k`.
    pub fn prefix_len(&self, k: usize) -> usize {
        self.levels[k.min(self.depth())].end
    }

    /// Vertex id range of the given depth (all sides).
    pub fn level(&self, d: usize) -> Range<usize> {
        self.levels[d].clone()
    }

    pub fn vertex_type(&self, v: usize) -> u8 {
        self.nodes[v].ty
    }

    pub fn vertex_depth(&self, v: usize) -> usize {
        self.nodes[v].depth as usize
    }

    pub fn side(&self, v: usize) -> u8 {
        self.nodes[v].side
    }

    /// Rooted-tree parent; `None` at the root(s).
    pub fn parent(&self, v: usize) -> Option<usize> {
        let p = self.nodes[v].parent;
        (p != NONE).then_some(p as usize)
    }

    pub fn children(&self, v: usize) -> Range<usize> {
        let n = self.nodes[v];
        if n.nchild == 0 {
            return 0..0;
        }
        n.first_child as usize..n.first_child as usize + n.nchild as usize
    }

    pub fn num_children(&self, v: usize) -> usize {
        self.nodes[v].nchild as usize
    }

    /// 0-based slot of `v` among its parent's children.
    pub fn slot(&self, v: usize) -> usize {
        self.nodes[v].slot as usize
    }

    pub fn is_root(&self, v: usize) -> bool {
        v < self.nroots
    }

    /// Graph neighbours inside the ball, including the partner root of an
    /// edge-rooted ball.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let up = match self.parent(v) {
            Some(p) => Some(p),
            None if self.nroots == 2 => Some(1 - v),
            None => None,
        };
        up.into_iter().chain(self.children(v))
    }

    pub fn address(&self, v: usize) -> Address {
        let mut path = Vec::with_capacity(self.vertex_depth(v));
        let mut x = v;
        while let Some(p) = self.parent(x) {
            path.push(self.slot(x) as u8 + 1);
            x = p;
        }
        path.reverse();
        Address { side: self.side(v), path }
    }

    pub fn find(&self, a: &Address) -> Option<usize> {
        if a.side as usize >= self.nroots {
            return None;
        }
        let mut v = a.side as usize;
        for &s in &a.path {
            let s = s as usize;
            if s == 0 || s > self.num_children(v) {
                return None;
            }
            v = self.children(v).start + s - 1;
        }
        Some(v)
    }

    /// Child of `v` at 0-based slot `s`.
    pub fn child(&self, v: usize, s: usize) -> usize {
        debug_assert!(s < self.num_children(v));
        self.nodes[v].first_child as usize + s
    }

    /// Distance from `v` to the nearest vertex that misses neighbours, when
    /// the ball is cut at depth `k`. A window `S_X(v)` lies entirely inside the
    /// cut ball exactly when `max X` is at most this value.
    pub fn boundary_distance(&self, v: usize, k: usize) -> Option<usize> {
        let d = self.vertex_depth(v);
        if d > k {
            return None;
        }
        Some(match self.kind() {
            BallKind::VertexFull | BallKind::EdgeRooted => k - d,
            BallKind::HalfRooted => (k - d).min(d),
        })
    }

    /// Whether the local action at `v` is defined: the whole star is in the
    /// ball, or `v` is the root of a half-rooted ball.
    pub fn has_local_action(&self, v: usize) -> bool {
        if self.kind() == BallKind::HalfRooted && v == 0 {
            return self.depth() >= 1;
        }
        self.boundary_distance(v, self.depth()).is_some_and(|r| r >= 1)
    }

    /// Vertices at distance exactly `r` from `center`, sorted by id.
    pub fn sphere(&self, center: usize, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.walk(center, usize::MAX, r, &mut out);
        out.sort_unstable();
        out
    }

    fn walk(&self, v: usize, from: usize, r: usize, out: &mut Vec<usize>) {
        if r == 0 {
            out.push(v);
            return;
        }
        for w in self.neighbors(v) {
            if w != from {
                self.walk(w, v, r - 1, out);
            }
        }
    }

    /// Checked variant of [`Ball::sphere`] taking an address.
    pub fn sphere_at(&self, center: &Address, r: usize) -> Result<Vec<usize>, TreeError> {
        let c = self.find(center).ok_or_else(|| TreeError::AddressOutOfBall(center.to_string()))?;
        Ok(self.sphere(c, r))
    }

    pub fn distance(&self, mut u: usize, mut v: usize) -> usize {
        if self.side(u) != self.side(v) {
            return self.vertex_depth(u) + self.vertex_depth(v) + 1;
        }
        let mut d = 0;
        while self.vertex_depth(u) > self.vertex_depth(v) {
            u = self.parent(u).unwrap();
            d += 1;
        }
        while self.vertex_depth(v) > self.vertex_depth(u) {
            v = self.parent(v).unwrap();
            d += 1;
        }
        while u != v {
            u = self.parent(u).unwrap();
            v = self.parent(v).unwrap();
            d += 2;
        }
        d
    }

    /// `v` together with all of its descendants.
    pub fn branch(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.children(out[i]));
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_descendant(&self, mut x: usize, ancestor: usize) -> bool {
        loop {
            if x == ancestor {
                return true;
            }
            match self.parent(x) {
                Some(p) => x = p,
                None => return false,
            }
        }
    }

    /// The `r`-branches: branches of the vertices at depth `depth - r`.
    pub fn r_branches(&self, r: usize) -> Result<Vec<Vec<usize>>, TreeError> {
        if r > self.depth() {
            return Err(TreeError::RadiusTooLarge { r, depth: self.depth() });
        }
        Ok(self.level(self.depth() - r).map(|v| self.branch(v)).collect())
    }

    pub fn leaves(&self) -> Range<usize> {
        self.level(self.depth())
    }

    pub fn identity(&self) -> BallAutomorphism {
        BallAutomorphism {
            key: self.key,
            perm: (0..self.len() - self.nroots).map(|c| self.slot(c + self.nroots) as u8).collect(),
            swap: false,
            image: (0..self.len() as u32).collect(),
        }
    }

    /// Builds an automorphism from a portrait given as one permutation of
    /// 0-based child slots per vertex (empty at leaves) plus a swap flag.
    pub fn automorphism(
        &self,
        portrait: &[Vec<u8>],
        swap: bool,
    ) -> Result<BallAutomorphism, TreeError> {
        if portrait.len() != self.len() {
            return Err(TreeError::InvalidPortrait("wrong number of vertices".into()));
        }
        let mut perm = vec![0u8; self.len() - self.nroots];
        for (v, p) in portrait.iter().enumerate() {
            let n = self.num_children(v);
            if p.len() != n {
                return Err(TreeError::InvalidPortrait(format!("vertex {v} has {n} children")));
            }
            let mut seen = vec![false; n];
            for (s, &t) in p.iter().enumerate() {
                let t = t as usize;
                if t >= n || std::mem::replace(&mut seen[t], true) {
                    return Err(TreeError::InvalidPortrait(format!("not a permutation at {v}")));
                }
                perm[self.child(v, s) - self.nroots] = t as u8;
            }
        }
        self.from_flat(perm, swap)
    }

    fn from_flat(&self, perm: Vec<u8>, swap: bool) -> Result<BallAutomorphism, TreeError> {
        if swap && (self.kind() != BallKind::EdgeRooted || !self.shape().is_regular()) {
            return Err(TreeError::SwapNeedsRegular);
        }
        let mut image = vec![0u32; self.len()];
        for r in 0..self.nroots {
            image[r] = (r ^ swap as usize) as u32;
        }
        for c in self.nroots..self.len() {
            let x = self.parent(c).unwrap();
            let gx = image[x] as usize;
            image[c] = (self.nodes[gx].first_child + perm[c - self.nroots] as u32) as u32;
        }
        Ok(BallAutomorphism { key: self.key, perm, swap, image })
    }

    /// `g ∘ h`, so that `compose(g, h)(x) = g(h(x))`.
    pub fn compose(
        &self,
        g: &BallAutomorphism,
        h: &BallAutomorphism,
    ) -> Result<BallAutomorphism, TreeError> {
        if g.key != self.key || h.key != self.key {
            return Err(TreeError::ShapeMismatch);
        }
        let nr = self.nroots;
        let mut perm = vec![0u8; self.len() - nr];
        for c in nr..self.len() {
            let hx = h.image[self.parent(c).unwrap()] as usize;
            let hc = self.child(hx, h.perm[c - nr] as usize);
            perm[c - nr] = g.perm[hc - nr];
        }
        self.from_flat(perm, g.swap ^ h.swap)
    }

    pub fn invert(&self, g: &BallAutomorphism) -> Result<BallAutomorphism, TreeError> {
        if g.key != self.key {
            return Err(TreeError::ShapeMismatch);
        }
        let nr = self.nroots;
        let mut perm = vec![0u8; self.len() - nr];
        for c in nr..self.len() {
            perm[g.image[c] as usize - nr] = self.slot(c) as u8;
        }
        self.from_flat(perm, g.swap)
    }

    fn internal_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.num_children(v) > 1).collect()
    }

    fn swap_allowed(&self) -> bool {
        self.kind() == BallKind::EdgeRooted && self.shape().is_regular()
    }

    /// `|Aut(ball)|` as a product of factorials of branching numbers.
    pub fn automorphism_count(&self) -> u128 {
        let mut n: u128 = if self.swap_allowed() { 2 } else { 1 };
        for v in self.internal_vertices() {
            n = n.saturating_mul(factorial(self.num_children(v)));
        }
        n
    }

    /// All automorphisms, in mixed-radix order over local permutations.
    pub fn enumerate_automorphisms(&self, bound: u128) -> Result<AutomorphismIter<'_>, TreeError> {
        let count = self.automorphism_count();
        if count > bound {
            return Err(TreeError::BoundExceeded { count, bound });
        }
        Ok(AutomorphismIter { ball: self, internal: self.internal_vertices(), next: 0, count })
    }

    /// The automorphism with the given index in enumeration order.
    pub fn automorphism_by_index(&self, index: u128) -> BallAutomorphism {
        decode_automorphism(self, &self.internal_vertices(), index)
    }

    pub fn random_automorphism<R: Rng + ?Sized>(&self, rng: &mut R) -> BallAutomorphism {
        let nr = self.nroots;
        let mut perm = vec![0u8; self.len() - nr];
        for v in 0..self.len() {
            let n = self.num_children(v);
            if n == 0 {
                continue;
            }
            let mut p: Vec<u8> = (0..n as u8).collect();
            for i in (1..n).rev() {
                p.swap(i, rng.gen_range(0..=i));
            }
            for (s, &t) in p.iter().enumerate() {
                perm[self.child(v, s) - nr] = t;
            }
        }
        let swap = self.swap_allowed() && rng.gen_bool(0.5);
        self.from_flat(perm, swap).expect("random portrait is valid")
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn decode_automorphism(ball: &Ball, internal: &[usize], mut index: u128) -> BallAutomorphism {
    let nr = ball.nroots;
    let mut perm: Vec<u8> = (nr..ball.len()).map(|c| ball.slot(c) as u8).collect();
    let swap = if ball.swap_allowed() {
        let b = index % 2 == 1;
        index /= 2;
        b
    } else {
        false
    };
    for &v in internal.iter().rev() {
        let n = ball.num_children(v);
        let radix = factorial(n);
        let digit = index % radix;
        index /= radix;
        let p = lehmer_decode(n, digit);
        for (s, t) in p.into_iter().enumerate() {
            perm[ball.child(v, s) - nr] = t;
        }
    }
    ball.from_flat(perm, swap).expect("decoded portrait is valid")
}

/// The `k`-th permutation of `0..n` in lexicographic order.
pub(crate) fn lehmer_decode(n: usize, mut k: u128) -> Vec<u8> {
    let mut pool: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let q = (k / f) as usize;
        k %= f;
        out.push(pool.remove(q));
    }
    out
}

/// Iterator returned by [`Ball::enumerate_automorphisms`].
pub struct AutomorphismIter<'a> {
    ball: &'a Ball,
    internal: Vec<usize>,
    next: u128,
    count: u128,
}

impl Iterator for AutomorphismIter<'_> {
    type Item = BallAutomorphism;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.count {
            return None;
        }
        let g = decode_automorphism(self.ball, &self.internal, self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.count - self.next) as usize;
        (n, Some(n))
    }
}

/// A ball automorphism stored as its portrait: for every non-root vertex,
/// the slot its image occupies under the image of its parent. The vertex map
/// is cached alongside.
#[derive(Debug, Clone)]
pub struct BallAutomorphism {
    key: BallKey,
    perm: Vec<u8>,
    swap: bool,
    image: Vec<u32>,
}

impl PartialEq for BallAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.swap == other.swap && self.perm == other.perm
    }
}

impl Eq for BallAutomorphism {}

impl std::hash::Hash for BallAutomorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
        self.swap.hash(state);
    }
}

impl BallAutomorphism {
    pub fn key(&self) -> BallKey {
        self.key
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.image
    }

    pub fn swaps_sides(&self) -> bool {
        self.swap
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Local permutation of 0-based child slots at `v`.
    pub fn portrait_at(&self, ball: &Ball, v: usize) -> Vec<u8> {
        ball.children(v).map(|c| self.perm[c - ball.num_roots()]).collect()
    }

    /// The whole portrait, one slot permutation per vertex.
    pub fn portrait(&self, ball: &Ball) -> Vec<Vec<u8>> {
        (0..ball.len()).map(|v| self.portrait_at(ball, v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(d0: usize, d1: usize) -> TreeShape {
        TreeShape::new(d0, d1).unwrap()
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(Ball::vertex_full(s(4, 4), 0, 2).len(), 17);
        assert_eq!(Ball::vertex_full(s(4, 3), 0, 2).len(), 13);
        assert_eq!(Ball::vertex_full(s(6, 6), 0, 2).len(), 37);
        let half = Ball::build(s(4, 4), 0, 2, BallKind::HalfRooted).unwrap();
        assert_eq!(half.len(), 1 + 3 + 9);
        let edge = Ball::build(s(4, 5), 0, 1, BallKind::EdgeRooted).unwrap();
        assert_eq!(edge.len(), 2 + 3 + 4);
    }

    #[test]
    fn rejects_small_degree() {
        assert_eq!(TreeShape::new(2, 4), Err(TreeError::DegreeTooSmall(2)));
    }

    #[test]
    fn sphere_growth() {
        let b = Ball::vertex_full(s(4, 5), 1, 5);
        for k in 1..5 {
            let now = b.level(k).len();
            let next = b.level(k + 1).len();
            let t = b.vertex_type(b.level(k).start);
            assert_eq!(next, now * (b.shape().degree(t) - 1));
        }
    }

    #[test]
    fn addresses_round_trip() {
        let b = Ball::build(s(4, 4), 0, 2, BallKind::EdgeRooted).unwrap();
        for v in 0..b.len() {
            let a = b.address(v);
            assert_eq!(b.find(&a), Some(v));
            assert_eq!(a.to_string().parse::<Address>().unwrap(), a);
        }
        assert!("1:2/3".parse::<Address>().is_ok());
        assert!("0/1".parse::<Address>().is_err());
    }

    #[test]
    fn branches() {
        let b = Ball::vertex_full(s(4, 4), 0, 2);
        let one = b.r_branches(1).unwrap();
        assert_eq!(one.len(), 4);
        assert!(one.iter().all(|br| br.len() == 4 && br[1..].iter().all(|&x| b.vertex_depth(x) == 2)));
        let zero = b.r_branches(0).unwrap();
        assert_eq!(zero.len(), 12);
        assert!(zero.iter().all(|br| br.len() == 1));
        assert_eq!(b.r_branches(2).unwrap(), vec![(0..17).collect::<Vec<_>>()]);
        assert!(b.r_branches(3).is_err());
        let t = Ball::vertex_full(s(4, 3), 0, 2);
        assert_eq!(t.branch(1).len(), 3);
    }

    #[test]
    fn spheres_and_distance() {
        let b = Ball::vertex_full(s(4, 4), 0, 3);
        let leaf = b.leaves().start;
        for r in 0..=3 {
            let sp = b.sphere(leaf, r);
            assert!(sp.iter().all(|&x| b.distance(leaf, x) == r));
            let count = (0..b.len()).filter(|&x| b.distance(leaf, x) == r).count();
            assert_eq!(sp.len(), count);
        }
        assert_eq!(b.sphere(0, 1).len(), 4);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(Ball::vertex_full(s(4, 3), 0, 2).automorphism_count(), 384);
        assert_eq!(Ball::vertex_full(s(4, 4), 0, 1).automorphism_count(), 24);
        assert_eq!(Ball::vertex_full(s(4, 4), 0, 0).automorphism_count(), 1);
        let b = Ball::vertex_full(s(6, 6), 0, 3);
        assert!(matches!(b.enumerate_automorphisms(1000), Err(TreeError::BoundExceeded { .. })));
    }

    #[test]
    fn enumeration_is_a_group() {
        let b = Ball::vertex_full(s(4, 3), 0, 2);
        let all: Vec<_> = b.enumerate_automorphisms(1 << 20).unwrap().collect();
        assert_eq!(all.len(), 384);
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 384);
        for g in &all {
            assert!(set.contains(&b.invert(g).unwrap()));
            for h in all.iter().step_by(7) {
                let gh = b.compose(g, h).unwrap();
                assert!(set.contains(&gh));
                for x in 0..b.len() {
                    assert_eq!(gh.apply(x), g.apply(h.apply(x)));
                }
            }
        }
    }

    #[test]
    fn automorphisms_preserve_adjacency() {
        let b = Ball::build(s(4, 4), 1, 2, BallKind::EdgeRooted).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = b.random_automorphism(&mut rng);
            for x in 0..b.len() {
                if let Some(p) = b.parent(x) {
                    assert_eq!(b.parent(g.apply(x)), Some(g.apply(p)));
                }
                assert_eq!(b.vertex_depth(g.apply(x)), b.vertex_depth(x));
            }
            let id = b.compose(&g, &b.invert(&g).unwrap()).unwrap();
            assert!(id.is_identity());
        }
    }

    #[test]
    fn swap_needs_regular_edge_ball() {
        let b = Ball::build(s(4, 5), 0, 1, BallKind::EdgeRooted).unwrap();
        let portrait = b.identity().portrait(&b);
        assert_eq!(b.automorphism(&portrait, true), Err(TreeError::SwapNeedsRegular));
        let v = Ball::vertex_full(s(4, 4), 0, 1);
        assert_eq!(v.automorphism(&v.identity().portrait(&v), true), Err(TreeError::SwapNeedsRegular));
    }

    #[test]
    fn portrait_round_trip() {
        let b = Ball::vertex_full(s(5, 4), 0, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let g = b.random_automorphism(&mut rng);
            assert_eq!(b.automorphism(&g.portrait(&b), false).unwrap(), g);
        }
    }

    #[test]
    fn lehmer() {
        assert_eq!(lehmer_decode(3, 0), vec![0, 1, 2]);
        assert_eq!(lehmer_decode(3, 5), vec![2, 1, 0]);
    }
}
