//! Group specifications, their window constraints on finite balls, and the
//! compiled linear systems whose solutions are diagram sets.
//!
//! A depth-`k` diagram belongs to a group exactly when every window
//! `S_X(w)` lying inside `B(v, k)` has the parity the group asks for: even
//! for a plain set, or the common parity of its class for a starred one.
//! Windows that cross the boundary impose nothing, since the labels outside
//! can always be chosen to fix them (see [`extend_diagram`]).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{local_parity, ColoringError, LegalColoring};
use crate::gf2::{BitVec, LinearSystem, Rref};
use crate::invariants::Diagram;
use crate::tree_core::{Ball, BallAutomorphism, BallKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{0} needs a non-empty set")]
    EmptySet(&'static str),
    #[error("regular-tree variant {0} needs d0 = d1")]
    NeedsRegular(String),
    #[error("diagram depth {got} exceeds the available depth {max}")]
    DepthTooLarge { got: usize, max: usize },
    #[error("diagram does not belong to the ball")]
    BallMismatch,
    #[error("input diagram violates {0}")]
    NotInGroup(String),
    #[error("{sub} is not contained in {sup}")]
    NotIncluded { sub: String, sup: String },
    #[error("quotient is not defined: {0}")]
    BadQuotient(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// One of the sets `Y0`, `Y1`: absent, plain, or starred.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignedSet {
    Empty,
    Plain(Vec<u32>),
    Starred(Vec<u32>),
}

impl SignedSet {
    pub fn plain(x: &[u32]) -> Self {
        SignedSet::Plain(normalize(x))
    }

    pub fn starred(x: &[u32]) -> Self {
        SignedSet::Starred(normalize(x))
    }

    pub fn set(&self) -> Option<&[u32]> {
        match self {
            SignedSet::Empty => None,
            SignedSet::Plain(x) | SignedSet::Starred(x) => Some(x),
        }
    }

    pub fn max(&self) -> Option<u32> {
        self.set().and_then(|x| x.last().copied())
    }

    pub fn is_starred(&self) -> bool {
        matches!(self, SignedSet::Starred(_))
    }

    /// Anchor type of the windows when this set sits in slot 0 or 1.
    pub fn anchor_type(&self, slot: u8) -> Option<u8> {
        self.max().map(|m| ((m + slot as u32) % 2) as u8)
    }
}

fn normalize(x: &[u32]) -> Vec<u32> {
    let mut v = x.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

impl fmt::Display for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedSet::Empty => write!(f, "empty"),
            SignedSet::Plain(x) => write!(f, "{}", render_set(x)),
            SignedSet::Starred(x) => write!(f, "*{}", render_set(x)),
        }
    }
}

fn render_set(x: &[u32]) -> String {
    let parts: Vec<String> = x.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    /// `G+(Y0, Y1)`.
    TypePreserving(SignedSet, SignedSet),
    /// `G+(X0, X1)*`: every window shares one parity.
    CombinedStar(Vec<u32>, Vec<u32>),
    /// `G(X, X)` on a regular tree.
    RegularFull(Vec<u32>),
    /// `G(X*, X*)`.
    RegularFullStar(Vec<u32>),
    /// `G(X, X)*`.
    RegularCombined(Vec<u32>),
    /// `G'(X, X)*`: the two type parities differ exactly on type-swapping
    /// elements.
    RegularPrime(Vec<u32>),
}

impl GroupSpec {
    pub fn plus(y0: SignedSet, y1: SignedSet) -> Result<Self, SpecError> {
        Ok(GroupSpec::TypePreserving(checked(y0)?, checked(y1)?))
    }

    /// `G+({0},{0})`, the alternating universal group.
    pub fn alt() -> Self {
        GroupSpec::TypePreserving(SignedSet::Plain(vec![0]), SignedSet::Plain(vec![0]))
    }

    /// `G+(∅,∅) = Aut(T)+`.
    pub fn full() -> Self {
        GroupSpec::TypePreserving(SignedSet::Empty, SignedSet::Empty)
    }

    pub fn is_regular_variant(&self) -> bool {
        !matches!(self, GroupSpec::TypePreserving(..) | GroupSpec::CombinedStar(..))
    }

    /// The underlying sets of the two window families, with stars removed.
    pub fn underlying(&self) -> [Option<Vec<u32>>; 2] {
        let l = self.layout();
        [l.fams[0].as_ref().map(|f| f.set.clone()), l.fams[1].as_ref().map(|f| f.set.clone())]
    }

    /// Window families and how their parities are tied together.
    pub fn layout(&self) -> Layout {
        let fam = |x: &[u32], slot: u8| Family {
            set: x.to_vec(),
            anchor_type: ((x[x.len() - 1] + slot as u32) % 2) as u8,
        };
        let from_signed = |y: &SignedSet, slot: u8| {
            y.set().map(|x| {
                let class = if y.is_starred() { FamilyClass::Shared(slot) } else { FamilyClass::Even };
                (fam(x, slot), class)
            })
        };
        let (a, b, prime) = match self {
            GroupSpec::TypePreserving(y0, y1) => (from_signed(y0, 0), from_signed(y1, 1), false),
            GroupSpec::CombinedStar(x0, x1) => (
                Some((fam(x0, 0), FamilyClass::Shared(0))),
                Some((fam(x1, 1), FamilyClass::Shared(0))),
                false,
            ),
            GroupSpec::RegularFull(x) => {
                (Some((fam(x, 0), FamilyClass::Even)), Some((fam(x, 1), FamilyClass::Even)), false)
            }
            GroupSpec::RegularFullStar(x) => (
                Some((fam(x, 0), FamilyClass::Shared(0))),
                Some((fam(x, 1), FamilyClass::Shared(1))),
                false,
            ),
            GroupSpec::RegularCombined(x) => (
                Some((fam(x, 0), FamilyClass::Shared(0))),
                Some((fam(x, 1), FamilyClass::Shared(0))),
                false,
            ),
            GroupSpec::RegularPrime(x) => (
                Some((fam(x, 0), FamilyClass::Shared(0))),
                Some((fam(x, 1), FamilyClass::Shared(0))),
                true,
            ),
        };
        let split = |o: Option<(Family, FamilyClass)>| match o {
            Some((f, c)) => (Some(f), c),
            None => (None, FamilyClass::Even),
        };
        let (f0, c0) = split(a);
        let (f1, c1) = split(b);
        Layout {
            fams: [f0, f1],
            classes: [c0, c1],
            prime,
            allows_swap: self.is_regular_variant(),
        }
    }

    fn check_ball(&self, ball: &Ball) -> Result<(), SpecError> {
        if self.is_regular_variant() && !ball.shape().is_regular() {
            return Err(SpecError::NeedsRegular(self.to_string()));
        }
        Ok(())
    }
}

fn checked(y: SignedSet) -> Result<SignedSet, SpecError> {
    match &y {
        SignedSet::Plain(x) | SignedSet::Starred(x) if x.is_empty() => Err(SpecError::EmptySet("G+")),
        SignedSet::Plain(x) => Ok(SignedSet::Plain(normalize(x))),
        SignedSet::Starred(x) => Ok(SignedSet::Starred(normalize(x))),
        SignedSet::Empty => Ok(y),
    }
}

/// A family of windows `S_X(w)` anchored at every vertex `w` of one type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub set: Vec<u32>,
    pub anchor_type: u8,
}

impl Family {
    pub fn max(&self) -> usize {
        *self.set.last().unwrap() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyClass {
    /// Each window must be even on its own.
    Even,
    /// All windows of the same group share one parity.
    Shared(u8),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub fams: [Option<Family>; 2],
    pub classes: [FamilyClass; 2],
    /// Family 1 parity is offset by the swap bit.
    pub prime: bool,
    pub allows_swap: bool,
}

impl Layout {
    /// Parity offset of family `f` within its group.
    fn offset(&self, f: usize, swap: bool) -> bool {
        self.prime && f == 1 && swap
    }

    pub fn max_radius(&self) -> usize {
        self.fams.iter().flatten().map(Family::max).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowClass {
    Even,
    /// Member of a shared class. `swap_offset` is set when the class parity
    /// seen by this window is flipped on side-swapping elements.
    Shared { group: u8, swap_offset: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub anchor: usize,
    pub family: u8,
    pub vertices: Vec<usize>,
    pub class: WindowClass,
}

fn window_vertices(ball: &Ball, w: usize, set: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    for &r in set {
        out.extend(ball.sphere(w, r as usize));
    }
    out.sort_unstable();
    out
}

fn check_depth(ball: &Ball, k: usize) -> Result<(), SpecError> {
    if k > ball.depth() {
        return Err(SpecError::DepthTooLarge { got: k, max: ball.depth() });
    }
    Ok(())
}

/// Every window fully inside the depth-`k` part of `ball`, in anchor order.
pub fn constrained_windows(spec: &GroupSpec, ball: &Ball, k: usize) -> Result<Vec<Window>, SpecError> {
    spec.check_ball(ball)?;
    check_depth(ball, k)?;
    let layout = spec.layout();
    let mut out = Vec::new();
    for w in 0..ball.prefix_len(k) {
        for f in 0..2 {
            let Some(fam) = &layout.fams[f] else { continue };
            if ball.vertex_type(w) != fam.anchor_type || ball.boundary_distance(w, k).unwrap() < fam.max() {
                continue;
            }
            let class = match layout.classes[f] {
                FamilyClass::Even => WindowClass::Even,
                FamilyClass::Shared(g) => WindowClass::Shared { group: g, swap_offset: layout.prime && f == 1 },
            };
            out.push(Window { anchor: w, family: f as u8, vertices: window_vertices(ball, w, &fam.set), class });
        }
    }
    Ok(out)
}

/// Compiled diagram set: a homogeneous system over the labels of depth at
/// most `depth`, plus one trailing swap coordinate when the spec allows
/// side swaps on an edge-rooted ball.
#[derive(Debug, Clone)]
pub struct BinarySystem {
    pub depth: usize,
    pub num_labels: usize,
    pub swap_var: Option<usize>,
    pub system: LinearSystem,
}

impl BinarySystem {
    pub fn nvars(&self) -> usize {
        self.system.nvars()
    }

    pub fn rref(&self) -> Rref {
        self.system.rref()
    }

    /// Dimension of the solution space.
    pub fn dimension(&self) -> usize {
        self.rref().nullity()
    }

    /// `log2` of the number of diagrams (counting swap choices).
    pub fn count_log2(&self) -> usize {
        self.dimension()
    }

    pub fn vector_of(&self, d: &Diagram) -> BitVec {
        let mut x = d.labels().extended(self.nvars());
        if let Some(s) = self.swap_var {
            x.set(s, d.swap());
        }
        x
    }

    pub fn is_member(&self, d: &Diagram) -> bool {
        if d.labels().len() != self.num_labels || (d.swap() && self.swap_var.is_none()) {
            return false;
        }
        self.system.is_solution(&self.vector_of(d))
    }
}

pub fn compile(spec: &GroupSpec, ball: &Ball, k: usize) -> Result<BinarySystem, SpecError> {
    let windows = constrained_windows(spec, ball, k)?;
    let n = ball.prefix_len(k);
    let swap_var = (spec.is_regular_variant() && ball.kind() == BallKind::EdgeRooted).then_some(n);
    let nvars = n + swap_var.is_some() as usize;
    let mut system = LinearSystem::new(nvars);
    let mut first: [Option<(usize, bool)>; 2] = [None, None];
    for (idx, w) in windows.iter().enumerate() {
        match w.class {
            WindowClass::Even => system.push(BitVec::from_indices(nvars, w.vertices.iter().copied())),
            WindowClass::Shared { group, swap_offset } => {
                let g = group as usize;
                match first[g] {
                    None => first[g] = Some((idx, swap_offset)),
                    Some((a, off)) => {
                        let mut row = BitVec::from_indices(nvars, windows[a].vertices.iter().copied());
                        for &v in &w.vertices {
                            row.flip(v);
                        }
                        if off != swap_offset {
                            if let Some(s) = swap_var {
                                row.flip(s);
                            }
                        }
                        system.push(row);
                    }
                }
            }
        }
    }
    Ok(BinarySystem { depth: k, num_labels: n, swap_var, system })
}

/// Parity of the labels in `vertices`.
pub fn window_parity(labels: &BitVec, vertices: &[usize]) -> bool {
    vertices.iter().fold(false, |acc, &v| acc ^ labels.get(v))
}

/// Membership of `d` in the spec's diagram set on its own ball.
pub fn diagram_in_group(spec: &GroupSpec, ball: &Ball, d: &Diagram) -> Result<bool, SpecError> {
    if d.key() != ball.key() {
        return Err(SpecError::BallMismatch);
    }
    let layout = spec.layout();
    if d.swap() && !(layout.allows_swap && ball.kind() == BallKind::EdgeRooted) {
        return Ok(false);
    }
    let windows = constrained_windows(spec, ball, ball.depth())?;
    Ok(windows_satisfied(&layout, &windows, d.labels(), d.swap()))
}

fn windows_satisfied(layout: &Layout, windows: &[Window], labels: &BitVec, swap: bool) -> bool {
    let mut group: [Option<bool>; 2] = [None, None];
    for w in windows {
        let p = window_parity(labels, &w.vertices);
        match w.class {
            WindowClass::Even => {
                if p {
                    return false;
                }
            }
            WindowClass::Shared { group: g, .. } => {
                let base = p ^ layout.offset(w.family as usize, swap);
                match group[g as usize] {
                    None => group[g as usize] = Some(base),
                    Some(q) if q != base => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Sphere parities of a labelling, answered in `O(r)` per query after a
/// bottom-up pass.
pub struct SphereParity<'a> {
    ball: &'a Ball,
    labels: &'a BitVec,
    /// `down[r]` holds, per vertex, the parity of its generation-`r`
    /// descendants.
    down: Vec<Vec<bool>>,
}

impl<'a> SphereParity<'a> {
    pub fn new(ball: &'a Ball, labels: &'a BitVec, max_r: usize) -> Self {
        let n = labels.len();
        let mut down = vec![(0..n).map(|v| labels.get(v)).collect::<Vec<bool>>()];
        for r in 1..=max_r {
            let prev = &down[r - 1];
            let mut cur = vec![false; n];
            for (v, c) in cur.iter_mut().enumerate() {
                *c = ball.children(v).filter(|&x| x < n).fold(false, |acc, x| acc ^ prev[x]);
            }
            down.push(cur);
        }
        SphereParity { ball, labels, down }
    }

    /// Parity of `S(w, r)`; only meaningful when the sphere lies within the
    /// labelled part.
    pub fn sphere(&self, w: usize, r: usize) -> bool {
        let mut p = self.down[r][w];
        let mut prev = w;
        for j in 1..=r {
            match self.ball.parent(prev) {
                Some(a) => {
                    p ^= if r == j { self.labels.get(a) } else { self.down[r - j][a] ^ self.down[r - j - 1][prev] };
                    prev = a;
                }
                None => {
                    if self.ball.num_roots() == 2 {
                        p ^= self.down[r - j][1 - prev];
                    }
                    break;
                }
            }
        }
        p
    }

    pub fn window(&self, w: usize, set: &[u32]) -> bool {
        set.iter().fold(false, |acc, &r| acc ^ self.sphere(w, r as usize))
    }
}

/// Checks every window contained in the depth-`k` part using sphere
/// parities; suitable for large balls.
pub fn satisfies_windows(spec: &GroupSpec, ball: &Ball, labels: &BitVec, k: usize, swap: bool) -> Result<bool, SpecError> {
    spec.check_ball(ball)?;
    check_depth(ball, k)?;
    let layout = spec.layout();
    let sp = SphereParity::new(ball, labels, layout.max_radius());
    let mut group: [Option<bool>; 2] = [None, None];
    for w in 0..ball.prefix_len(k) {
        for f in 0..2 {
            let Some(fam) = &layout.fams[f] else { continue };
            if ball.vertex_type(w) != fam.anchor_type || ball.boundary_distance(w, k).unwrap() < fam.max() {
                continue;
            }
            let p = sp.window(w, &fam.set);
            match layout.classes[f] {
                FamilyClass::Even if p => return Ok(false),
                FamilyClass::Even => {}
                FamilyClass::Shared(g) => {
                    let base = p ^ layout.offset(f, swap);
                    match group[g as usize] {
                        None => group[g as usize] = Some(base),
                        Some(q) if q != base => return Ok(false),
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The diagram of `g` on `B(v, n-1)` when `ball` has depth `n`.
pub fn diagram_of_automorphism(
    ball: &Ball,
    i: &LegalColoring,
    g: &BallAutomorphism,
) -> Result<Diagram, SpecError> {
    assert!(ball.depth() >= 1, "ball of depth at least 1 needed");
    let sub = Ball::build(ball.shape(), ball.root_type(), ball.depth() - 1, ball.kind())
        .expect("sub-ball");
    let n = sub.len();
    let mut labels = BitVec::zeros(n);
    for v in 0..n {
        if local_parity(ball, i, g, v)? {
            labels.set(v, true);
        }
    }
    Ok(Diagram::new(&sub, labels, g.swaps_sides()))
}

/// Membership of `g` through its diagram on the ball one level smaller.
pub fn automorphism_in_group(
    spec: &GroupSpec,
    ball: &Ball,
    i: &LegalColoring,
    g: &BallAutomorphism,
) -> Result<bool, SpecError> {
    let d = diagram_of_automorphism(ball, i, g)?;
    let sub = Ball::build(ball.shape(), ball.root_type(), ball.depth() - 1, ball.kind())
        .expect("sub-ball");
    diagram_in_group(spec, &sub, &d)
}

/// Level-by-level constructive filler for diagram sets.
///
/// The windows that become contained when the cut moves from `k - 1` to `k`
/// are anchored at depth `k - max X`; their level-`k` parts are the
/// generation-`max X` descendants of the anchor, and these parts partition
/// the level. So each new window can be evened out (or matched with its
/// class) by one label of its own.
pub(crate) struct Filler<'a> {
    ball: &'a Ball,
    layout: Layout,
    swap: bool,
    group: [Option<bool>; 2],
}

impl<'a> Filler<'a> {
    /// Prepares to fill levels above `known`, where `labels` already holds a
    /// valid diagram up to depth `known` (or nothing when `known` is `None`).
    pub(crate) fn new(
        spec: &GroupSpec,
        ball: &'a Ball,
        labels: &BitVec,
        known: Option<usize>,
        swap: bool,
    ) -> Result<Filler<'a>, SpecError> {
        spec.check_ball(ball)?;
        let layout = spec.layout();
        let mut f = Filler { ball, layout, swap, group: [None, None] };
        if let Some(k) = known {
            let windows = constrained_windows(spec, ball, k)?;
            if !windows_satisfied(&f.layout, &windows, labels, swap) {
                return Err(SpecError::NotInGroup(spec.to_string()));
            }
            for w in &windows {
                if let WindowClass::Shared { group, .. } = w.class {
                    let g = group as usize;
                    if f.group[g].is_none() {
                        let p = window_parity(labels, &w.vertices);
                        f.group[g] = Some(p ^ f.layout.offset(w.family as usize, swap));
                    }
                }
            }
        }
        Ok(f)
    }

    fn descendants(&self, w: usize, m: usize) -> std::ops::Range<usize> {
        let (mut a, mut b) = (w, w + 1);
        for _ in 0..m {
            let lo = self.ball.children(a).start;
            let hi = self.ball.children(b - 1).end;
            if lo >= hi {
                return 0..0;
            }
            a = lo;
            b = hi;
        }
        a..b
    }

    /// Required parity of a new window of family `f`, drawing the class
    /// parity from `choose` when this is the first window of its group.
    fn required(&mut self, f: usize, choose: &mut dyn FnMut() -> bool) -> bool {
        match self.layout.classes[f] {
            FamilyClass::Even => false,
            FamilyClass::Shared(g) => {
                let off = self.layout.offset(f, self.swap);
                let g = g as usize;
                match self.group[g] {
                    Some(p) => p ^ off,
                    None => {
                        let p = choose();
                        self.group[g] = Some(p ^ off);
                        p
                    }
                }
            }
        }
    }

    /// Fills level `k` (optionally one side only) given all lower levels.
    /// `place` picks the vertex of each new part that makes up the parity.
    pub(crate) fn fill_level(
        &mut self,
        labels: &mut BitVec,
        k: usize,
        side: Option<u8>,
        choose: &mut dyn FnMut() -> bool,
        place: &mut dyn FnMut(&Ball, std::ops::Range<usize>) -> usize,
    ) {
        let ball = self.ball;
        let level = ball.level(k);
        let mut covered = vec![false; level.len()];
        for f in 0..2 {
            let Some(fam) = self.layout.fams[f].clone() else { continue };
            let m = fam.max();
            if m > k {
                continue;
            }
            for w in ball.level(k - m) {
                if ball.vertex_type(w) != fam.anchor_type
                    || ball.boundary_distance(w, k).unwrap() < m
                    || side.is_some_and(|s| ball.side(w) != s)
                {
                    continue;
                }
                let part = self.descendants(w, m);
                if part.is_empty() {
                    continue;
                }
                let want = self.required(f, choose);
                let verts = window_vertices(ball, w, &fam.set);
                let pin = place(ball, part.clone());
                let mut p = false;
                for &x in &verts {
                    if part.contains(&x) {
                        covered[x - level.start] = true;
                        if x != pin {
                            let b = choose();
                            labels.set(x, b);
                            p ^= b;
                        }
                    } else {
                        p ^= labels.get(x);
                    }
                }
                labels.set(pin, p ^ want);
            }
        }
        for (j, c) in covered.iter().enumerate() {
            if !c && side.is_none_or(|s| ball.side(level.start + j) == s) {
                labels.set(level.start + j, choose());
            }
        }
    }
}

fn last_vertex(_: &Ball, r: std::ops::Range<usize>) -> usize {
    r.end - 1
}

/// Extends a depth-`k` diagram in the spec's set to a depth-`k+1` one,
/// choosing free labels from a generator seeded by `seed`.
pub fn extend_diagram(spec: &GroupSpec, ball: &Ball, d: &Diagram, seed: u64) -> Result<(Ball, Diagram), SpecError> {
    if d.key() != ball.key() {
        return Err(SpecError::BallMismatch);
    }
    let k = ball.depth();
    let big = Ball::build(ball.shape(), ball.root_type(), k + 1, ball.kind()).expect("ball");
    let mut labels = d.labels().extended(big.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut filler = Filler::new(spec, &big, &labels, Some(k), d.swap())?;
    filler.fill_level(&mut labels, k + 1, None, &mut || rng.gen_bool(0.5), &mut last_vertex);
    let out = Diagram::new(&big, labels, d.swap());
    Ok((big, out))
}

/// A random member of the depth-`ball.depth()` diagram set, built level by
/// level.
pub fn sample_diagram<R: Rng + ?Sized>(
    spec: &GroupSpec,
    ball: &Ball,
    swap: bool,
    rng: &mut R,
) -> Result<Diagram, SpecError> {
    let mut labels = BitVec::zeros(ball.len());
    let mut filler = Filler::new(spec, ball, &labels, None, swap)?;
    for k in 0..=ball.depth() {
        filler.fill_level(&mut labels, k, None, &mut || rng.gen_bool(0.5), &mut last_vertex);
    }
    Ok(Diagram::new(ball, labels, swap))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    /// Parity of the family-0 windows (true when odd).
    pub p0: bool,
    pub p1: bool,
    pub swap: bool,
}

impl SignPattern {
    /// `p_f(gh) = p_{f xor s(h)}(g) + p_f(h)`, from the cocycle identity.
    pub fn mul(self, h: SignPattern) -> SignPattern {
        let (g0, g1) = if h.swap { (self.p1, self.p0) } else { (self.p0, self.p1) };
        SignPattern { p0: g0 ^ h.p0, p1: g1 ^ h.p1, swap: self.swap ^ h.swap }
    }

    pub fn identity() -> SignPattern {
        SignPattern { p0: false, p1: false, swap: false }
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |b: bool| if b { '-' } else { '+' };
        write!(f, "({},{},{})", s(self.p0), s(self.p1), self.swap as u8)
    }
}

/// The window-parity patterns realised by elements of the spec's group.
pub fn sign_patterns(spec: &GroupSpec) -> Vec<SignPattern> {
    let l = spec.layout();
    let mut out = Vec::new();
    for bits in 0..8u8 {
        let p = SignPattern { p0: bits & 1 != 0, p1: bits & 2 != 0, swap: bits & 4 != 0 };
        if p.swap && !l.allows_swap {
            continue;
        }
        let par = [p.p0, p.p1];
        let ok = (0..2).all(|f| match (&l.fams[f], l.classes[f]) {
            (None, _) | (_, FamilyClass::Even) => !par[f],
            _ => true,
        });
        let shared_ok = match (l.classes[0], l.classes[1]) {
            (FamilyClass::Shared(a), FamilyClass::Shared(b)) if a == b => {
                par[0] == par[1] ^ l.offset(1, p.swap)
            }
            _ => true,
        };
        if ok && shared_ok {
            out.push(p);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallGroup {
    Trivial,
    C2,
    C2xC2,
    C4,
    D8,
    Other,
}

impl fmt::Display for SmallGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SmallGroup::Trivial => "1",
            SmallGroup::C2 => "C2",
            SmallGroup::C2xC2 => "C2xC2",
            SmallGroup::C4 => "C4",
            SmallGroup::D8 => "D8",
            SmallGroup::Other => "other",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct Quotient {
    /// Coset representatives, the identity coset first.
    pub cosets: Vec<SignPattern>,
    /// `table[a][b]` is the index of the product of cosets `a` and `b`.
    pub table: Vec<Vec<usize>>,
    pub class: SmallGroup,
}

impl Quotient {
    pub fn order(&self) -> usize {
        self.cosets.len()
    }
}

/// Settings for validating inclusion before forming a quotient.
#[derive(Debug, Clone, Copy)]
pub struct QuotientCheck {
    pub shape: crate::tree_core::TreeShape,
    pub depth: usize,
}

/// Diagram-set inclusion at depth `k` on the given ball: every basis vector
/// of `sub` satisfies the rows of `sup`.
pub fn included_at(sub: &GroupSpec, sup: &GroupSpec, ball: &Ball, k: usize) -> Result<bool, SpecError> {
    let a = compile(sub, ball, k)?;
    let b = compile(sup, ball, k)?;
    let n = a.num_labels;
    for v in a.rref().nullspace_basis() {
        let swap = a.swap_var.is_some_and(|s| v.get(s));
        let mut x = v.truncated(n).extended(b.nvars());
        match b.swap_var {
            Some(s) => x.set(s, swap),
            None if swap => return Ok(false),
            None => {}
        }
        if !b.system.is_solution(&x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sup / sub` realised on sign patterns.
pub fn symbolic_quotient(sub: &GroupSpec, sup: &GroupSpec, check: QuotientCheck) -> Result<Quotient, SpecError> {
    if sub.underlying() != sup.underlying() {
        return Err(SpecError::BadQuotient(format!("{sub} and {sup} use different window sets")));
    }
    let not_included = || SpecError::NotIncluded { sub: sub.to_string(), sup: sup.to_string() };
    for t in 0..2 {
        let ball = Ball::vertex_full(check.shape, t, check.depth);
        if !included_at(sub, sup, &ball, check.depth)? {
            return Err(not_included());
        }
    }
    let ps = sign_patterns(sub);
    let pg = sign_patterns(sup);
    let sub_set: HashSet<SignPattern> = ps.iter().copied().collect();
    if !ps.iter().all(|p| pg.contains(p)) {
        return Err(not_included());
    }
    for &a in &pg {
        for &b in &pg {
            if !pg.contains(&a.mul(b)) {
                return Err(SpecError::BadQuotient(format!("patterns of {sup} are not closed")));
            }
        }
    }
    for &a in &ps {
        for &b in &ps {
            if !sub_set.contains(&a.mul(b)) {
                return Err(SpecError::BadQuotient(format!("patterns of {sub} are not closed")));
            }
        }
    }
    let inv = |g: SignPattern| *pg.iter().find(|&&h| g.mul(h) == SignPattern::identity()).expect("inverse");
    for &g in &pg {
        for &n in &ps {
            if !sub_set.contains(&g.mul(n).mul(inv(g))) {
                return Err(SpecError::BadQuotient(format!("{sub} is not normal in {sup}")));
            }
        }
    }
    // Cosets gH; representative is the smallest element.
    let coset_of = |g: SignPattern| ps.iter().map(|&n| g.mul(n)).min().unwrap();
    let mut cosets: Vec<SignPattern> = Vec::new();
    for &g in &pg {
        let c = coset_of(g);
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    cosets.sort_by_key(|&c| (c != coset_of(SignPattern::identity()), c));
    let index = |c: SignPattern| cosets.iter().position(|&x| x == coset_of(c)).unwrap();
    let table: Vec<Vec<usize>> =
        cosets.iter().map(|&a| cosets.iter().map(|&b| index(a.mul(b))).collect()).collect();
    let class = classify(&table);
    Ok(Quotient { cosets, table, class })
}

/// Identifies a group of order at most 8 from its multiplication table.
pub fn classify(table: &[Vec<usize>]) -> SmallGroup {
    let n = table.len();
    let order_of = |a: usize| {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = table[x][a];
            k += 1;
        }
        k
    };
    let abelian = (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
    let max_order = (0..n).map(order_of).max().unwrap_or(1);
    let involutions = (1..n).filter(|&a| order_of(a) == 2).count();
    match (n, abelian, max_order) {
        (1, _, _) => SmallGroup::Trivial,
        (2, _, _) => SmallGroup::C2,
        (4, _, 2) => SmallGroup::C2xC2,
        (4, _, 4) => SmallGroup::C4,
        (8, false, 4) if involutions == 5 => SmallGroup::D8,
        _ => SmallGroup::Other,
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::TypePreserving(a, b) => write!(f, "G+(X0={a}; X1={b})"),
            GroupSpec::CombinedStar(a, b) => write!(f, "Gc*(X0={}; X1={})", render_set(a), render_set(b)),
            GroupSpec::RegularFull(x) => write!(f, "G(X={})", render_set(x)),
            GroupSpec::RegularFullStar(x) => write!(f, "G*(X={})", render_set(x)),
            GroupSpec::RegularCombined(x) => write!(f, "Gc(X={})", render_set(x)),
            GroupSpec::RegularPrime(x) => write!(f, "Gprime(X={})", render_set(x)),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), SpecError> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected {tok:?}"))
        }
    }

    fn number(&mut self) -> Result<u32, SpecError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().or_else(|_| {
            self.pos = start;
            self.err("number out of range")
        })
    }

    fn braces(&mut self) -> Result<Vec<u32>, SpecError> {
        self.expect("{")?;
        let mut out: Vec<u32> = Vec::new();
        if self.eat("}") {
            return self.err("empty braces; write `empty` instead");
        }
        loop {
            let at = self.pos;
            let x = self.number()?;
            if out.last().is_some_and(|&l| l >= x) {
                self.pos = at;
                return self.err("set elements must be strictly ascending");
            }
            out.push(x);
            if self.eat("}") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn signed(&mut self) -> Result<SignedSet, SpecError> {
        if self.eat("empty") {
            Ok(SignedSet::Empty)
        } else if self.eat("*") {
            Ok(SignedSet::Starred(self.braces()?))
        } else {
            Ok(SignedSet::Plain(self.braces()?))
        }
    }

    fn pair<T>(&mut self, item: impl Fn(&mut Self) -> Result<T, SpecError>) -> Result<(T, T), SpecError> {
        self.expect("(")?;
        self.expect("X0")?;
        self.expect("=")?;
        let a = item(self)?;
        self.expect(";")?;
        self.expect("X1")?;
        self.expect("=")?;
        let b = item(self)?;
        self.expect(")")?;
        Ok((a, b))
    }

    fn single(&mut self) -> Result<Vec<u32>, SpecError> {
        self.expect("(")?;
        self.expect("X")?;
        self.expect("=")?;
        let x = self.braces()?;
        self.expect(")")?;
        Ok(x)
    }

    fn spec(&mut self) -> Result<GroupSpec, SpecError> {
        let spec = if self.eat("G+") {
            let (a, b) = self.pair(Self::signed)?;
            GroupSpec::TypePreserving(a, b)
        } else if self.eat("Gc*") {
            let (a, b) = self.pair(Self::braces)?;
            GroupSpec::CombinedStar(a, b)
        } else if self.eat("Gprime") {
            GroupSpec::RegularPrime(self.single()?)
        } else if self.eat("Gc") {
            GroupSpec::RegularCombined(self.single()?)
        } else if self.eat("G*") {
            GroupSpec::RegularFullStar(self.single()?)
        } else if self.eat("G") {
            GroupSpec::RegularFull(self.single()?)
        } else {
            return self.err("expected one of G+, Gc*, G, G*, Gc, Gprime");
        };
        self.ws();
        if self.pos != self.s.len() {
            return self.err("trailing input");
        }
        Ok(spec)
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    Parser { s: text.as_bytes(), pos: 0 }.spec()
}

pub fn render_spec(spec: &GroupSpec) -> String {
    spec.to_string()
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s)
    }
}

/// Largest vertex-full ball accepted by [`brute_force_members`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 24;

/// Reference enumeration of the diagram set on a vertex-full ball: every
/// labelling is tested against windows rebuilt from pairwise distances.
pub fn brute_force_members(spec: &GroupSpec, ball: &Ball) -> Result<Vec<BitVec>, SpecError> {
    spec.check_ball(ball)?;
    if ball.kind() != BallKind::VertexFull || ball.len() > BRUTE_FORCE_MAX_VERTICES {
        return Err(SpecError::BallMismatch);
    }
    let n = ball.len();
    let k = ball.depth();
    let layout = spec.layout();
    // (class, mask of the window) for every window inside the ball.
    let mut windows: Vec<(FamilyClass, u32)> = Vec::new();
    for w in 0..n {
        for (f, fam) in layout.fams.iter().enumerate() {
            let Some(fam) = fam else { continue };
            if ball.vertex_type(w) != fam.anchor_type || ball.vertex_depth(w) + fam.max() > k {
                continue;
            }
            let mask = (0..n)
                .filter(|&u| fam.set.contains(&(ball.distance(u, w) as u32)))
                .fold(0u32, |m, u| m | 1 << u);
            windows.push((layout.classes[f], mask));
        }
    }
    let mut out = Vec::new();
    for x in 0u32..(1 << n) {
        let mut group: [Option<u32>; 2] = [None, None];
        let ok = windows.iter().all(|&(class, mask)| {
            let p = (x & mask).count_ones() % 2;
            match class {
                FamilyClass::Even => p == 0,
                FamilyClass::Shared(g) => *group[g as usize].get_or_insert(p) == p,
            }
        });
        if ok {
            out.push(BitVec::from_indices(n, (0..n).filter(|&u| x >> u & 1 == 1)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree_core::TreeShape;

    fn shape(a: usize, b: usize) -> TreeShape {
        TreeShape::new(a, b).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_spec("G+(X0={0,2}; X1=empty)").unwrap(),
            GroupSpec::TypePreserving(SignedSet::Plain(vec![0, 2]), SignedSet::Empty)
        );
        assert_eq!(
            parse_spec("G+(X0=*{1}; X1=*{1})").unwrap(),
            GroupSpec::TypePreserving(SignedSet::Starred(vec![1]), SignedSet::Starred(vec![1]))
        );
        assert_eq!(parse_spec("Gc*(X0={1}; X1={1})").unwrap(), GroupSpec::CombinedStar(vec![1], vec![1]));
        assert_eq!(parse_spec("Gprime(X={0,3})").unwrap(), GroupSpec::RegularPrime(vec![0, 3]));
        assert_eq!(parse_spec("G*(X={2})").unwrap(), GroupSpec::RegularFullStar(vec![2]));
        assert_eq!(parse_spec("Gc(X={2})").unwrap(), GroupSpec::RegularCombined(vec![2]));
        assert_eq!(parse_spec("G(X={2})").unwrap(), GroupSpec::RegularFull(vec![2]));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_spec("G+(X0={}; X1=empty)"), Err(SpecError::Syntax { .. })));
        assert!(matches!(parse_spec("G+(X0={2,1}; X1=empty)"), Err(SpecError::Syntax { pos: 9, .. })));
        assert!(matches!(parse_spec("H(X={1})"), Err(SpecError::Syntax { pos: 0, .. })));
        assert!(parse_spec("G+(X0={1}; X1=empty) x").is_err());
    }

    #[test]
    fn window_examples() {
        let b = Ball::vertex_full(shape(4, 4), 0, 1);
        let w = constrained_windows(&GroupSpec::alt(), &b, 1).unwrap();
        assert_eq!(w.len(), 5);
        assert!(w.iter().all(|w| w.vertices.len() == 1 && w.class == WindowClass::Even));

        let b = Ball::vertex_full(shape(4, 4), 0, 2);
        let spec = parse_spec("G+(X0={1}; X1=empty)").unwrap();
        let w = constrained_windows(&spec, &b, 2).unwrap();
        assert_eq!(w.len(), 4);
        for win in &w {
            assert_eq!(win.vertices.len(), 4);
            assert!(win.vertices.contains(&0));
            assert_eq!(b.vertex_depth(win.anchor), 1);
        }
        let starred = parse_spec("G+(X0=*{1}; X1=empty)").unwrap();
        let ws = constrained_windows(&starred, &b, 2).unwrap();
        assert_eq!(ws.len(), 4);
        assert!(ws.iter().all(|w| w.class == WindowClass::Shared { group: 0, swap_offset: false }));
    }

    #[test]
    fn compile_counts() {
        let b = Ball::vertex_full(shape(4, 4), 0, 1);
        assert_eq!(compile(&GroupSpec::alt(), &b, 1).unwrap().dimension(), 0);
        assert_eq!(compile(&GroupSpec::full(), &b, 1).unwrap().dimension(), 5);
        let b = Ball::vertex_full(shape(4, 4), 0, 2);
        let spec = parse_spec("G+(X0={1}; X1=empty)").unwrap();
        assert_eq!(compile(&spec, &b, 2).unwrap().dimension(), 13);
        let starred = parse_spec("G+(X0=*{1}; X1=empty)").unwrap();
        assert_eq!(compile(&starred, &b, 2).unwrap().dimension(), 14);
    }

    #[test]
    fn membership_examples() {
        let b = Ball::vertex_full(shape(6, 6), 0, 2);
        let mut d = Diagram::all_e(&b);
        assert!(diagram_in_group(&GroupSpec::alt(), &b, &d).unwrap());
        d.set(0, true);
        assert!(!diagram_in_group(&GroupSpec::alt(), &b, &d).unwrap());
        let spec = parse_spec("G+(X0={2}; X1=empty)").unwrap();
        assert!(diagram_in_group(&spec, &b, &d).unwrap());
    }

    #[test]
    fn quotients() {
        let check = QuotientCheck { shape: shape(4, 4), depth: 3 };
        let q = |a: &str, b: &str| symbolic_quotient(&parse_spec(a).unwrap(), &parse_spec(b).unwrap(), check);
        assert_eq!(q("G+(X0={1}; X1=empty)", "G+(X0=*{1}; X1=empty)").unwrap().class, SmallGroup::C2);
        assert_eq!(q("G+(X0={1}; X1={1})", "G+(X0=*{1}; X1=*{1})").unwrap().class, SmallGroup::C2xC2);
        assert_eq!(q("G+(X0={1}; X1={1})", "G*(X={1})").unwrap().class, SmallGroup::D8);
        assert_eq!(q("G+(X0={1}; X1={1})", "Gc(X={1})").unwrap().class, SmallGroup::C2xC2);
        assert_eq!(q("G+(X0={1}; X1={1})", "Gprime(X={1})").unwrap().class, SmallGroup::C4);
        assert!(q("G+(X0=*{1}; X1=empty)", "G+(X0={1}; X1=empty)").is_err());
    }
}
