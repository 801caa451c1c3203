//! Small permutation groups stored as explicit element lists, and subgroups
//! of direct powers `S^n` decomposed into products of subdiagonals.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::Rng;
use thiserror::Error;

/// Default cap on the number of elements a closure may produce.
pub const DEFAULT_BOUND: usize = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("closure exceeded {0} elements")]
    BoundExceeded(usize),
    #[error("permutations of different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
    #[error("projection onto coordinate {0} is not the whole of S")]
    NotFull(usize),
    #[error("S is not simple and non-abelian")]
    NotSimple,
    #[error("the kernel relation is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("coordinate {0} is not a function of its block representative")]
    NotIdentified(usize),
}

/// A permutation of `{0, ..., n-1}`; printed and parsed 1-based in cycle
/// notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u16).collect())
    }

    pub fn from_images(images: Vec<u16>) -> Result<Perm, PermError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x as usize >= images.len() || std::mem::replace(&mut seen[x as usize], true) {
                return Err(PermError::Parse(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Perm(images))
    }

    /// Parses cycles such as `(1 2 3)(4,5)`; `()` is the identity.
    pub fn parse(n: usize, text: &str) -> Result<Perm, PermError> {
        let mut images: Vec<u16> = (0..n as u16).collect();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(PermError::Parse(text.into()));
            };
            let end = body.find(')').ok_or_else(|| PermError::Parse(text.into()))?;
            let pts: Vec<usize> = body[..end]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().ok().filter(|&x| x >= 1 && x <= n).map(|x| x - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| PermError::Parse(text.into()))?;
            let mut cycle = Perm::identity(n);
            for (k, &a) in pts.iter().enumerate() {
                cycle.0[a] = pts[(k + 1) % pts.len()] as u16;
            }
            if pts.iter().collect::<HashSet<_>>().len() != pts.len() {
                return Err(PermError::Parse(text.into()));
            }
            // Cycles written left to right compose as functions applied
            // right to left.
            let cur = Perm(images);
            images = cur.compose(&cycle).0;
            rest = body[end + 1..].trim_start();
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    /// `(self ∘ h)(x) = self(h(x))`.
    pub fn compose(&self, h: &Perm) -> Perm {
        Perm(h.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u16;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Restriction to the points `offset..offset+m`, shifted down.
    pub fn block(&self, offset: usize, m: usize) -> Perm {
        Perm(self.0[offset..offset + m].iter().map(|&x| x - offset as u16).collect())
    }

    /// The permutation acting as `parts[i]` on the `i`-th block of points.
    pub fn concat(parts: &[&Perm]) -> Perm {
        let mut out = Vec::new();
        for p in parts {
            let off = out.len() as u16;
            out.extend(p.0.iter().map(|&x| x + off));
        }
        Perm(out)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// A materialized permutation group.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// The group generated by `gens`, by breadth-first multiplication.
pub fn closure(degree: usize, gens: &[Perm], bound: usize) -> Result<PermGroup, PermError> {
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
    }
    let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let id = Perm::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0)]);
    let mut i = 0;
    while i < elements.len() {
        for g in &gens {
            let x = g.compose(&elements[i]);
            if !index.contains_key(&x) {
                if elements.len() == bound {
                    return Err(PermError::BoundExceeded(bound));
                }
                index.insert(x.clone(), elements.len());
                elements.push(x);
            }
        }
        i += 1;
    }
    Ok(PermGroup { degree, gens, elements, index })
}

pub fn symmetric_group(m: usize) -> PermGroup {
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push(Perm::parse(m, "(1 2)").unwrap());
        gens.push(Perm((1..m as u16).chain([0]).collect()));
    }
    closure(m, &gens, DEFAULT_BOUND).expect("symmetric group within bound")
}

pub fn alternating_group(m: usize) -> PermGroup {
    let gens: Vec<Perm> = (2..m).map(|k| Perm::parse(m, &format!("(1 2 {})", k + 1)).unwrap()).collect();
    closure(m, &gens, DEFAULT_BOUND).expect("alternating group within bound")
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> &Perm {
        &self.elements[rng.gen_range(0..self.elements.len())]
    }

    /// Same element set.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.order() == other.order() && other.elements.iter().all(|g| self.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|a| self.gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    fn orbit_count(&self, points: usize, act: impl Fn(&Perm, usize) -> usize) -> usize {
        let mut seen = vec![false; points];
        let mut count = 0;
        for s in 0..points {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for g in &self.gens {
                    let y = act(g, x);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit_count(self.degree, |g, x| g.apply(x)) == 1
    }

    /// Transitive on ordered pairs of distinct points.
    pub fn is_2transitive(&self) -> bool {
        let m = self.degree;
        if m < 2 {
            return true;
        }
        // The diagonal is one orbit when the group is transitive; the other
        // pairs must form a single one.
        let orbits = self.orbit_count(m * m, |g, x| g.apply(x / m) * m + g.apply(x % m));
        self.is_transitive() && orbits == 2
    }

    /// The even elements make up all of `Alt(m)`.
    pub fn contains_alt(&self) -> bool {
        let even = self.elements.iter().filter(|g| g.is_even()).count() as u128;
        even == factorial(self.degree) / 2
    }

    /// Whether the group acts as `Alt(m)` exactly.
    pub fn is_alt(&self) -> bool {
        self.contains_alt() && self.elements.iter().all(|g| g.is_even())
    }

    /// Smallest subgroup containing `seeds` and normalized by the group.
    pub fn normal_closure(&self, seeds: &[Perm]) -> PermGroup {
        let bound = self.order().max(1);
        let mut gens: Vec<Perm> = seeds.iter().filter(|x| !x.is_identity()).cloned().collect();
        loop {
            let h = closure(self.degree, &gens, bound).expect("subgroup of a materialized group");
            let missing = h
                .generators()
                .iter()
                .flat_map(|x| self.gens.iter().map(move |g| g.compose(x).compose(&g.inverse())))
                .find(|c| !h.contains(c));
            match missing {
                Some(c) => gens.push(c),
                None => return h,
            }
        }
    }

    /// The commutator subgroup, as the normal closure of commutators of
    /// generators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut seeds = Vec::new();
        for a in &self.gens {
            for b in &self.gens {
                seeds.push(a.inverse().compose(&b.inverse()).compose(a).compose(b));
            }
        }
        self.normal_closure(&seeds)
    }

    /// No proper non-trivial normal subgroup and not commutative, decided by
    /// the normal closure of one element per conjugacy class.
    pub fn is_simple_nonabelian(&self) -> bool {
        if self.order() < 2 || self.is_abelian() {
            return false;
        }
        let mut done = vec![false; self.order()];
        for i in 1..self.order() {
            if done[i] {
                continue;
            }
            let g = &self.elements[i];
            for h in &self.elements {
                let c = h.compose(g).compose(&h.inverse());
                done[self.index[&c]] = true;
            }
            if self.normal_closure(std::slice::from_ref(g)).order() != self.order() {
                return false;
            }
        }
        true
    }
}

/// A subgroup of `S^n` acting on `n` blocks of `m` points.
#[derive(Debug, Clone)]
pub struct PowerSubgroup {
    pub n: usize,
    pub m: usize,
    pub group: PermGroup,
}

impl PowerSubgroup {
    pub fn new(n: usize, m: usize, group: PermGroup) -> Result<Self, PermError> {
        if group.degree() != n * m {
            return Err(PermError::DegreeMismatch(n * m, group.degree()));
        }
        Ok(PowerSubgroup { n, m, group })
    }

    /// Generated by tuples `(g_1, ..., g_n)`.
    pub fn generated(n: usize, m: usize, tuples: &[Vec<Perm>], bound: usize) -> Result<Self, PermError> {
        let gens: Vec<Perm> = tuples.iter().map(|t| Perm::concat(&t.iter().collect::<Vec<_>>())).collect();
        PowerSubgroup::new(n, m, closure(n * m, &gens, bound)?)
    }

    pub fn coordinate(&self, g: &Perm, i: usize) -> Perm {
        g.block(i * self.m, self.m)
    }

    /// Elements of `proj_i(G)`.
    pub fn projection(&self, i: usize) -> HashSet<Perm> {
        self.group.elements().iter().map(|g| self.coordinate(g, i)).collect()
    }

    /// `proj_{i,j}(G)`, via the closure of the projected generators.
    pub fn pair_projection(&self, i: usize, j: usize) -> PermGroup {
        let gens: Vec<Perm> = self
            .group
            .generators()
            .iter()
            .map(|g| Perm::concat(&[&self.coordinate(g, i), &self.coordinate(g, j)]))
            .collect();
        closure(2 * self.m, &gens, DEFAULT_BOUND).expect("pair projection within bound")
    }

    pub fn derived(&self) -> PowerSubgroup {
        PowerSubgroup { n: self.n, m: self.m, group: self.group.derived_subgroup() }
    }
}

/// Blocks of identified coordinates with, per coordinate, the bijection of
/// `S` that expresses it in terms of its block representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdiagonalDecomposition {
    pub blocks: Vec<Vec<usize>>,
    /// `rep[i]`: representative (smallest member) of the block of `i`.
    pub rep: Vec<usize>,
    /// `ident[i][a] = b` when `s_rep = S[a]` forces `s_i = S[b]`, indices
    /// into the elements of `S`.
    pub ident: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DecomposeOptions {
    /// Replace `G` by its `k`-th derived subgroup before decomposing.
    pub derived_steps: usize,
}

/// Writes `G <= S^n` with full projections as a product of subdiagonals.
pub fn decompose_subdiagonals(
    g: &PowerSubgroup,
    s: &PermGroup,
    opts: DecomposeOptions,
) -> Result<SubdiagonalDecomposition, PermError> {
    if s.degree() != g.m {
        return Err(PermError::DegreeMismatch(g.m, s.degree()));
    }
    if !s.is_simple_nonabelian() {
        return Err(PermError::NotSimple);
    }
    let mut g = g.clone();
    for _ in 0..opts.derived_steps {
        g = g.derived();
    }
    let n = g.n;
    for i in 0..n {
        let p = g.projection(i);
        if p.len() != s.order() || !p.iter().all(|x| s.contains(x)) {
            return Err(PermError::NotFull(i));
        }
    }
    // i ~ j iff proj_j(ker proj_i) is trivial.
    let mut related = vec![vec![false; n]; n];
    for i in 0..n {
        let kernel: Vec<&Perm> = g.group.elements().iter().filter(|x| g.coordinate(x, i).is_identity()).collect();
        for j in 0..n {
            related[i][j] = kernel.iter().all(|x| g.coordinate(x, j).is_identity());
        }
    }
    for i in 0..n {
        for j in 0..n {
            if related[i][j] != related[j][i] {
                return Err(PermError::NotSymmetric(i, j));
            }
        }
    }
    let mut rep = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for i in 0..n {
        if rep[i] != usize::MAX {
            continue;
        }
        let block: Vec<usize> = (i..n).filter(|&j| related[i][j]).collect();
        for &j in &block {
            rep[j] = i;
        }
        blocks.push(block);
    }
    let mut ident = vec![vec![usize::MAX; s.order()]; n];
    for x in g.group.elements() {
        for i in 0..n {
            let a = s.index_of(&g.coordinate(x, rep[i])).unwrap();
            let b = s.index_of(&g.coordinate(x, i)).unwrap();
            match ident[i][a] {
                usize::MAX => ident[i][a] = b,
                c if c != b => return Err(PermError::NotIdentified(i)),
                _ => {}
            }
        }
    }
    Ok(SubdiagonalDecomposition { blocks, rep, ident })
}

/// `{(s_i) : s_i = α_i(s_rep(i))}` over all choices on the representatives.
pub fn reconstruct(d: &SubdiagonalDecomposition, s: &PermGroup, bound: usize) -> Result<PowerSubgroup, PermError> {
    let n = d.rep.len();
    let r = d.blocks.len();
    let total = s.order().checked_pow(r as u32).filter(|&t| t <= bound).ok_or(PermError::BoundExceeded(bound))?;
    let reps: Vec<usize> = d.blocks.iter().map(|b| b[0]).collect();
    let mut elements = Vec::with_capacity(total);
    let mut index = HashMap::with_capacity(total);
    let mut choice = vec![0usize; r];
    for _ in 0..total {
        let parts: Vec<&Perm> = (0..n)
            .map(|i| {
                let b = reps.iter().position(|&x| x == d.rep[i]).unwrap();
                &s.elements()[d.ident[i][choice[b]]]
            })
            .collect();
        let x = Perm::concat(&parts);
        index.insert(x.clone(), elements.len());
        elements.push(x);
        for c in choice.iter_mut() {
            *c += 1;
            if *c < s.order() {
                break;
            }
            *c = 0;
        }
    }
    let degree = n * s.degree();
    let group = PermGroup { degree, gens: elements.clone(), elements, index };
    PowerSubgroup::new(n, s.degree(), group)
}

/// If every `proj_{i,j}(G)` is `S^2` then `|G| = |S|^n`; returns whether
/// the hypothesis holds and panics if the conclusion fails.
pub fn verify_pairwise_full(g: &PowerSubgroup, s: &PermGroup) -> bool {
    let full2 = s.order() * s.order();
    for i in 0..g.n {
        for j in i + 1..g.n {
            if g.pair_projection(i, j).order() != full2 {
                return false;
            }
        }
    }
    let expected = s.order().pow(g.n as u32);
    assert_eq!(g.group.order(), expected, "pairwise-full subgroup is not all of S^n");
    true
}

/// Random subdiagonal subgroup of `S^n`: a random partition of the
/// coordinates and random conjugations (by elements of `twist`) as
/// identifications. Returns the group with its block partition.
pub fn random_subdiagonal<R: Rng + ?Sized>(
    s: &PermGroup,
    twist: &PermGroup,
    n: usize,
    rng: &mut R,
) -> (PowerSubgroup, Vec<Vec<usize>>) {
    let mut label: Vec<usize> = Vec::new();
    let mut nblocks = 0;
    for _ in 0..n {
        let b = rng.gen_range(0..=nblocks);
        if b == nblocks {
            nblocks += 1;
        }
        label.push(b);
    }
    let conj: Vec<Perm> = (0..n).map(|_| twist.random_element(rng).clone()).collect();
    let mut tuples = Vec::new();
    for b in 0..nblocks {
        for sg in s.generators() {
            let t: Vec<Perm> = (0..n)
                .map(|i| {
                    if label[i] == b {
                        conj[i].compose(sg).compose(&conj[i].inverse())
                    } else {
                        Perm::identity(s.degree())
                    }
                })
                .collect();
            tuples.push(t);
        }
    }
    let blocks = (0..nblocks).map(|b| (0..n).filter(|&i| label[i] == b).collect()).collect();
    (PowerSubgroup::generated(n, s.degree(), &tuples, DEFAULT_BOUND).expect("within bound"), blocks)
}

/// Input for the subdiagonal decomposition: one `S = g; g; ...` line with
/// generators of `S`, and `gen = g | g | ...` lines, one per generator of
/// `G`, listing its coordinates. `#` starts a comment.
pub fn parse_power_input(text: &str, n: usize) -> Result<(PermGroup, PowerSubgroup), PermError> {
    let mut s_gens: Option<Vec<String>> = None;
    let mut tuples: Vec<Vec<String>> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, val) = line.split_once('=').ok_or_else(|| PermError::Parse(line.into()))?;
        match key.trim() {
            "S" => s_gens = Some(val.split(';').map(|x| x.trim().to_string()).collect()),
            "gen" => tuples.push(val.split('|').map(|x| x.trim().to_string()).collect()),
            _ => return Err(PermError::Parse(line.into())),
        }
    }
    let s_gens = s_gens.ok_or_else(|| PermError::Parse("missing `S =` line".into()))?;
    let degree = |p: &str| {
        p.split(|c: char| !c.is_ascii_digit()).filter_map(|x| x.parse::<usize>().ok()).max().unwrap_or(1)
    };
    let m = s_gens.iter().map(|p| degree(p)).max().unwrap_or(1);
    let parse = |p: &str| Perm::parse(m, p);
    let s = closure(m, &s_gens.iter().map(|p| parse(p)).collect::<Result<Vec<_>, _>>()?, DEFAULT_BOUND)?;
    let mut perms = Vec::new();
    for t in &tuples {
        if t.len() != n {
            return Err(PermError::Parse(format!("expected {n} coordinates, got {}", t.len())));
        }
        perms.push(t.iter().map(|p| parse(p)).collect::<Result<Vec<_>, _>>()?);
    }
    let g = PowerSubgroup::generated(n, m, &perms, DEFAULT_BOUND)?;
    Ok((s, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn small_closures() {
        assert_eq!(closure(4, &[p(4, "(1 2 3 4)"), p(4, "(1 2)")], DEFAULT_BOUND).unwrap().order(), 24);
        assert_eq!(alternating_group(5).order(), 60);
        assert!(closure(5, &[p(5, "(1 2 3 4 5)")], 3).is_err());
    }

    #[test]
    fn cycle_notation() {
        let g = p(5, "(1 2 3)(4,5)");
        assert_eq!(g.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Perm::parse(5, &g.to_string()).unwrap(), g);
        assert!(Perm::parse(3, "(1 4)").is_err());
        assert!(Perm::parse(3, "(1 1)").is_err());
        // Right-to-left composition.
        assert_eq!(p(3, "(1 2)(2 3)"), p(3, "(1 2)").compose(&p(3, "(2 3)")));
    }

    #[test]
    fn transitivity() {
        let a4 = alternating_group(4);
        assert!(a4.is_2transitive() && a4.is_alt());
        let c5 = closure(5, &[p(5, "(1 2 3 4 5)")], DEFAULT_BOUND).unwrap();
        assert!(c5.is_transitive());
        assert!(!c5.is_2transitive());
        assert!(!c5.contains_alt());
        assert!(symmetric_group(5).contains_alt());
    }

    #[test]
    fn simplicity() {
        assert!(alternating_group(5).is_simple_nonabelian());
        assert!(!alternating_group(4).is_simple_nonabelian());
        assert!(!symmetric_group(5).is_simple_nonabelian());
        assert_eq!(symmetric_group(4).derived_subgroup().order(), 12);
    }

    #[test]
    fn decompositions() {
        let s = alternating_group(5);
        let full = PowerSubgroup::generated(
            2,
            5,
            &s.generators()
                .iter()
                .flat_map(|g| [vec![g.clone(), Perm::identity(5)], vec![Perm::identity(5), g.clone()]])
                .collect::<Vec<_>>(),
            DEFAULT_BOUND,
        )
        .unwrap();
        let d = decompose_subdiagonals(&full, &s, DecomposeOptions::default()).unwrap();
        assert_eq!(d.blocks, vec![vec![0], vec![1]]);

        let diag = PowerSubgroup::generated(2, 5, &s.generators().iter().map(|g| vec![g.clone(), g.clone()]).collect::<Vec<_>>(), DEFAULT_BOUND).unwrap();
        let d = decompose_subdiagonals(&diag, &s, DecomposeOptions::default()).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1]]);
        assert!(d.ident[1].iter().enumerate().all(|(a, &b)| a == b));
        assert!(!verify_pairwise_full(&diag, &s));

        let tau = p(5, "(1 2)");
        let twisted = PowerSubgroup::generated(
            2,
            5,
            &s.generators().iter().map(|g| vec![g.clone(), tau.compose(g).compose(&tau)]).collect::<Vec<_>>(),
            DEFAULT_BOUND,
        )
        .unwrap();
        let d = decompose_subdiagonals(&twisted, &s, DecomposeOptions::default()).unwrap();
        assert_eq!(d.blocks, vec![vec![0, 1]]);
        for (a, x) in s.elements().iter().enumerate() {
            assert_eq!(&s.elements()[d.ident[1][a]], &tau.compose(x).compose(&tau));
        }
        assert!(reconstruct(&d, &s, DEFAULT_BOUND).unwrap().group.same_elements(&twisted.group));
    }

    #[test]
    fn round_trip() {
        let s = alternating_group(5);
        let sym = symmetric_group(5);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let n = rng.gen_range(1..=3);
            let (g, blocks) = random_subdiagonal(&s, &sym, n, &mut rng);
            let d = decompose_subdiagonals(&g, &s, DecomposeOptions::default()).unwrap();
            let mut got = d.blocks.clone();
            let mut want = blocks.clone();
            got.sort();
            want.sort();
            assert_eq!(got, want);
            assert!(reconstruct(&d, &s, DEFAULT_BOUND).unwrap().group.same_elements(&g.group));
        }
    }

    #[test]
    fn input_file() {
        let text = "S = (1,2,3); (3,4,5)\ngen = (1 2 3) | (1 2 3)\ngen = (3 4 5) | (3 4 5)\n";
        let (s, g) = parse_power_input(text, 2).unwrap();
        assert_eq!(s.order(), 60);
        assert_eq!(g.group.order(), 60);
    }
}
