//! Witnesses that two specs have different diagram sets, and the
//! complete-invariants comparison.

use std::sync::OnceLock;

use super::alpha::BallCache;
use super::profile::{invariant_profile, InvariantProfile, ProfileError, ProfileOptions};
use super::Diagram;
use crate::gf2::{BitVec, Rref};
use crate::groupspec::{compile, diagram_in_group, GroupSpec, SpecError};

struct SetData {
    rref: Rref,
    /// Union of the supports of the reduced rows: a single `o` at `v` is in
    /// the set iff bit `v` is clear.
    used: BitVec,
}

/// Compiled diagram sets of one spec on vertex-full balls, built lazily per
/// root type and depth.
pub struct DiagramSets {
    spec: GroupSpec,
    levels: Vec<[OnceLock<SetData>; 2]>,
}

impl DiagramSets {
    pub fn new(spec: GroupSpec, budget: usize) -> DiagramSets {
        DiagramSets { spec, levels: (0..=budget).map(|_| [OnceLock::new(), OnceLock::new()]).collect() }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn budget(&self) -> usize {
        self.levels.len() - 1
    }

    fn data(&self, cache: &BallCache, t: u8, k: usize) -> &SetData {
        self.levels[k][t as usize].get_or_init(|| {
            let ball = cache.get(t, k);
            let rref = compile(&self.spec, ball, k).expect("vertex-full ball within budget").rref();
            let mut used = BitVec::zeros(rref.nvars());
            for r in rref.rows() {
                used.or_assign(r);
            }
            SetData { rref, used }
        })
    }

    /// Reduced constraints of the set on `B(v, k)` with `v` of type `t`.
    pub fn rref(&self, cache: &BallCache, t: u8, k: usize) -> &Rref {
        &self.data(cache, t, k).rref
    }

    pub fn contains(&self, cache: &BallCache, t: u8, k: usize, labels: &BitVec) -> bool {
        self.rref(cache, t, k).is_solution(labels)
    }

    /// Whether the two sets agree on both root types at depth `k`.
    pub fn same_at(&self, other: &DiagramSets, cache: &BallCache, k: usize) -> bool {
        (0..2).all(|t| self.rref(cache, t, k).rows() == other.rref(cache, t, k).rows())
    }
}

/// A diagram lying in exactly one of two diagram sets.
#[derive(Debug, Clone)]
pub struct Separation {
    pub root_type: u8,
    pub depth: usize,
    pub diagram: Diagram,
    /// True when the diagram belongs to the first spec's set.
    pub in_first: bool,
}

fn witness(a: &DiagramSets, b: &DiagramSets, cache: &BallCache, t: u8, k: usize) -> Option<(BitVec, bool)> {
    let (da, db) = (a.data(cache, t, k), b.data(cache, t, k));
    // Single-o diagrams first, scanning from the root outwards.
    let mut diff = da.used.clone();
    diff.xor_assign(&db.used);
    if let Some(v) = diff.ones().next() {
        return Some((BitVec::from_indices(diff.len(), [v]), !da.used.get(v)));
    }
    for x in da.rref.nullspace_basis() {
        if !db.rref.is_solution(&x) {
            return Some((x, true));
        }
    }
    for x in db.rref.nullspace_basis() {
        if !da.rref.is_solution(&x) {
            return Some((x, false));
        }
    }
    None
}

/// First depth (and root type) at which the two cached sets differ, with a
/// witness checked against both specs' window definitions.
pub fn separate_sets(a: &DiagramSets, b: &DiagramSets, cache: &BallCache, budget: usize) -> Result<Option<Separation>, SpecError> {
    for k in 0..=budget {
        for t in 0..2u8 {
            let Some((labels, in_first)) = witness(a, b, cache, t, k) else { continue };
            let ball = cache.get(t, k);
            let diagram = Diagram::new(ball, labels, false);
            let ia = diagram_in_group(a.spec(), ball, &diagram)?;
            let ib = diagram_in_group(b.spec(), ball, &diagram)?;
            assert!(ia != ib && ia == in_first, "separating witness failed verification");
            return Ok(Some(Separation { root_type: t, depth: k, diagram, in_first }));
        }
    }
    Ok(None)
}

/// Searches depths `0..=budget` for a diagram in exactly one of the two
/// sets. `None` means the sets agree up to the budget.
pub fn separating_diagram(
    spec1: &GroupSpec,
    spec2: &GroupSpec,
    cache: &BallCache,
    budget: usize,
) -> Result<Option<Separation>, SpecError> {
    let a = DiagramSets::new(spec1.clone(), budget);
    let b = DiagramSets::new(spec2.clone(), budget);
    separate_sets(&a, &b, cache, budget)
}

/// `(equal invariants) == (equal diagram sets at every depth <= depth)`.
pub fn complete_invariants_check(
    spec1: &GroupSpec,
    spec2: &GroupSpec,
    cache: &BallCache,
    depth: usize,
) -> Result<bool, ProfileError> {
    let p1 = invariant_profile(spec1, cache, ProfileOptions::default())?;
    let p2 = invariant_profile(spec2, cache, ProfileOptions::default())?;
    let a = DiagramSets::new(spec1.clone(), depth);
    let b = DiagramSets::new(spec2.clone(), depth);
    Ok(invariants_agree(&p1, &p2, &a, &b, cache))
}

/// The comparison behind [`complete_invariants_check`] on precomputed data.
pub fn invariants_agree(
    p1: &InvariantProfile,
    p2: &InvariantProfile,
    a: &DiagramSets,
    b: &DiagramSets,
    cache: &BallCache,
) -> bool {
    let depth = a.budget().min(b.budget());
    let same_sets = (0..=depth).all(|k| a.same_at(b, cache, k));
    p1.same_invariants(p2) == same_sets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupspec::parse_spec;
    use crate::tree_core::TreeShape;

    fn cache() -> BallCache {
        BallCache::new(TreeShape::new(6, 6).unwrap(), 4)
    }

    #[test]
    fn single_o_at_root() {
        let c = cache();
        let a = parse_spec("G+(X0={2}; X1=empty)").unwrap();
        let b = parse_spec("G+(X0={0,2}; X1=empty)").unwrap();
        let s = separating_diagram(&a, &b, &c, 3).unwrap().unwrap();
        assert_eq!(s.depth, 2);
        assert!(s.in_first);
        assert_eq!(s.diagram.odd_vertices(), vec![0]);
    }

    #[test]
    fn itself() {
        let c = cache();
        let a = parse_spec("Gc*(X0={1}; X1={1})").unwrap();
        assert!(separating_diagram(&a, &a, &c, 3).unwrap().is_none());
    }

    #[test]
    fn plain_vs_starred() {
        let c = cache();
        let a = parse_spec("G+(X0={1}; X1=empty)").unwrap();
        let b = parse_spec("G+(X0=*{1}; X1=empty)").unwrap();
        let s = separating_diagram(&a, &b, &c, 3).unwrap().unwrap();
        assert!(!s.in_first);
    }
}
