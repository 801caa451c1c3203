use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semitree::coloring::{canonical_coloring, enumerate_legal_colorings, LegalColoring};
use semitree::gf2::{span_rref, BitVec, LinearSystem, Rref};
use semitree::groupspec::{
    compile, diagram_in_group, extend_diagram, parse_spec, render_spec, sample_diagram, GroupSpec, SignedSet,
};
use semitree::invariants::{boxplus, diagram_of, enumerate_family, Diagram};
use semitree::permgrp::{alternating_group, Perm};
use semitree::theta::{is_in_theta, ThetaSieve};
use semitree::tree_core::{Ball, BallKind, TreeShape};

fn bitvec(n: usize) -> impl Strategy<Value = BitVec> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|b| BitVec::from_bools(&b))
}

fn signed_set() -> impl Strategy<Value = SignedSet> {
    let set = proptest::collection::btree_set(0u32..4, 1..4).prop_map(|s| s.into_iter().collect::<Vec<_>>());
    prop_oneof![
        Just(SignedSet::Empty),
        set.clone().prop_map(SignedSet::Plain),
        set.prop_map(SignedSet::Starred),
    ]
}

fn spec() -> impl Strategy<Value = GroupSpec> {
    let set = proptest::collection::btree_set(0u32..3, 1..3).prop_map(|s| s.into_iter().collect::<Vec<_>>());
    prop_oneof![
        (signed_set(), signed_set()).prop_map(|(a, b)| GroupSpec::plus(a, b).unwrap()),
        (set.clone(), set.clone()).prop_map(|(a, b)| GroupSpec::CombinedStar(a, b)),
        set.clone().prop_map(GroupSpec::RegularFull),
        set.clone().prop_map(GroupSpec::RegularFullStar),
        set.clone().prop_map(GroupSpec::RegularCombined),
        set.prop_map(GroupSpec::RegularPrime),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_canonical(rows in proptest::collection::vec(bitvec(12), 0..10), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let a = Rref::new(12, rows.clone());
        let mut shuffled = rows.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        // Adding a combination of rows changes nothing.
        if rows.len() >= 2 {
            let mut x = rows[0].clone();
            x.xor_assign(&rows[1]);
            shuffled.push(x);
        }
        let b = Rref::new(12, shuffled);
        prop_assert_eq!(a.rows(), b.rows());
        prop_assert_eq!(a.rank() + a.nullity(), 12);
    }

    #[test]
    fn nullspace_solves_system(rows in proptest::collection::vec(bitvec(10), 0..8)) {
        let mut sys = LinearSystem::new(10);
        for r in &rows {
            sys.push(r.clone());
        }
        let rref = sys.rref();
        let basis = rref.nullspace_basis();
        prop_assert_eq!(basis.len(), rref.nullity());
        for v in &basis {
            prop_assert!(sys.is_solution(v));
        }
        prop_assert_eq!(span_rref(10, basis).rank(), rref.nullity());
    }

    #[test]
    fn spec_text_round_trips(s in spec()) {
        prop_assert_eq!(parse_spec(&render_spec(&s)).unwrap(), s);
    }

    #[test]
    fn sampled_diagrams_are_members(s in spec(), seed in any::<u64>(), t in 0u8..2) {
        let ball = Ball::vertex_full(TreeShape::new(4, 4).unwrap(), t, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = sample_diagram(&s, &ball, false, &mut rng).unwrap();
        prop_assert!(diagram_in_group(&s, &ball, &d).unwrap());
        prop_assert!(compile(&s, &ball, 3).unwrap().is_member(&d));
    }

    #[test]
    fn extensions_restrict_back(s in spec(), seed in any::<u64>()) {
        let shape = TreeShape::new(4, 4).unwrap();
        let ball = Ball::build(shape, 0, 2, BallKind::EdgeRooted).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = sample_diagram(&s, &ball, false, &mut rng).unwrap();
        let (big, e) = extend_diagram(&s, &ball, &d, seed).unwrap();
        prop_assert!(diagram_in_group(&s, &big, &e).unwrap());
        prop_assert_eq!(e.restrict(&ball), d);
    }

    #[test]
    fn diagrams_of_realised_automorphisms(seed in any::<u64>(), t in 0u8..2) {
        // d(g^2) = d(g) o g + d(g), and the identity has the all-e diagram.
        let ball = Ball::vertex_full(TreeShape::new(3, 4).unwrap(), t, 3);
        let i = canonical_coloring(&ball);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = ball.random_automorphism(&mut rng);
        let g2 = ball.compose(&g, &g).unwrap();
        let d = diagram_of(&ball, &i, &g).unwrap();
        let d2 = diagram_of(&ball, &i, &g2).unwrap();
        for v in 0..d.labels().len() {
            prop_assert_eq!(d2.is_odd(v), d.is_odd(g.apply(v)) ^ d.is_odd(v));
        }
        let sub = Ball::vertex_full(ball.shape(), t, 2);
        prop_assert_eq!(diagram_of(&ball, &i, &ball.identity()).unwrap(), Diagram::all_e(&sub));
    }

    #[test]
    fn coloring_text_round_trips(index in 0u128..1152) {
        let ball = semitree::counterexample::t432();
        let it = enumerate_legal_colorings(&ball, 1 << 20).unwrap();
        let c = it.nth_coloring(index);
        prop_assert_eq!(LegalColoring::from_text(&ball, &c.to_text(&ball)).unwrap(), c);
    }

    #[test]
    fn perm_cycles_round_trip(images in Just((0u16..7).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Perm::from_images(images).unwrap();
        prop_assert_eq!(Perm::parse(7, &p.to_string()).unwrap(), p.clone());
        prop_assert!(p.compose(&p.inverse()).is_identity());
        let cycle_parity = p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0;
        prop_assert_eq!(p.is_even(), cycle_parity);
    }

    #[test]
    fn alt5_is_closed(a in 0usize..60, b in 0usize..60) {
        let g = alternating_group(5);
        let (x, y) = (&g.elements()[a], &g.elements()[b]);
        prop_assert!(g.contains(&x.compose(y)));
        prop_assert!(g.contains(&x.inverse()));
        prop_assert!(x.is_even());
    }

    #[test]
    fn boxplus_is_symmetric(a in 0u64..50, b in 0u64..50) {
        prop_assert_eq!(boxplus(a, b), boxplus(b, a));
        prop_assert!(boxplus(a, b) <= a + b);
        prop_assert_eq!(boxplus(a, a), 2 * a);
    }

    #[test]
    fn theta_witnesses_certify(m in 1u64..20_000) {
        let (inside, why) = is_in_theta(m).unwrap();
        prop_assert_eq!(inside, why.is_none());
        if let Some(e) = why {
            prop_assert!(e.certifies(m));
        }
    }
}

#[test]
fn theta_sieve_agrees_with_search() {
    let s = ThetaSieve::new(20_000).unwrap();
    for m in (1..=20_000).step_by(7) {
        assert_eq!(s.contains(m), is_in_theta(m).unwrap().0);
    }
}

#[test]
fn family_is_duplicate_free() {
    let f = enumerate_family(2);
    let set: std::collections::HashSet<&GroupSpec> = f.iter().collect();
    assert_eq!(set.len(), f.len());
    assert_eq!(f.len(), 204);
}
