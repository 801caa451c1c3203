use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semitree::counterexample::{verify_freedom, verify_lift, verify_no_alt_coloring, G0};
use semitree::groupspec::{parse_spec, sample_diagram, symbolic_quotient, GroupSpec, QuotientCheck, SmallGroup};
use semitree::invariants::{
    boxplus, compatible, compatible_pair_count, complete_invariants_check, count_by_profile, enumerate_family,
    half_tree_labelling, invariant_profile, nonempty_sets, separating_diagram, table_formula, table_profile,
    BallCache, ProfileOptions,
};
use semitree::permgrp::{
    alternating_group, closure, decompose_subdiagonals, random_subdiagonal, reconstruct, symmetric_group,
    verify_pairwise_full, DecomposeOptions, Perm, PowerSubgroup, DEFAULT_BOUND,
};
use semitree::theta::{theta_density, theta_list};
use semitree::tree_core::{Ball, BallKind, TreeShape};

fn shape(a: usize, b: usize) -> TreeShape {
    TreeShape::new(a, b).unwrap()
}

#[test]
fn theta_regression() {
    assert_eq!(theta_list(58).unwrap(), vec![34, 35, 39, 45, 46, 51, 52, 55, 56, 58]);
    let counts: Vec<u64> =
        [1_000, 10_000, 100_000, 1_000_000].iter().map(|&n| theta_density(n).unwrap().count).collect();
    assert_eq!(counts, vec![590, 7384, 80479, 842281]);
}

#[test]
fn compatible_pairs_by_maxima() {
    let sets = nonempty_sets(4);
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            let n = compatible_pair_count(a, b);
            assert_eq!(n as u64, 1 << boxplus(a as u64, b as u64), "a={a} b={b}");
            let direct = sets
                .iter()
                .filter(|x| *x.last().unwrap() == a)
                .flat_map(|x| sets.iter().filter(|y| *y.last().unwrap() == b).map(move |y| (x, y)))
                .filter(|(x, y)| compatible(x, y))
                .count();
            assert_eq!(direct, n);
        }
    }
}

#[test]
fn count_by_profile_matches_formula() {
    let levels = [None, Some(0), Some(1), Some(2), Some(3)];
    let mut nonzero = 0;
    for c0 in 0..=3u8 {
        for c1 in 0..=3u8 {
            for &k0 in &levels {
                for &k1 in &levels {
                    let f = table_formula(c0, c1, k0, k1);
                    assert_eq!(count_by_profile(c0, c1, k0, k1) as u64, f, "({c0},{c1},{k0:?},{k1:?})");
                    nonzero += (f > 0) as usize;
                }
            }
        }
    }
    assert!(nonzero > 30);
    assert_eq!(count_by_profile(1, 1, Some(1), Some(1)), 4);
    // The two orders of (1, 3) and (3, 1) are both counted.
    assert_eq!(table_formula(1, 3, Some(2), Some(1)), 2 * (1 << boxplus(2, 1)));
}

#[test]
fn profiles_match_table_rows_small() {
    let cache = BallCache::new(shape(6, 6), 6);
    let opts = ProfileOptions { kmax: Some(5), with_f: false };
    for s in enumerate_family(2) {
        let Some(row) = table_profile(&s) else { continue };
        let p = invariant_profile(&s, &cache, opts).unwrap();
        assert_eq!(p.numeric(), (row.c[0], row.c[1], row.k_prime[0], row.k_prime[1]), "{s} row {}", row.row);
    }
}

#[test]
fn family_separated_and_complete_max1() {
    let fam = enumerate_family(1);
    let cache = BallCache::new(shape(6, 6), 4);
    for (i, a) in fam.iter().enumerate() {
        for b in &fam[i + 1..] {
            let s = separating_diagram(a, b, &cache, 3).unwrap();
            assert!(s.is_some_and(|s| s.depth <= 3), "{a} vs {b}");
            assert!(complete_invariants_check(a, b, &cache, 3).unwrap(), "{a} vs {b}");
        }
    }
}

#[test]
fn quotient_classes() {
    let check = QuotientCheck { shape: shape(4, 4), depth: 3 };
    let q = |a: &str, b: &str| symbolic_quotient(&parse_spec(a).unwrap(), &parse_spec(b).unwrap(), check).unwrap();
    assert_eq!(q("G+(X0={2}; X1=empty)", "G+(X0=*{2}; X1=empty)").class, SmallGroup::C2);
    assert_eq!(q("G+(X0={0,2}; X1={1})", "G+(X0=*{0,2}; X1=*{1})").class, SmallGroup::C2xC2);
    assert_eq!(q("G+(X0={2}; X1={2})", "G*(X={2})").class, SmallGroup::D8);
    assert_eq!(q("G+(X0={2}; X1={2})", "Gc(X={2})").class, SmallGroup::C2xC2);
    assert_eq!(q("G+(X0={2}; X1={2})", "Gprime(X={2})").class, SmallGroup::C4);
}

#[test]
fn goursat_round_trips() {
    let s = alternating_group(5);
    let twist = symmetric_group(5);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let (g, blocks) = random_subdiagonal(&s, &twist, n, &mut rng);
        let d = decompose_subdiagonals(&g, &s, DecomposeOptions::default()).unwrap();
        assert_eq!(d.blocks, blocks);
        let back = reconstruct(&d, &s, DEFAULT_BOUND).unwrap();
        assert!(back.group.same_elements(&g.group));
        assert_eq!(g.group.order(), 60usize.pow(blocks.len() as u32));
    }
}

#[test]
fn goursat_after_derived_steps() {
    let s = alternating_group(5);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (g, blocks) = random_subdiagonal(&s, &symmetric_group(5), 3, &mut rng);
    let d = decompose_subdiagonals(&g, &s, DecomposeOptions { derived_steps: 1 }).unwrap();
    assert_eq!(d.blocks, blocks);
}

fn random_pairwise_full(rng: &mut ChaCha8Rng) -> Option<PowerSubgroup> {
    let s = alternating_group(5);
    let pick = |rng: &mut ChaCha8Rng| -> Vec<Perm> { (0..3).map(|_| s.random_element(rng).clone()).collect() };
    let tuples = vec![pick(rng), pick(rng)];
    let gens: Vec<Perm> = tuples.iter().map(|t| Perm::concat(&t.iter().collect::<Vec<_>>())).collect();
    let g = closure(15, &gens, DEFAULT_BOUND).ok()?;
    let g = PowerSubgroup::new(3, 5, g).ok()?;
    verify_pairwise_full(&g, &s).then_some(g)
}

#[test]
fn pairwise_full_is_full() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut found = 0;
    for _ in 0..200 {
        if let Some(g) = random_pairwise_full(&mut rng) {
            assert_eq!(g.group.order(), 216_000);
            found += 1;
            if found == 5 {
                break;
            }
        }
    }
    assert_eq!(found, 5);
}

#[test]
fn counterexample_small_ball() {
    let g0 = G0::standard();
    assert_eq!(g0.order(), 24);
    assert_eq!(g0.fixator_order(), 2);
    assert!(g0.root_action().is_alt());
    let r = verify_no_alt_coloring().unwrap();
    assert_eq!(r.colorings_checked, 1152);
    assert!(r.all_fail && r.all_witnesses_verified());
    assert!(r.records.iter().all(|c| c.alt_order == 12));
}

#[test]
fn counterexample_lifts() {
    assert!(verify_lift(4).unwrap());
    assert!(verify_freedom(4).unwrap());
    assert!(verify_freedom(5).unwrap());
}

fn s_family(max: u32) -> Vec<GroupSpec> {
    enumerate_family(max)
        .into_iter()
        .filter(|s| matches!(s, GroupSpec::TypePreserving(a, b) if !a.is_starred() && !b.is_starred()))
        .collect()
}

#[test]
fn half_trees_small() {
    let specs = s_family(2);
    assert!(specs.len() >= 20);
    for spec in specs.iter().step_by(3) {
        let m = match spec {
            GroupSpec::TypePreserving(a, b) => a.max().unwrap_or(0).max(b.max().unwrap_or(0)) as usize + 1,
            _ => unreachable!(),
        };
        let ball = Ball::build(shape(4, 4), 0, 3 * m, BallKind::EdgeRooted).unwrap();
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = sample_diagram(spec, &ball, false, &mut rng).unwrap();
            let h = half_tree_labelling(spec, &ball, &d).unwrap();
            let sm = h.s_m();
            assert!((0..ball.len()).all(|v| ball.distance(v, sm) > m || !h.diagram.is_odd(v)), "{spec}");
        }
    }
}
