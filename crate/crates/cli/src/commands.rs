use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use semitree::counterexample::{verify_freedom, verify_lift_with, verify_no_alt_coloring, G0};
use semitree::gf2::span_rref;
use semitree::groupspec::{
    brute_force_members, compile, diagram_in_group, sample_diagram, symbolic_quotient, GroupSpec, QuotientCheck,
};
use semitree::invariants::{
    boxplus, check_c2_relations, compatible_pair_count, count_by_profile, enumerate_family, half_tree_labelling,
    invariant_profile, invariants_agree, separate_sets, separating_diagram, table_formula, table_profile,
    AlphaSymbol, BallCache, DiagramSets, InvariantProfile, Level, ProfileOptions, Separation,
};
use semitree::permgrp::{decompose_subdiagonals, parse_power_input, reconstruct, DecomposeOptions};
use semitree::theta::{is_in_theta, ThetaSieve};
use semitree::tree_core::{Ball, BallKind, TreeShape};

use crate::report::{Record, Report};
use crate::{Command, CounterexampleCommand, Ctx, FamilyArgs, OracleCommand, ThetaCommand};

type Res = Result<(), String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn level(l: Level) -> String {
    l.map_or("inf".into(), |k| k.to_string())
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub(crate) fn dispatch(ctx: &Ctx, cmd: Command, r: &mut Report) -> Res {
    match cmd {
        Command::Theta { command } => theta(command, r),
        Command::Invariants { shape, spec, kmax } => invariants(shape, &spec, kmax, r),
        Command::TableVerify { max_x, shape, kmax } => table_verify(max_x, shape, kmax, r),
        Command::Count { c0, c1, k0, k1 } => count(c0, c1, k0, k1, r),
        Command::Pairs { max } => pairs(max, r),
        Command::Distinguish { spec1, spec2, shape, depth } => distinguish(&spec1, &spec2, shape, depth, r),
        Command::Distinct(a) => distinct(&a, r),
        Command::Complete(a) => complete(&a, r),
        Command::Quotient { sub, sup, shape, depth, expect } => quotient(&sub, &sup, shape, depth, expect, r),
        Command::Halftree { spec, depth, shape, seeds } => halftree(ctx, &spec, depth, shape, seeds, r),
        Command::Goursat { degree, input, derived_steps } => goursat(ctx, degree, &input, derived_steps, r),
        Command::Counterexample { command: CounterexampleCommand::Verify { d1 } } => counterexample(ctx, d1, r),
        Command::Oracle { command: OracleCommand::Diagrams { shape, spec, depth } } => {
            oracle_diagrams(ctx, shape, &spec, depth, r)
        }
    }
}

fn theta(cmd: ThetaCommand, r: &mut Report) -> Res {
    match cmd {
        ThetaCommand::List { max } => {
            r.param("max", max);
            let sieve = ThetaSieve::new(max).map_err(err)?;
            let list = sieve.list();
            r.note(join(&list, ", "));
            for &m in &list {
                r.push(Record::new("theta").field("m", m));
            }
            // The closed-form search is quadratic; cross-check a prefix.
            let upto = max.min(5000);
            let agree = (1..=upto).all(|m| is_in_theta(m).map(|(x, _)| x) == Ok(sieve.contains(m)));
            r.check(format!("sieve agrees with closed-form search up to {upto}"), agree);
        }
        ThetaCommand::Density { n, range } => {
            r.param("n", join(&n, ","));
            let top = *n.iter().max().ok_or("no n given")?;
            let sieve = ThetaSieve::new(top).map_err(err)?;
            let mut values = Vec::new();
            for &x in &n {
                if x == 0 {
                    return Err("n must be positive".into());
                }
                let d = sieve.density(x);
                r.push(Record::new("density").field("n", x).field("count", d.count).field("fraction", d).field(
                    "value",
                    format!("{:.6}", d.value()),
                ));
                values.push(d.value());
            }
            r.check("density strictly increasing", values.windows(2).all(|w| w[0] < w[1]));
            if let Some((lo, hi)) = range {
                let last = *values.last().unwrap();
                r.check(format!("density({}) in ({lo}, {hi})", n.last().unwrap()), lo < last && last < hi);
            }
        }
        ThetaCommand::Member { m } => {
            r.param("m", m);
            let (inside, why) = is_in_theta(m).map_err(err)?;
            let mut rec = Record::new("member").field("m", m).field("in_theta", inside);
            if let Some(e) = why {
                rec = rec.field("excluded_by", e);
                r.check("exclusion evaluates to m", e.certifies(m));
            }
            r.note(if inside { format!("{m} is in Θ") } else { format!("{m} is not in Θ") });
            r.push(rec);
        }
    }
    Ok(())
}

fn profile_record(spec: &GroupSpec, p: &InvariantProfile) -> Record {
    let mut rec = Record::new("profile").field("spec", spec);
    for line in p.to_record().lines() {
        if let Some((k, v)) = line.split_once('=') {
            rec = rec.field(k, v);
        }
    }
    rec
}

fn invariants(shape: TreeShape, spec: &GroupSpec, kmax: Option<usize>, r: &mut Report) -> Res {
    r.param("shape", shape);
    r.param("spec", spec);
    let kmax = kmax.unwrap_or(spec.layout().max_radius() + 2);
    let cache = BallCache::new(shape, kmax + 1);
    let p = invariant_profile(spec, &cache, ProfileOptions { kmax: Some(kmax), with_f: true }).map_err(err)?;
    r.push(profile_record(spec, &p));
    if let Some(row) = table_profile(spec) {
        let want = (row.c[0], row.c[1], row.k_prime[0], row.k_prime[1]);
        r.note(format!("table row {}", row.row));
        r.check(format!("(c, K') matches table row {}", row.row), p.numeric() == want);
    }
    if p.c == [2, 2] && p.k[0] == p.k[1] {
        r.check("c = 2 descriptor relations", check_c2_relations(&p).map_err(err)?);
    }
    Ok(())
}

fn non_increasing(seq: &[AlphaSymbol]) -> bool {
    seq.windows(2).all(|w| w[0] >= w[1])
}

fn table_verify(max_x: u32, shape: TreeShape, kmax: usize, r: &mut Report) -> Res {
    r.param("max_x", max_x);
    r.param("shape", shape);
    r.param("kmax", kmax);
    let cache = BallCache::new(shape, kmax + 1);
    let family = enumerate_family(max_x);
    let opts = ProfileOptions { kmax: Some(kmax), with_f: false };
    let results: Vec<_> = family.par_iter().map(|s| (s, invariant_profile(s, &cache, opts))).collect();
    let (mut matched, mut shaped, mut monotone) = (true, true, true);
    let mut per_row: BTreeMap<u8, (usize, usize)> = BTreeMap::new();
    for (spec, res) in results {
        let row = table_profile(spec);
        let mut rec = Record::new("spec").field("spec", spec);
        if let Some(row) = row {
            rec = rec.field("row", row.row).field(
                "expected",
                format!("{},{},{},{}", row.c[0], row.c[1], level(row.k_prime[0]), level(row.k_prime[1])),
            );
        }
        match res {
            Ok(p) => {
                let (c0, c1, k0, k1) = p.numeric();
                rec = rec
                    .field("computed", format!("{c0},{c1},{},{}", level(k0), level(k1)))
                    .field("alpha0", join(&p.alphas[0], ","))
                    .field("alpha1", join(&p.alphas[1], ","));
                monotone &= p.alphas.iter().all(|a| non_increasing(a));
                if let Some(row) = row {
                    let ok = p.numeric() == (row.c[0], row.c[1], row.k_prime[0], row.k_prime[1]);
                    let e = per_row.entry(row.row).or_default();
                    e.0 += 1;
                    e.1 += ok as usize;
                    matched &= ok;
                    rec = rec.field("ok", ok);
                }
            }
            Err(e) => {
                shaped = false;
                matched &= row.is_none();
                rec = rec.field("error", e);
            }
        }
        r.push(rec);
    }
    for (row, (n, ok)) in &per_row {
        r.push(Record::new("row").field("row", row).field("specs", n).field("matching", ok));
    }
    r.note(format!("{} specs with max X <= {max_x} at {shape}", family.len()));
    r.check("every alpha sequence fits a shape", shaped);
    r.check("alpha sequences are non-increasing", monotone);
    r.check("computed (c, K') equals the table row", matched);
    r.check("all 12 rows instantiated", (1..=12).all(|k| per_row.contains_key(&k)));
    Ok(())
}

fn count(c0: u8, c1: u8, k0: Level, k1: Level, r: &mut Report) -> Res {
    r.param("profile", format!("{c0},{c1},{},{}", level(k0), level(k1)));
    let n = count_by_profile(c0, c1, k0, k1);
    let f = table_formula(c0, c1, k0, k1);
    r.note(n.to_string());
    r.push(Record::new("count").field("count", n).field("formula", f));
    r.check("enumerated count equals the table formula", n as u64 == f);
    Ok(())
}

fn pairs(max: u32, r: &mut Report) -> Res {
    r.param("max", max);
    let mut ok = true;
    for a in 0..=max {
        for b in 0..=max {
            let n = compatible_pair_count(a, b);
            let want = 1u64 << boxplus(a as u64, b as u64);
            ok &= n as u64 == want;
            r.push(Record::new("pairs").field("a", a).field("b", b).field("count", n).field("formula", want));
        }
    }
    r.check("compatible pairs with maxima (a, b) number 2^(a ⊞ b)", ok);
    Ok(())
}

fn separation_record(ball: &Ball, a: &GroupSpec, b: &GroupSpec, s: &Separation) -> Record {
    let odd: Vec<String> = s.diagram.odd_vertices().iter().map(|&v| ball.address(v).to_string()).collect();
    Record::new("separation")
        .field("spec1", a)
        .field("spec2", b)
        .field("root_type", s.root_type)
        .field("depth", s.depth)
        .field("in", if s.in_first { "spec1" } else { "spec2" })
        .field("odd", if odd.is_empty() { "-".into() } else { odd.join(" ") })
}

fn distinguish(a: &GroupSpec, b: &GroupSpec, shape: TreeShape, depth: usize, r: &mut Report) -> Res {
    r.param("spec1", a);
    r.param("spec2", b);
    r.param("shape", shape);
    r.param("depth", depth);
    let cache = BallCache::new(shape, depth);
    match separating_diagram(a, b, &cache, depth).map_err(err)? {
        Some(s) => {
            let ball = cache.get(s.root_type, s.depth);
            r.note(format!("separated at depth {} (root type {})", s.depth, s.root_type));
            r.push(separation_record(ball, a, b, &s));
            r.check("separating diagram found", true);
        }
        None => {
            r.note(format!("diagram sets agree up to depth {depth}"));
            r.check("separating diagram found", a == b);
        }
    }
    Ok(())
}

fn family_setup(a: &FamilyArgs, default_depth: usize, r: &mut Report) -> (Vec<GroupSpec>, usize) {
    let depth = a.depth.unwrap_or(default_depth);
    r.param("max_x", a.max_x);
    r.param("shape", a.shape);
    r.param("depth", depth);
    (enumerate_family(a.max_x), depth)
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn distinct(a: &FamilyArgs, r: &mut Report) -> Res {
    let (family, depth) = family_setup(a, 3, r);
    let cache = BallCache::new(a.shape, depth);
    let sets: Vec<DiagramSets> = family.iter().map(|s| DiagramSets::new(s.clone(), depth)).collect();
    let pairs = all_pairs(family.len());
    let found: Vec<Option<Separation>> = pairs
        .par_iter()
        .map(|&(i, j)| separate_sets(&sets[i], &sets[j], &cache, depth))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut by_depth: BTreeMap<usize, usize> = BTreeMap::new();
    let mut missing = 0;
    for (&(i, j), s) in pairs.iter().zip(&found) {
        match s {
            Some(s) => {
                *by_depth.entry(s.depth).or_default() += 1;
                r.push(separation_record(cache.get(s.root_type, s.depth), &family[i], &family[j], s));
            }
            None => {
                missing += 1;
                r.push(Record::new("unseparated").field("spec1", &family[i]).field("spec2", &family[j]));
            }
        }
    }
    for (d, n) in by_depth {
        r.push(Record::new("depth").field("depth", d).field("pairs", n));
    }
    r.note(format!("{} specs, {} pairs, {missing} unseparated", family.len(), pairs.len()));
    r.check(format!("every pair separated at depth <= {depth}"), missing == 0);
    Ok(())
}

fn complete(a: &FamilyArgs, r: &mut Report) -> Res {
    let (family, depth) = family_setup(a, 4, r);
    let kmax = a.max_x as usize + 2;
    let cache = BallCache::new(a.shape, depth.max(kmax + 1));
    let profiles: Vec<InvariantProfile> = family
        .par_iter()
        .map(|s| invariant_profile(s, &cache, ProfileOptions::default()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let sets: Vec<DiagramSets> = family.iter().map(|s| DiagramSets::new(s.clone(), depth)).collect();
    let pairs = all_pairs(family.len());
    let verdict: Vec<(bool, bool, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let same_inv = profiles[i].same_invariants(&profiles[j]);
            let same_sets = (0..=depth).all(|k| sets[i].same_at(&sets[j], &cache, k));
            (same_inv, same_sets, invariants_agree(&profiles[i], &profiles[j], &sets[i], &sets[j], &cache))
        })
        .collect();
    let (mut bad, mut equal_inv) = (0, 0);
    for (&(i, j), &(inv, sets_eq, agree)) in pairs.iter().zip(&verdict) {
        equal_inv += inv as usize;
        if !agree || inv != sets_eq {
            bad += 1;
            r.push(
                Record::new("mismatch")
                    .field("spec1", &family[i])
                    .field("spec2", &family[j])
                    .field("same_invariants", inv)
                    .field("same_sets", sets_eq),
            );
        }
    }
    r.note(format!(
        "{} specs, {} pairs, {equal_inv} with equal invariants, {bad} mismatches",
        family.len(),
        pairs.len()
    ));
    r.check(format!("equal invariants iff equal diagram sets at depths <= {depth}"), bad == 0);
    Ok(())
}

fn quotient(
    sub: &GroupSpec,
    sup: &GroupSpec,
    shape: TreeShape,
    depth: usize,
    expect: Option<String>,
    r: &mut Report,
) -> Res {
    r.param("sub", sub);
    r.param("sup", sup);
    r.param("shape", shape);
    r.param("depth", depth);
    let q = symbolic_quotient(sub, sup, QuotientCheck { shape, depth }).map_err(err)?;
    r.note(format!("{sup} / {sub} = {} (order {})", q.class, q.order()));
    for (a, c) in q.cosets.iter().enumerate() {
        r.push(
            Record::new("coset")
                .field("index", a)
                .field("p0", c.p0 as u8)
                .field("p1", c.p1 as u8)
                .field("swap", c.swap as u8)
                .field("products", join(&q.table[a], " ")),
        );
    }
    if let Some(e) = expect {
        r.check(format!("quotient is {e}"), q.class.to_string() == e);
    }
    Ok(())
}

fn halftree(ctx: &Ctx, spec: &GroupSpec, depth: Option<usize>, shape: TreeShape, seeds: u64, r: &mut Report) -> Res {
    let m = match spec {
        GroupSpec::TypePreserving(y0, y1) if !y0.is_starred() && !y1.is_starred() => {
            y0.max().unwrap_or(0).max(y1.max().unwrap_or(0)) as usize + 1
        }
        _ => return Err(format!("half-tree labelling needs a spec without stars, got {spec}")),
    };
    let depth = depth.unwrap_or(3 * m);
    r.param("spec", spec);
    r.param("shape", shape);
    r.param("depth", depth);
    r.param("seeds", seeds);
    let ball = Ball::build(shape, 0, depth, BallKind::EdgeRooted).map_err(err)?;
    let (mut windows_ok, mut ball_e, mut built) = (true, true, true);
    for seed in ctx.seed..ctx.seed + seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = sample_diagram(spec, &ball, false, &mut rng).map_err(err)?;
        match half_tree_labelling(spec, &ball, &d) {
            Ok(h) => {
                let sm = h.s_m();
                let w = diagram_in_group(spec, &ball, &h.diagram).map_err(err)?;
                let e = (0..ball.len()).all(|v| ball.distance(v, sm) > h.m || !h.diagram.is_odd(v));
                windows_ok &= w;
                ball_e &= e;
                r.push(
                    Record::new("halftree")
                        .field("seed", seed)
                        .field("M", h.m)
                        .field("s_M", ball.address(sm))
                        .field("odd_labels", h.diagram.odd_vertices().len())
                        .field("windows", w)
                        .field("ball_all_e", e),
                );
            }
            Err(e) => {
                built = false;
                r.push(Record::new("halftree").field("seed", seed).field("error", e));
            }
        }
    }
    r.check("construction succeeded for every seed", built);
    r.check("every contained window is satisfied", windows_ok);
    r.check("B(s_M, M) is all e", ball_e);
    Ok(())
}

fn goursat(ctx: &Ctx, degree: usize, input: &std::path::Path, derived_steps: usize, r: &mut Report) -> Res {
    r.param("degree", degree);
    r.param("input", input.display());
    let text = std::fs::read_to_string(input).map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let (s, g) = parse_power_input(&text, degree).map_err(err)?;
    let d = decompose_subdiagonals(&g, &s, DecomposeOptions { derived_steps }).map_err(err)?;
    let target = (0..derived_steps).fold(g.clone(), |h, _| h.derived());
    let rebuilt = reconstruct(&d, &s, ctx.bound as usize).map_err(err)?;
    for (b, block) in d.blocks.iter().enumerate() {
        let members: Vec<usize> = block.iter().map(|i| i + 1).collect();
        r.push(Record::new("block").field("index", b).field("coordinates", join(&members, " ")));
    }
    let os = s.order();
    let pairwise = (0..g.n).all(|i| (i + 1..g.n).all(|j| target.pair_projection(i, j).order() == os * os));
    let full = os.checked_pow(g.n as u32) == Some(target.group.order());
    r.note(format!(
        "|S| = {os}, |G| = {}, {} blocks, pairwise full: {pairwise}, full: {full}",
        target.group.order(),
        d.blocks.len()
    ));
    r.check("reconstruction equals the input group", rebuilt.group.same_elements(&target.group));
    r.check("pairwise full implies full", !pairwise || full);
    Ok(())
}

fn counterexample(ctx: &Ctx, d1: Option<usize>, r: &mut Report) -> Res {
    let g0 = G0::standard();
    let rep = verify_no_alt_coloring().map_err(err)?;
    let containments = rep.records.iter().filter(|c| c.intersection_order == c.alt_order).count();
    r.note(format!("{} colorings, {containments} containments", rep.colorings_checked));
    for c in &rep.records {
        let text = c.coloring.to_text(&g0.ball);
        let text: Vec<&str> = text.lines().map(str::trim).collect();
        r.push(
            Record::new("coloring")
                .field("index", c.index)
                .field("coloring", text.join(","))
                .field("alt_order", c.alt_order)
                .field("in_g0", c.intersection_order)
                .field("witness", c.witness.as_ref().map_or("-".into(), |w| w.to_string()))
                .field("verified", c.witness_verified),
        );
    }
    let root = g0.root_action();
    r.note(format!(
        "|G0| = {}, |Fix B(v0,1)| = {}, root action order {}",
        g0.order(),
        g0.fixator_order(),
        root.order()
    ));
    r.check("no coloring has Alt inside G0", rep.all_fail && containments == 0);
    r.check("every witness verified", rep.all_witnesses_verified());
    r.check("|G0| = 24", g0.order() == 24);
    r.check("root action is Alt(4)", root.is_alt());
    r.check("root action is 2-transitive", root.is_2transitive());
    if let Some(d1) = d1 {
        r.param("d1", d1);
        let lift = verify_lift_with(d1, 200_000, 2_000, ctx.seed).map_err(err)?;
        r.push(
            Record::new("lift")
                .field("d1", d1)
                .field("colorings", lift.colorings_checked)
                .field("exhaustive", lift.exhaustive)
                .field("parity_classes", lift.classes_checked)
                .field("holds", lift.holds),
        );
        r.check(format!("lift to T(4,{d1},2) has no Alt inside the preimage"), lift.holds);
        r.check(format!("preimage is free at depth 2 for d1 = {d1}"), verify_freedom(d1).map_err(err)?);
    }
    Ok(())
}

fn oracle_diagrams(ctx: &Ctx, shape: TreeShape, spec: &GroupSpec, depth: usize, r: &mut Report) -> Res {
    r.param("shape", shape);
    r.param("spec", spec);
    r.param("depth", depth);
    let (mut equal, mut projects) = (true, true);
    for t in 0..2u8 {
        let ball = Ball::vertex_full(shape, t, depth);
        if ball.len() >= 64 || (1u64 << ball.len()) > ctx.bound {
            return Err(format!("2^{} labellings exceed the bound {}", ball.len(), ctx.bound));
        }
        let brute = brute_force_members(spec, &ball).map_err(err)?;
        let sys = compile(spec, &ball, depth).map_err(err)?;
        let dim = sys.dimension();
        let all_solutions = brute.iter().all(|x| sys.system.is_solution(x));
        let eq = all_solutions && brute.len() == 1usize << dim;
        let n = ball.len();
        let big = Ball::vertex_full(shape, t, depth + 1);
        let up = compile(spec, &big, depth + 1).map_err(err)?;
        let proj = span_rref(n, up.rref().nullspace_basis().iter().map(|v| v.truncated(n)).collect());
        let here = span_rref(n, sys.rref().nullspace_basis());
        let pr = proj.rows() == here.rows();
        equal &= eq;
        projects &= pr;
        r.push(
            Record::new("oracle")
                .field("root_type", t)
                .field("vertices", n)
                .field("brute_force", brute.len())
                .field("compiled", format!("2^{dim}"))
                .field("equal", eq)
                .field("projection_equal", pr),
        );
    }
    r.check("compiled set equals brute force", equal);
    r.check(format!("projection of depth {} equals depth {depth}", depth + 1), projects);
    Ok(())
}
