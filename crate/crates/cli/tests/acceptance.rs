//! The twelve acceptance criteria, each run at its tolerance and time limit.
//! Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semitree::counterexample::G0;
use semitree::groupspec::GroupSpec;
use semitree::invariants::{count_by_profile, enumerate_family, table_formula, Level};
use semitree::permgrp::{
    alternating_group, closure, decompose_subdiagonals, random_subdiagonal, reconstruct, symmetric_group,
    verify_pairwise_full, DecomposeOptions, Perm, PowerSubgroup, DEFAULT_BOUND,
};
use semitree_cli::{run, Report};

struct Outcome {
    ok: bool,
    detail: String,
}

fn cli(args: &[&str]) -> (i32, Report) {
    let argv: Vec<&str> = std::iter::once("semitree").chain(args.iter().copied()).collect();
    run(argv)
}

/// Joins the non-empty parts with "; ".
fn detail(parts: &[String]) -> String {
    parts.iter().filter(|p| !p.is_empty()).cloned().collect::<Vec<_>>().join("; ")
}

fn failed_checks(r: &Report) -> String {
    let names: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    match &r.error {
        Some(e) => format!("error: {e}"),
        None => names.join("; "),
    }
}

fn c1() -> Outcome {
    let (code, r) = cli(&["theta", "list", "--max", "58"]);
    let got: Vec<u64> = r.records_of("theta").map(|x| x.get("m").unwrap().parse().unwrap()).collect();
    let want = vec![34, 35, 39, 45, 46, 51, 52, 55, 56, 58];
    Outcome { ok: code == 0 && got == want, detail: format!("{got:?}") }
}

fn c2() -> Outcome {
    let (code, r) = cli(&["theta", "density", "--n", "1000,10000,100000,1000000", "--range", "0.90,0.95"]);
    let values: Vec<String> =
        r.records_of("density").map(|x| format!("{}={}", x.get("n").unwrap(), x.get("fraction").unwrap())).collect();
    Outcome { ok: code == 0, detail: detail(&[values.join(" "), failed_checks(&r)]) }
}

fn table_run() -> (i32, Report) {
    cli(&["table-verify", "--max-x", "3", "--shape", "6,6", "--kmax", "6", "--format", "records"])
}

fn c3() -> Outcome {
    let (code, r) = table_run();
    let specs = r.records_of("spec").filter(|x| x.get("row").is_some()).count();
    let rows = r.records_of("row").count();
    Outcome { ok: code == 0, detail: detail(&[format!("{specs} specs over {rows} rows"), failed_checks(&r)]) }
}

fn c4() -> Outcome {
    let (code, r) = cli(&["pairs", "--max", "4"]);
    let mut ok = code == 0;
    let levels: [Level; 6] = [None, Some(0), Some(1), Some(2), Some(3), Some(4)];
    let mut profiles = 0;
    for c0 in 0..=3u8 {
        for c1 in 0..=3u8 {
            for &k0 in &levels {
                for &k1 in &levels {
                    let f = table_formula(c0, c1, k0, k1);
                    ok &= count_by_profile(c0, c1, k0, k1) as u64 == f;
                    profiles += (f > 0) as usize;
                }
            }
        }
    }
    // Profiles shared by two rows, through the CLI.
    for (c0, c1, k0, k1) in [("1", "3", "2", "1"), ("3", "1", "1", "2"), ("1", "3", "3", "1"), ("1", "1", "1", "1")] {
        let (code, r) = cli(&["count", "--c0", c0, "--c1", c1, "--k0", k0, "--k1", k1]);
        ok &= code == 0 && r.records_of("count").all(|x| x.get("count") == x.get("formula"));
    }
    Outcome { ok, detail: detail(&[format!("{profiles} non-empty profiles"), failed_checks(&r)]) }
}

fn c5() -> Outcome {
    let (code, r) = cli(&["distinct", "--max-x", "2", "--shape", "6,6", "--depth", "3"]);
    let deepest = r.records_of("separation").map(|x| x.get("depth").unwrap().parse::<usize>().unwrap()).max();
    Outcome { ok: code == 0 && deepest <= Some(3), detail: format!("{}; deepest {deepest:?}", r.notes.join(" ")) }
}

const REPRESENTATIVES: [&str; 10] = [
    "G+(X0=empty; X1=empty)",
    "G+(X0={0}; X1={0})",
    "G+(X0={1}; X1=empty)",
    "G+(X0=*{1}; X1=empty)",
    "G+(X0={0,2}; X1={1})",
    "G+(X0=*{2}; X1=*{1,2})",
    "Gc*(X0={1}; X1={2})",
    "G(X={1})",
    "G*(X={0,2})",
    "Gprime(X={1})",
];

fn c6() -> Outcome {
    let mut ok = true;
    let mut bad = Vec::new();
    for s in REPRESENTATIVES {
        for k in ["0", "1", "2"] {
            let (code, r) = cli(&["oracle", "diagrams", "--shape", "4,4", "--spec", s, "--depth", k]);
            if code != 0 {
                ok = false;
                bad.push(format!("{s} k={k}: {}", failed_checks(&r)));
            }
        }
    }
    Outcome { ok, detail: if bad.is_empty() { "10 specs, k = 0..2".into() } else { bad.join("; ") } }
}

#[derive(Clone, Copy, PartialEq)]
enum Sym {
    Fin(usize),
    Star(usize),
    Inf,
}

fn parse_alpha(s: &str) -> Vec<Sym> {
    s.split(',')
        .map(|a| match a {
            "inf" => Sym::Inf,
            _ if a.ends_with('*') => Sym::Star(a.trim_end_matches('*').parse().unwrap()),
            _ => Sym::Fin(a.parse().unwrap()),
        })
        .collect()
}

/// Which of the four shapes the sequence fits, each tested on its own.
fn shapes_matched(seq: &[Sym]) -> usize {
    let first = seq.iter().position(|&a| a != Sym::Inf);
    let s0 = first.is_none();
    let tail_is = |k: usize, v: Sym| seq[k + 1..].iter().all(|&a| a == v);
    let s1 = first.is_some_and(|k| seq[k] == Sym::Fin(k) && tail_is(k, Sym::Fin(k)));
    let s2 = first.is_some_and(|k| k >= 1 && seq[k] == Sym::Fin(k - 1) && tail_is(k, Sym::Fin(k - 1)));
    let s3 = first.is_some_and(|k| k >= 1 && seq[k] == Sym::Star(k - 1) && tail_is(k, Sym::Fin(k - 1)));
    [s0, s1, s2, s3].iter().filter(|&&b| b).count()
}

fn rank(a: Sym) -> usize {
    match a {
        Sym::Fin(r) => 2 * r,
        Sym::Star(r) => 2 * r + 1,
        Sym::Inf => usize::MAX,
    }
}

fn c7() -> Outcome {
    let (_, r) = table_run();
    let (mut seqs, mut ok) = (0, true);
    for rec in r.records_of("spec") {
        for key in ["alpha0", "alpha1"] {
            let Some(a) = rec.get(key) else {
                ok = false;
                continue;
            };
            let seq = parse_alpha(a);
            seqs += 1;
            ok &= seq.len() == 7 && shapes_matched(&seq) == 1;
            ok &= seq.windows(2).all(|w| rank(w[0]) >= rank(w[1]));
        }
    }
    Outcome { ok: ok && seqs > 0, detail: format!("{seqs} sequences with k <= 6") }
}

fn c8() -> Outcome {
    let cases = [
        ("G+(X0={1}; X1=empty)", "G+(X0=*{1}; X1=empty)", "C2"),
        ("G+(X0={1}; X1={2})", "G+(X0=*{1}; X1=*{2})", "C2xC2"),
        ("G+(X0={1}; X1={1})", "G*(X={1})", "D8"),
        ("G+(X0={1}; X1={1})", "Gc(X={1})", "C2xC2"),
        ("G+(X0={1}; X1={1})", "Gprime(X={1})", "C4"),
    ];
    let mut ok = true;
    let mut got = Vec::new();
    for (sub, sup, want) in cases {
        let (code, _) = cli(&["quotient", "--sub", sub, "--sup", sup, "--shape", "4,4", "--expect", want]);
        ok &= code == 0;
        got.push(format!("{want}:{}", if code == 0 { "ok" } else { "no" }));
    }
    Outcome { ok, detail: got.join(" ") }
}

fn random_pairwise_full(rng: &mut ChaCha8Rng) -> Option<PowerSubgroup> {
    let s = alternating_group(5);
    let gens: Vec<Perm> = (0..2)
        .map(|_| {
            let t: Vec<Perm> = (0..3).map(|_| s.random_element(rng).clone()).collect();
            Perm::concat(&t.iter().collect::<Vec<_>>())
        })
        .collect();
    let g = PowerSubgroup::new(3, 5, closure(15, &gens, DEFAULT_BOUND).ok()?).ok()?;
    verify_pairwise_full(&g, &s).then_some(g)
}

fn c9() -> Outcome {
    let s = alternating_group(5);
    let twist = symmetric_group(5);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut trips = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let (g, blocks) = random_subdiagonal(&s, &twist, n, &mut rng);
        let Ok(d) = decompose_subdiagonals(&g, &s, DecomposeOptions::default()) else { continue };
        let Ok(back) = reconstruct(&d, &s, DEFAULT_BOUND) else { continue };
        trips += (d.blocks == blocks && back.group.same_elements(&g.group)) as usize;
    }
    let mut full = 0;
    for _ in 0..400 {
        if full == 20 {
            break;
        }
        if let Some(g) = random_pairwise_full(&mut rng) {
            full += (g.group.order() == 216_000) as usize;
        }
    }
    let input = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/a5_twisted.txt");
    let (code, _) = cli(&["goursat", "--degree", "3", "--input", input.to_str().unwrap()]);
    Outcome {
        ok: trips == 100 && full == 20 && code == 0,
        detail: format!("{trips}/100 round trips, {full}/20 pairwise-full of order 216000"),
    }
}

fn c10() -> Outcome {
    let (code4, r4) = cli(&["counterexample", "verify", "--d1", "4"]);
    let (code5, r5) = cli(&["counterexample", "verify", "--d1", "5"]);
    let headline = r4.notes.first().cloned().unwrap_or_default();
    let g0 = G0::standard();
    let root = g0.root_action();
    let ok = code4 == 0
        && code5 == 0
        && headline == "1152 colorings, 0 containments"
        && r4.records_of("coloring").count() == 1152
        && g0.order() == 24
        && root.is_alt()
        && root.is_2transitive();
    Outcome {
        ok,
        detail: detail(&[headline, format!("|G0| = {}", g0.order()), failed_checks(&r4), failed_checks(&r5)]),
    }
}

fn c11() -> Outcome {
    let specs: Vec<GroupSpec> = enumerate_family(2)
        .into_iter()
        .filter(|s| matches!(s, GroupSpec::TypePreserving(a, b) if !a.is_starred() && !b.is_starred()))
        .collect();
    let mut bad = Vec::new();
    for s in &specs {
        let text = s.to_string();
        let (code, r) = cli(&["halftree", "--spec", &text, "--shape", "4,4", "--seeds", "50", "--seed", "0"]);
        if code != 0 {
            bad.push(format!("{text}: {}", failed_checks(&r)));
        }
    }
    Outcome { ok: bad.is_empty(), detail: detail(&[format!("{} specs x 50 seeds", specs.len()), bad.join("; ")]) }
}

fn c12() -> Outcome {
    let (code, r) = cli(&["complete", "--max-x", "2", "--shape", "6,6", "--depth", "4"]);
    Outcome { ok: code == 0, detail: r.notes.join(" ") }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 12] = [
        ("theta list", c1, 1),
        ("theta density", c2, 30),
        ("table rows", c3, 60),
        ("counting identity", c4, 10),
        ("distinctness", c5, 120),
        ("oracle equivalence", c6, 120),
        ("alpha shapes", c7, 30),
        ("normalizer quotients", c8, 5),
        ("goursat", c9, 120),
        ("counterexample", c10, 60),
        ("half-tree", c11, 60),
        ("complete invariants", c12, 120),
    ];
    let mut failures = 0;
    for (n, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let t = start.elapsed();
        let in_time = t < Duration::from_secs(*limit);
        let ok = out.ok && in_time;
        failures += !ok as usize;
        let timing = if in_time { String::new() } else { format!(" over the {limit} s limit") };
        println!(
            "{} criterion {} ({name}): {:.2}s{timing}; {}",
            if ok { "PASS" } else { "FAIL" },
            n + 1,
            t.as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {} passed, {failures} failed", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
