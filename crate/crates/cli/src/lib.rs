//! Command-line front end: every verification of `semitree` as a
//! reproducible command with a human or a line-delimited record report.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Once;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use semitree::groupspec::GroupSpec;
use semitree::invariants::Level;
use semitree::tree_core::TreeShape;

pub use report::{Check, Format, Record, Report, SCHEMA};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "SEMITREE_THREADS";

/// Default cap on enumeration sizes.
pub const DEFAULT_BOUND: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "semitree", version, about = "Locally alternating groups on semiregular trees")]
pub struct Cli {
    /// Cap on enumeration sizes (labellings, colorings, group elements).
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: u64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The set of degrees at which 2-transitive groups contain Alt(m).
    Theta {
        #[command(subcommand)]
        command: ThetaCommand,
    },
    /// Invariant profile (c, K, K', f) of one spec.
    Invariants {
        #[arg(long, value_parser = parse_shape, default_value = "6,6")]
        shape: TreeShape,
        #[arg(long)]
        spec: GroupSpec,
        /// Largest k for the alpha sequences.
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Compares computed (c, K') with the table rows over the family.
    TableVerify {
        #[arg(long, default_value_t = 3)]
        max_x: u32,
        #[arg(long, value_parser = parse_shape, default_value = "6,6")]
        shape: TreeShape,
        #[arg(long, default_value_t = 6)]
        kmax: usize,
    },
    /// Number of family members with a given (c, K') profile.
    Count {
        #[arg(long)]
        c0: u8,
        #[arg(long)]
        c1: u8,
        #[arg(long, value_parser = parse_level)]
        k0: Level,
        #[arg(long, value_parser = parse_level)]
        k1: Level,
    },
    /// Compatible pairs with maxima (a, b) against 2^(a ⊞ b).
    Pairs {
        #[arg(long, default_value_t = 4)]
        max: u32,
    },
    /// A diagram in exactly one of two diagram sets.
    Distinguish {
        #[arg(long)]
        spec1: GroupSpec,
        #[arg(long)]
        spec2: GroupSpec,
        #[arg(long, value_parser = parse_shape, default_value = "6,6")]
        shape: TreeShape,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Separates every pair of distinct family members.
    Distinct(FamilyArgs),
    /// Equal invariants against equal diagram sets over the family.
    Complete(FamilyArgs),
    /// The quotient sup / sub in the normalizer.
    Quotient {
        #[arg(long)]
        sub: GroupSpec,
        #[arg(long)]
        sup: GroupSpec,
        #[arg(long, value_parser = parse_shape, default_value = "4,4")]
        shape: TreeShape,
        /// Depth at which inclusion is checked.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Expected class, e.g. C2, C2xC2, C4 or D8.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Relabels a random diagram so that a far half-tree is all e.
    Halftree {
        #[arg(long)]
        spec: GroupSpec,
        /// Depth of the edge-rooted ball; defaults to 3M.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_parser = parse_shape, default_value = "4,4")]
        shape: TreeShape,
        /// Number of random seed diagrams, starting at --seed.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
    },
    /// Subdiagonal decomposition of a subgroup of S^n read from a file.
    Goursat {
        /// The power n.
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        derived_steps: usize,
    },
    /// The finite counterexample on T(4,3,2).
    Counterexample {
        #[command(subcommand)]
        command: CounterexampleCommand,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, default_value_t = 2)]
    pub max_x: u32,
    #[arg(long, value_parser = parse_shape, default_value = "6,6")]
    pub shape: TreeShape,
    /// Largest depth searched.
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum ThetaCommand {
    /// Members up to --max.
    List {
        #[arg(long)]
        max: u64,
    },
    /// |Θ ∩ [1, n]| / n at each n.
    Density {
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000,1000000")]
        n: Vec<u64>,
        /// Open interval the last density must fall in, as lo,hi.
        #[arg(long, value_parser = parse_range)]
        range: Option<(f64, f64)>,
    },
    /// Membership of one integer with its excluding formula.
    Member {
        m: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CounterexampleCommand {
    /// Checks every legal coloring, and the lift to T(4,d1,2) when --d1 is given.
    Verify {
        #[arg(long)]
        d1: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Compiled diagram sets against filtering all labellings.
    Diagrams {
        #[arg(long, value_parser = parse_shape, default_value = "4,4")]
        shape: TreeShape,
        #[arg(long)]
        spec: GroupSpec,
        #[arg(long)]
        depth: usize,
    },
}

fn parse_shape(s: &str) -> Result<TreeShape, String> {
    let (a, b) = s.split_once(',').ok_or("expected d0,d1")?;
    let d = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    TreeShape::new(d(a)?, d(b)?).map_err(|e| e.to_string())
}

fn parse_level(s: &str) -> Result<Level, String> {
    match s {
        "inf" | "∞" => Ok(None),
        _ => s.parse::<usize>().map(Some).map_err(|e| e.to_string()),
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected lo,hi")?;
    let f = |x: &str| x.trim().parse::<f64>().map_err(|e| e.to_string());
    Ok((f(a)?, f(b)?))
}

/// Parameters shared by all commands.
pub(crate) struct Ctx {
    pub bound: u64,
    pub seed: u64,
}

fn init_threads() {
    static INIT: Once = Once::new();
    INIT.call_once(|| {
        if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
            // Fails only when a pool already exists; the existing one is kept.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    });
}

/// Parses `argv` (program name first), runs the command and writes the
/// report file if `--output` was given. Exit code: 0 when every check
/// passes, 1 on a failed check, 2 on a usage or input error.
pub fn run<I, T>(argv: I) -> (i32, Report)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let command = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let mut report = Report { command, ..Default::default() };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            report.raw = Some(e.render().to_string());
            if code != 0 {
                report.error = Some(e.kind().to_string());
            }
            return (code, report);
        }
    };
    init_threads();
    report.format = cli.format;
    report.output = cli.output.clone();
    let ctx = Ctx { bound: cli.bound, seed: cli.seed };
    report.param("bound", cli.bound);
    report.param("seed", cli.seed);
    let start = Instant::now();
    let result = commands::dispatch(&ctx, cli.command, &mut report);
    report.elapsed = start.elapsed();
    if let Err(e) = result {
        report.error = Some(e);
        return (2, report);
    }
    if let Some(path) = &report.output {
        if let Err(e) = std::fs::write(path, report.render()) {
            report.error = Some(format!("cannot write {}: {e}", path.display()));
            return (2, report);
        }
    }
    (if report.passed() { 0 } else { 1 }, report)
}
