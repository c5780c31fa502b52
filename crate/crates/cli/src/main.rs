use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dyckdist::codec::{format, parse, Encoding};
use dyckdist::gen::generate;
use dyckdist::geometry::build_decomposition;
use dyckdist::minplus::{BdParams, Strategy};
use dyckdist::oracle::{dp_cubic, exhaustive_distance};
use dyckdist::reduce::reduce_valleys;
use dyckdist::solver::{solve, solve_quadratic, SolveOptions, SolveStats};
use dyckdist::{Cost, Error, ParenSeq};

mod bench;
mod selftest;

#[derive(Parser, Debug)]
#[command(name = "dyckdist", version, about = "Dyck edit distance under a threshold")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print min(ed(S), k+1) for one sequence
    Compute(ComputeArgs),
    /// Emit a random Dyck sequence with planted edits
    Gen(GenArgs),
    /// Cross-check every algorithm and invariant on random instances
    Selftest(SelftestArgs),
    /// Time algorithms over a size grid and write CSV rows
    Bench(bench::BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Algo {
    Exhaustive,
    Cubic,
    Valley,
    K5,
    Fast,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Exhaustive => "exhaustive",
            Algo::Cubic => "cubic",
            Algo::Valley => "valley",
            Algo::K5 => "k5",
            Algo::Fast => "fast",
        }
    }
}

/// Kernel parameters shared by `compute` and `bench`.
#[derive(Args, Debug, Clone)]
pub struct KernelArgs {
    /// Seed for pivot sampling
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Block size; defaults to ceil(n^(1/4)) per product
    #[arg(long)]
    pub delta: Option<usize>,
    /// Sampled rounds; defaults to ceil(n^(1/4)) per product
    #[arg(long)]
    pub rho: Option<usize>,
    #[arg(long, default_value = "greedy", value_parser = Strategy::from_str)]
    pub strategy: Strategy,
}

impl KernelArgs {
    pub fn params(&self) -> BdParams {
        BdParams {
            delta: self.delta,
            rho: self.rho,
            strategy: self.strategy,
            seed: self.seed,
        }
    }
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long, value_enum, default_value = "k5")]
    algo: Algo,
    /// Threshold: distances above k are reported as k+1
    #[arg(long)]
    k: usize,
    /// Input file, or - for stdin
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, default_value = "ascii", value_parser = Encoding::from_str)]
    format: Encoding,
    #[command(flatten)]
    kernel: KernelArgs,
    /// Print one CSV row with counters instead of the bare distance
    #[arg(long)]
    csv: bool,
    /// Run the internal consistency checks even in release builds
    #[arg(long)]
    check: bool,
    /// Print the decomposition tree of the reduced sequence to stderr
    #[arg(long)]
    dump_tree: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    types: u32,
    #[arg(long, default_value_t = 0)]
    edits: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "ascii", value_parser = Encoding::from_str)]
    format: Encoding,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 40)]
    max_n: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// What one run of an algorithm produced.
pub struct Run {
    pub distance: Cost,
    pub stats: SolveStats,
    pub seconds: f64,
}

pub fn run_algo(algo: Algo, s: &ParenSeq, k: usize, params: BdParams, check: bool) -> Result<Run> {
    let start = Instant::now();
    let mut stats = SolveStats::default();
    let distance = match algo {
        Algo::Exhaustive => exhaustive_distance(s, k)? as Cost,
        Algo::Cubic => dp_cubic(s, k).total(),
        Algo::Valley => solve_quadratic(s, k),
        Algo::K5 | Algo::Fast => {
            let mut opts = if algo == Algo::K5 {
                SolveOptions::k5()
            } else {
                SolveOptions::fast(params)
            };
            opts.check |= check;
            let sol = solve(s, k, &opts)?;
            stats = sol.stats;
            sol.distance
        }
    };
    Ok(Run {
        distance,
        stats,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn compute(args: ComputeArgs) -> Result<()> {
    let text = read_input(&args.input)?;
    let s = parse(&text, args.format)?;
    if args.dump_tree {
        let r = reduce_valleys(&s, args.k);
        if r.rejected {
            eprintln!("rejected by the valley count, no tree");
        } else {
            eprint!("{}", build_decomposition(&r.seq, args.k).dump());
        }
    }
    let run = run_algo(args.algo, &s, args.k, args.kernel.params(), args.check)?;
    if args.csv {
        let row = bench::Row::new(args.algo, s.len(), args.k, args.kernel.seed, &run);
        bench::write_rows(io::stdout().lock(), &[row])?;
    } else {
        println!("{}", run.distance);
    }
    // timing goes to stderr so stdout stays reproducible
    eprintln!(
        "algo={} n={} k={} time={:.3}ms",
        args.algo.name(),
        s.len(),
        args.k,
        run.seconds * 1e3
    );
    Ok(())
}

fn gen(args: GenArgs) -> Result<()> {
    if args.types == 0 {
        bail!("--types must be at least 1");
    }
    let g = generate(args.n, args.types, args.edits, args.seed);
    let text = format(&g.seq, args.format)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    eprintln!("edits={} (upper bound on the distance)", g.edits);
    Ok(())
}

/// 1 for usage and input errors, 2 when an internal check fails.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Invariant(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Gen(a) => gen(a),
        Command::Selftest(a) => selftest::run(a.max_n, a.trials, a.seed),
        Command::Bench(a) => bench::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
