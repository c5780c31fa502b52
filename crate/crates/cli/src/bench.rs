//! Timing grid. Every grid point gets its own derived seed, points run in
//! parallel, rows are sorted before writing.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use dyckdist::gen::{derive_seed, generate};
use rayon::prelude::*;

use crate::{run_algo, Algo, KernelArgs, Run};

/// Bumped whenever columns change.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["k5", "fast"])]
    algos: Vec<Algo>,
    #[arg(long, value_delimiter = ',', default_values_t = [1024usize, 4096, 16384])]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 8])]
    ks: Vec<usize>,
    /// Instances per (n, k)
    #[arg(long, default_value_t = 3)]
    reps: u64,
    #[arg(long, default_value_t = 2)]
    types: u32,
    /// Planted edits; defaults to k
    #[arg(long)]
    edits: Option<usize>,
    #[command(flatten)]
    kernel: KernelArgs,
    /// Output file; stdout when absent
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    algo: Algo,
    n: usize,
    k: usize,
    seed: u64,
    distance: u32,
    wall_ms: f64,
    reduced_len: usize,
    clusters: usize,
    trapezoids: usize,
    extended_total: usize,
    midpoints_total: usize,
    trapezoid_ops: u64,
    kernel_calls: u64,
    kernel_triples: u64,
    triples_covered: u64,
    blocks_interesting: u64,
}

const HEADER: [&str; 17] = [
    "schema",
    "algo",
    "n",
    "k",
    "seed",
    "distance",
    "wall_ms",
    "reduced_len",
    "clusters",
    "trapezoids",
    "extended_total",
    "midpoints_total",
    "trapezoid_ops",
    "kernel_calls",
    "kernel_triples",
    "triples_covered",
    "blocks_interesting",
];

impl Row {
    pub fn new(algo: Algo, n: usize, k: usize, seed: u64, run: &Run) -> Self {
        let st = &run.stats;
        Row {
            algo,
            n,
            k,
            seed,
            distance: run.distance,
            wall_ms: run.seconds * 1e3,
            reduced_len: st.reduced_len,
            clusters: st.clusters,
            trapezoids: st.trapezoids,
            extended_total: st.extended_total,
            midpoints_total: st.midpoints_total,
            trapezoid_ops: st.trapezoid_ops,
            kernel_calls: st.kernel.calls,
            kernel_triples: st.kernel.triples,
            triples_covered: st.kernel.covered,
            blocks_interesting: st.kernel.interesting,
        }
    }

    fn record(&self) -> Vec<String> {
        vec![
            SCHEMA_VERSION.to_string(),
            self.algo.name().to_string(),
            self.n.to_string(),
            self.k.to_string(),
            self.seed.to_string(),
            self.distance.to_string(),
            format!("{:.4}", self.wall_ms),
            self.reduced_len.to_string(),
            self.clusters.to_string(),
            self.trapezoids.to_string(),
            self.extended_total.to_string(),
            self.midpoints_total.to_string(),
            self.trapezoid_ops.to_string(),
            self.kernel_calls.to_string(),
            self.kernel_triples.to_string(),
            self.triples_covered.to_string(),
            self.blocks_interesting.to_string(),
        ]
    }
}

pub fn write_rows<W: Write>(out: W, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(args: BenchArgs) -> Result<()> {
    if args.algos.contains(&Algo::Exhaustive) && args.sizes.iter().any(|&n| n > dyckdist::oracle::EXHAUSTIVE_LIMIT) {
        bail!(
            "exhaustive search only runs up to n = {}",
            dyckdist::oracle::EXHAUSTIVE_LIMIT
        );
    }
    let mut grid = Vec::new();
    for &n in &args.sizes {
        for &k in &args.ks {
            for rep in 0..args.reps {
                let point = (n as u64) << 24 ^ (k as u64) << 8 ^ rep;
                grid.push((n, k, derive_seed(args.kernel.seed, point)));
            }
        }
    }
    let params = args.kernel.params();
    let mut rows = grid
        .par_iter()
        .map(|&(n, k, seed)| {
            let s = generate(n, args.types, args.edits.unwrap_or(k), seed).seq;
            args.algos
                .iter()
                .map(|&algo| {
                    let run = run_algo(algo, &s, k, dyckdist::minplus::BdParams { seed, ..params }, false)?;
                    Ok(Row::new(algo, n, k, seed, &run))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    rows.sort_by_key(|r| (r.algo, r.n, r.k, r.seed));
    match &args.csv {
        Some(path) => write_rows(File::create(path)?, &rows),
        None => write_rows(io::stdout().lock(), &rows),
    }
}
