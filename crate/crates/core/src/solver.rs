//! The threshold pipeline: reduce, decompose into clusters and tall
//! trapezoids, then evaluate the tree bottom-up.
//!
//! Trapezoids run the diagonal sweep of [`crate::lvtrap`]; clusters fill a
//! small table over their relevant positions, either directly or through the
//! interval recursion with the bounded-difference min-plus kernel.

use crate::band::Band;
use crate::cost::{cap_for, run_cost, Cost};
use crate::error::{Error, Result};
use crate::geometry::{build_decomposition_with, Cluster, DecompTree, Node, Trapezoid};
use crate::lcp::LcpIndex;
use crate::lvtrap::{input_positions, output_positions, process_trapezoid};
use crate::minplus::{BdKernel, BdParams, KernelStats, Matrix, MinPlusKernel, INF};
use crate::profile::HeightProfile;
use crate::reduce::reduce_valleys;
use crate::seq::{pair_cost, ParenSeq, Symbol};
use crate::valiant::{naive_fill, valiant_fill, EntryRule, ValiantStats};
use crate::valleydp::dp_restricted;

/// Clusters with fewer relevant positions than this are filled directly.
pub const NAIVE_BELOW: usize = 64;

pub enum ClusterMode<'a> {
    Naive,
    Valiant {
        kernel: &'a mut dyn MinPlusKernel,
        /// Verify the split accumulator at every recursion step.
        check: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClusterOutput {
    /// Costs over `[b-2k..b] ∪ [c..c+2k]` of the parent trapezoid.
    Band(Band),
    /// `min(D[0, n], k+1)`.
    Root(Cost),
}

#[derive(Debug, Clone)]
pub struct ProcessedCluster {
    pub output: ClusterOutput,
    /// `A[x, y]` over local indices into `Cluster::extended`.
    pub table: Matrix,
    pub valiant: Option<ValiantStats>,
}

/// The cluster recurrence over local indices `0..|E(C)|`.
struct ClusterRule<'a> {
    syms: &'a [Symbol],
    ext: &'a [usize],
    local_m: Vec<usize>,
    cap: i64,
    /// For each local index: last local index `y` such that `(x, y)` lies in
    /// one child's band, with that child's position in `inputs`.
    band_end: Vec<Option<(usize, usize)>>,
    inputs: &'a [&'a Band],
}

impl ClusterRule<'_> {
    fn local(&self, p: usize) -> Option<usize> {
        self.ext.binary_search(&p).ok()
    }
}

impl EntryRule for ClusterRule<'_> {
    fn size(&self) -> usize {
        self.ext.len()
    }

    fn distinguished(&self) -> &[usize] {
        &self.local_m
    }

    fn entry(&self, x: usize, y: usize, a: &Matrix, split: i64) -> i64 {
        let (gi, gj) = (self.ext[x], self.ext[y]);
        if let Some((end, q)) = self.band_end[x] {
            if y <= end {
                return self.inputs[q].get(gi, gj).expect("band covers its own region") as i64;
            }
        }
        if gj <= gi + 1 {
            return run_cost(gi, gj, self.cap as Cost) as i64;
        }
        let mut best = split.min(self.cap);
        if x + 1 < y && self.ext[x + 1] == gi + 1 && self.ext[y - 1] == gj - 1 {
            let pair = pair_cost(self.syms[gi], self.syms[gj - 1]) as i64;
            best = best.min(pair + a.get(x + 1, y - 1));
        }
        for gm in [gi + 1, gi + 2, gj - 2, gj - 1] {
            if gm > gi && gm < gj {
                if let Some(m) = self.local(gm) {
                    best = best.min(a.get(x, m) + a.get(m, y));
                }
            }
        }
        best
    }
}

/// Fills `min(D[i, j], k+1)` for `i <= j` in `E(C)` and extracts the
/// cluster's output. `inputs[q]` is the band produced by the trapezoid
/// `trapezoids[cluster.children[q]]`.
pub fn process_cluster(
    s: &ParenSeq,
    k: usize,
    trapezoids: &[Trapezoid],
    cluster: &Cluster,
    inputs: &[&Band],
    mode: ClusterMode<'_>,
) -> Result<ProcessedCluster> {
    if inputs.len() != cluster.children.len() {
        return Err(Error::Shape(format!(
            "cluster {} has {} children but {} input bands",
            cluster.id,
            cluster.children.len(),
            inputs.len()
        )));
    }
    let ext = &cluster.extended;
    let cap = cap_for(k);
    let mut band_end = vec![None; ext.len()];
    for (q, (&ti, band)) in cluster.children.iter().zip(inputs).enumerate() {
        let expected = output_positions(&trapezoids[ti], k);
        band.check_positions(&expected)?;
        let lo = ext.binary_search(&expected[0]);
        let hi = ext.binary_search(expected.last().unwrap());
        let (Ok(lo), Ok(hi)) = (lo, hi) else {
            return Err(Error::Shape(format!(
                "child band of cluster {} outside E(C)",
                cluster.id
            )));
        };
        if hi - lo + 1 != expected.len() {
            return Err(Error::Shape(format!(
                "child band of cluster {} is not contiguous in E(C)",
                cluster.id
            )));
        }
        for slot in &mut band_end[lo..=hi] {
            // a position shared by two adjacent children keeps the later one
            *slot = Some((hi, q));
        }
    }
    let local_m = cluster
        .midpoints
        .iter()
        .map(|&p| ext.binary_search(&p).expect("midpoints lie in E(C)"))
        .collect();
    let rule = ClusterRule {
        syms: s.symbols(),
        ext,
        local_m,
        cap: cap as i64,
        band_end,
        inputs,
    };
    let (table, valiant) = match mode {
        ClusterMode::Naive => (naive_fill(&rule), None),
        ClusterMode::Valiant { kernel, check } => {
            let (t, st) = valiant_fill(&rule, kernel, check)?;
            (t, Some(st))
        }
    };
    let get = |i: usize, j: usize| -> Cost {
        let (x, y) = (rule.local(i).expect("in E(C)"), rule.local(j).expect("in E(C)"));
        table.get(x, y).min(cap as i64) as Cost
    };
    let output = match cluster.parent {
        Some(ti) => {
            let positions = input_positions(&trapezoids[ti], k);
            ClusterOutput::Band(Band::from_fn(positions, cap, get))
        }
        None if ext.is_empty() => ClusterOutput::Root(0),
        None => ClusterOutput::Root(get(ext[0], *ext.last().unwrap())),
    };
    debug_assert!(table.entries().iter().all(|&v| v <= cap as i64 || v >= INF));
    Ok(ProcessedCluster { output, table, valiant })
}

/// How clusters are filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterStrategy {
    Naive,
    /// Interval recursion with the BD kernel for clusters with at least
    /// `naive_below` relevant positions.
    Valiant {
        params: BdParams,
        naive_below: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub clusters: ClusterStrategy,
    /// Extra internal consistency checks.
    pub check: bool,
}

impl SolveOptions {
    pub fn k5() -> Self {
        SolveOptions {
            clusters: ClusterStrategy::Naive,
            check: cfg!(debug_assertions),
        }
    }

    pub fn fast(params: BdParams) -> Self {
        SolveOptions {
            clusters: ClusterStrategy::Valiant {
                params,
                naive_below: NAIVE_BELOW,
            },
            check: cfg!(debug_assertions),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Length after cancelling matched pairs.
    pub reduced_len: usize,
    /// Set when the answer was decided before building the tree.
    pub rejected_early: bool,
    pub clusters: usize,
    pub trapezoids: usize,
    /// `Σ |E(C)|`.
    pub extended_total: usize,
    /// `Σ |M(C)|`.
    pub midpoints_total: usize,
    pub trapezoid_ops: u64,
    pub valiant_clusters: usize,
    pub kernel: KernelStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Solution {
    pub distance: Cost,
    pub stats: SolveStats,
}

/// Heights must stay within `2k` below both ends when the distance is at
/// most `k`.
fn heights_allow(profile: &HeightProfile, k: usize) -> bool {
    let n = profile.len();
    let floor = profile.height(0).max(profile.height(n)) - 2 * k as i64;
    profile.heights.iter().all(|&h| h >= floor)
}

/// `min(ed(s), k+1)`.
pub fn solve(s: &ParenSeq, k: usize, opts: &SolveOptions) -> Result<Solution> {
    let cap = cap_for(k);
    let mut stats = SolveStats::default();
    let reduced = reduce_valleys(s, k);
    let r = reduced.seq;
    stats.reduced_len = r.len();
    let profile = HeightProfile::new(&r);
    if reduced.rejected || !heights_allow(&profile, k) {
        stats.rejected_early = true;
        return Ok(Solution { distance: cap, stats });
    }
    if r.is_empty() {
        return Ok(Solution { distance: 0, stats });
    }
    let m = profile.midpoint_set();
    let tree = build_decomposition_with(&r, k, &m);
    let idx = LcpIndex::new(&r);
    stats.clusters = tree.clusters.len();
    stats.trapezoids = tree.trapezoids.len();
    stats.extended_total = tree.extended_total();
    stats.midpoints_total = tree.clusters.iter().map(|c| c.midpoints.len()).sum();

    let mut kernel = match opts.clusters {
        ClusterStrategy::Valiant { params, .. } => Some(BdKernel::new(params)),
        ClusterStrategy::Naive => None,
    };
    let distance = evaluate(&r, k, &tree, &idx, opts, kernel.as_mut(), &mut stats)?;
    if let Some(kernel) = &kernel {
        stats.kernel = kernel.stats();
    }
    Ok(Solution { distance, stats })
}

fn evaluate(
    r: &ParenSeq,
    k: usize,
    tree: &DecompTree,
    idx: &LcpIndex,
    opts: &SolveOptions,
    mut kernel: Option<&mut BdKernel>,
    stats: &mut SolveStats,
) -> Result<Cost> {
    let mut trapezoid_bands: Vec<Option<Band>> = vec![None; tree.trapezoids.len()];
    let mut cluster_bands: Vec<Option<Band>> = vec![None; tree.clusters.len()];
    for node in tree.postorder() {
        match node {
            Node::Trapezoid(t) => {
                let child = tree.trapezoid_child[t];
                let input = cluster_bands[child]
                    .take()
                    .ok_or_else(|| Error::Invariant(format!("cluster {child} not processed")))?;
                let out = process_trapezoid(&tree.trapezoids[t], k, &input, idx)?;
                stats.trapezoid_ops += out.ops;
                trapezoid_bands[t] = Some(out.band);
            }
            Node::Cluster(c) => {
                let cluster = &tree.clusters[c];
                let inputs: Vec<&Band> = cluster
                    .children
                    .iter()
                    .map(|&t| {
                        trapezoid_bands[t]
                            .as_ref()
                            .ok_or(Error::Invariant(format!("trapezoid {t} not processed")))
                    })
                    .collect::<Result<_>>()?;
                let mode = match (opts.clusters, kernel.as_deref_mut()) {
                    (ClusterStrategy::Valiant { naive_below, .. }, Some(kernel))
                        if cluster.extended.len() >= naive_below =>
                    {
                        stats.valiant_clusters += 1;
                        ClusterMode::Valiant {
                            kernel,
                            check: opts.check,
                        }
                    }
                    _ => ClusterMode::Naive,
                };
                let done = process_cluster(r, k, &tree.trapezoids, cluster, &inputs, mode)?;
                for &t in &cluster.children {
                    trapezoid_bands[t] = None;
                }
                match done.output {
                    ClusterOutput::Band(b) => cluster_bands[c] = Some(b),
                    ClusterOutput::Root(v) => return Ok(v),
                }
            }
        }
    }
    Err(Error::Invariant("tree walk ended without reaching the root".into()))
}

/// `O(n + k⁵)`: clusters filled directly.
pub fn solve_k5(s: &ParenSeq, k: usize) -> Result<Cost> {
    Ok(solve(s, k, &SolveOptions::k5())?.distance)
}

/// Clusters filled through the interval recursion and the BD kernel.
pub fn solve_fast(s: &ParenSeq, k: usize, params: BdParams) -> Result<Cost> {
    Ok(solve(s, k, &SolveOptions::fast(params))?.distance)
}

/// `O(n² k)`: reduce, then the restricted table fill.
pub fn solve_quadratic(s: &ParenSeq, k: usize) -> Cost {
    let reduced = reduce_valleys(s, k);
    if reduced.rejected {
        return cap_for(k);
    }
    dp_restricted(&reduced.seq, k).total()
}
