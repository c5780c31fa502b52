//! Min-plus product of a column-BD matrix by a row-BD matrix.
//!
//! Three phases: exact products at block corners give `C̃` within `2Δ` of
//! `C`; sampled rounds shift `A` and `B` around a pivot so that entries near a
//! relevant triple become small, and multiply only those; a final sweep finds
//! every block-level triple no round could have covered and relaxes it
//! directly. The output is exact whatever pivots were sampled.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::bitmat::{boolean_product, BitMatrix};
use super::matrix::{check_inner, is_inf, Matrix, INF};
use super::small::minplus_small_entries;
use crate::error::{Error, Result};
use crate::gen::rng_for;

/// A matrix together with the bounded-difference directions it satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BdMatrix {
    m: Matrix,
    column_bd: bool,
    row_bd: bool,
}

impl BdMatrix {
    /// Fails if a claimed direction does not hold.
    pub fn new(m: Matrix, column_bd: bool, row_bd: bool) -> Result<Self> {
        if column_bd {
            if let Some((row, col)) = m.column_bd_violation() {
                return Err(Error::NotBoundedDifference {
                    direction: "column",
                    row,
                    col,
                });
            }
        }
        if row_bd {
            if let Some((row, col)) = m.row_bd_violation() {
                return Err(Error::NotBoundedDifference {
                    direction: "row",
                    row,
                    col,
                });
            }
        }
        Ok(BdMatrix { m, column_bd, row_bd })
    }

    pub fn column(m: Matrix) -> Result<Self> {
        Self::new(m, true, false)
    }

    pub fn row(m: Matrix) -> Result<Self> {
        Self::new(m, false, true)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix {
        self.m
    }

    pub fn is_column_bd(&self) -> bool {
        self.column_bd
    }

    pub fn is_row_bd(&self) -> bool {
        self.row_bd
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Random,
    /// Pick the pivot that newly covers the most block-level triples.
    #[default]
    Greedy,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Strategy::Random),
            "greedy" => Ok(Strategy::Greedy),
            other => Err(Error::InvalidParameter(format!("unknown strategy {other:?}"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Random => "random",
            Strategy::Greedy => "greedy",
        })
    }
}

/// Block size, round count, pivot strategy and seed. Unset sizes default to
/// `ceil(n^(1/4))` for the larger outer dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BdParams {
    pub delta: Option<usize>,
    pub rho: Option<usize>,
    pub strategy: Strategy,
    pub seed: u64,
}

impl BdParams {
    pub fn resolve(&self, n: usize) -> (usize, usize) {
        let fallback = quartic_root_ceil(n).max(1);
        (self.delta.unwrap_or(fallback).max(1), self.rho.unwrap_or(fallback))
    }
}

fn quartic_root_ceil(n: usize) -> usize {
    let mut r = 0usize;
    while r.pow(4) < n {
        r += 1;
    }
    r
}

/// `C̃`: exact products at block corners, constant over each `Δ × Δ` block.
///
/// Block `x` covers rows `xΔ .. (x+1)Δ`; its corner is the last row, clamped
/// to the matrix (equivalent to padding with copies of the last row).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockApprox {
    delta: usize,
    rows: usize,
    cols: usize,
    corners: Matrix,
}

impl BlockApprox {
    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn row_blocks(&self) -> usize {
        self.corners.rows()
    }

    pub fn col_blocks(&self) -> usize {
        self.corners.cols()
    }

    pub fn corner_row(&self, x: usize) -> usize {
        ((x + 1) * self.delta - 1).min(self.rows - 1)
    }

    pub fn corner_col(&self, y: usize) -> usize {
        ((y + 1) * self.delta - 1).min(self.cols - 1)
    }

    /// `C̃[i, j]`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.corners.get(i / self.delta, j / self.delta)
    }

    /// Exact `C` at the corner of block `(x, y)`.
    #[inline]
    pub fn block(&self, x: usize, y: usize) -> i64 {
        self.corners.get(x, y)
    }

    /// `C̃` expanded to full size.
    pub fn expand(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j))
    }
}

fn check_operands(a: &BdMatrix, b: &BdMatrix) -> Result<()> {
    check_inner(a.matrix(), b.matrix())?;
    if !a.is_column_bd() || !b.is_row_bd() {
        return Err(Error::InvalidParameter(
            "left operand must be column-BD and right operand row-BD".into(),
        ));
    }
    Ok(())
}

pub fn phase1_block_approx(a: &BdMatrix, b: &BdMatrix, delta: usize) -> Result<BlockApprox> {
    check_operands(a, b)?;
    if delta == 0 {
        return Err(Error::InvalidParameter("block size must be positive".into()));
    }
    let (am, bm) = (a.matrix(), b.matrix());
    let (rows, cols, inner) = (am.rows(), bm.cols(), am.cols());
    let mut approx = BlockApprox {
        delta,
        rows,
        cols,
        corners: Matrix::infinite(rows.div_ceil(delta), cols.div_ceil(delta)),
    };
    for x in 0..approx.row_blocks() {
        let i = approx.corner_row(x);
        for y in 0..approx.col_blocks() {
            let j = approx.corner_col(y);
            let best = (0..inner).map(|l| am.get(i, l) + bm.get(l, j)).min().unwrap_or(INF);
            approx.corners.set(x, y, best);
        }
    }
    Ok(approx)
}

/// Pivots and surviving inner indices of the sampled rounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleState {
    pub delta: usize,
    /// `(iʳ, jʳ)` per round, always block corners.
    pub pivots: Vec<(usize, usize)>,
    /// `L_r`: inner indices kept in round `r`, sorted.
    pub surviving: Vec<Vec<usize>>,
    /// Triples `(i, ℓ, j)` inside the clamp window per round.
    pub covered: Vec<u64>,
}

impl SampleState {
    fn in_round(&self, r: usize, l: usize) -> bool {
        self.surviving[r].binary_search(&l).is_ok()
    }
}

/// Shifted entries of one round, computed on demand.
struct Round<'a> {
    a: &'a Matrix,
    b: &'a Matrix,
    approx: &'a BlockApprox,
    pivot: (usize, usize),
}

impl Round<'_> {
    /// `Aʳ[i, ℓ] = A[i, ℓ] + B[ℓ, jʳ] - C̃[i, jʳ]`.
    #[inline]
    fn a(&self, i: usize, l: usize) -> i64 {
        let q = self.pivot.1;
        self.a.get(i, l) + self.b.get(l, q) - self.approx.get(i, q)
    }

    /// `Bʳ[ℓ, j] = B[ℓ, j] - B[ℓ, jʳ] + C̃[iʳ, jʳ] - C̃[iʳ, j]`.
    #[inline]
    fn b(&self, l: usize, j: usize) -> i64 {
        let (p, q) = self.pivot;
        self.b.get(l, j) - self.b.get(l, q) + self.approx.get(p, q) - self.approx.get(p, j)
    }

    /// `Ĉʳ[i, j] = Pʳ[i, j] + C̃[i, jʳ] - C̃[iʳ, jʳ] + C̃[iʳ, j]`.
    #[inline]
    fn unshift(&self, i: usize, j: usize, x: i64) -> i64 {
        if is_inf(x) {
            return INF;
        }
        let (p, q) = self.pivot;
        x + self.approx.get(i, q) - self.approx.get(p, q) + self.approx.get(p, j)
    }
}

fn round<'a>(a: &'a Matrix, b: &'a Matrix, approx: &'a BlockApprox, pivot: (usize, usize)) -> Round<'a> {
    Round { a, b, approx, pivot }
}

/// `(i, ℓ, j)` is covered by round `r` at threshold `t·Δ`.
fn covered_at(state: &SampleState, rnd: &Round, r: usize, i: usize, l: usize, j: usize, t: i64) -> bool {
    let lim = t * state.delta as i64;
    state.in_round(r, l) && rnd.a(i, l).abs() <= lim && rnd.b(l, j).abs() <= lim
}

/// `L_r` for a candidate pivot given the rounds so far.
fn surviving_for(
    a: &Matrix,
    b: &Matrix,
    approx: &BlockApprox,
    state: &SampleState,
    pivot: (usize, usize),
) -> Vec<usize> {
    let (p, q) = pivot;
    let d = state.delta as i64;
    let exact = approx.get(p, q);
    let rounds: Vec<Round> = state.pivots.iter().map(|&pv| round(a, b, approx, pv)).collect();
    (0..a.cols())
        .filter(|&l| {
            (a.get(p, l) + b.get(l, q) - exact).abs() <= 16 * d
                && rounds
                    .iter()
                    .enumerate()
                    .all(|(r, rnd)| !covered_at(state, rnd, r, p, l, q, 40))
        })
        .collect()
}

/// Runs the sampled rounds. Returns `Ĉ` (entrywise `>= C`) and the samples.
pub fn phase2_sampled_products(
    a: &BdMatrix,
    b: &BdMatrix,
    approx: &BlockApprox,
    rho: usize,
    strategy: Strategy,
    seed: u64,
) -> Result<(Matrix, SampleState)> {
    check_operands(a, b)?;
    let (am, bm) = (a.matrix(), b.matrix());
    let (rows, cols) = (am.rows(), bm.cols());
    let delta = approx.delta();
    let lim = 48 * delta as i64;
    let mut state = SampleState {
        delta,
        pivots: Vec::with_capacity(rho),
        surviving: Vec::with_capacity(rho),
        covered: Vec::with_capacity(rho),
    };
    let mut c_hat = Matrix::infinite(rows, cols);
    if rows == 0 || cols == 0 {
        return Ok((c_hat, state));
    }
    let mut rng = rng_for(seed, 0x6d70);
    let mut alive = match strategy {
        Strategy::Greedy => Some(approximately_relevant(am, bm, approx)),
        Strategy::Random => None,
    };

    for r in 0..rho {
        let pivot = match &alive {
            Some(alive) => greedy_pivot(am, bm, approx, &state, alive),
            None => {
                let x = rng.random_range(0..approx.row_blocks());
                let y = rng.random_range(0..approx.col_blocks());
                (approx.corner_row(x), approx.corner_col(y))
            }
        };
        let kept = surviving_for(am, bm, approx, &state, pivot);
        let rnd = round(am, bm, approx, pivot);
        let clamp = |x: i64| if x.abs() > lim { INF } else { x };
        let a_hat = Matrix::from_fn(rows, kept.len(), |i, t| clamp(rnd.a(i, kept[t])));
        let b_hat = Matrix::from_fn(kept.len(), cols, |t, j| clamp(rnd.b(kept[t], j)));
        let p = minplus_small_entries(&a_hat, &b_hat, lim)?;
        for i in 0..rows {
            for j in 0..cols {
                c_hat.relax(i, j, rnd.unshift(i, j, p.get(i, j)));
            }
        }
        let covered: u64 = (0..kept.len())
            .map(|t| {
                let ra = (0..rows).filter(|&i| !is_inf(a_hat.get(i, t))).count() as u64;
                let rb = (0..cols).filter(|&j| !is_inf(b_hat.get(t, j))).count() as u64;
                ra * rb
            })
            .sum();
        state.pivots.push(pivot);
        state.surviving.push(kept);
        state.covered.push(covered);
        if let Some(alive) = alive.as_mut() {
            retire_covered(am, bm, approx, &state, r, alive);
        }
    }
    Ok((c_hat, state))
}

/// Per inner index, the block pairs `(x, y)` whose corner triple is
/// approximately relevant.
fn approximately_relevant(a: &Matrix, b: &Matrix, approx: &BlockApprox) -> Vec<BitMatrix> {
    let d = approx.delta() as i64;
    (0..a.cols())
        .map(|l| {
            BitMatrix::from_fn(approx.row_blocks(), approx.col_blocks(), |x, y| {
                let (i, j) = (approx.corner_row(x), approx.corner_col(y));
                (a.get(i, l) + b.get(l, j) - approx.block(x, y)).abs() <= 8 * d
            })
        })
        .collect()
}

fn retire_covered(
    a: &Matrix,
    b: &Matrix,
    approx: &BlockApprox,
    state: &SampleState,
    r: usize,
    alive: &mut [BitMatrix],
) {
    let rnd = round(a, b, approx, state.pivots[r]);
    for &l in &state.surviving[r] {
        let m = &mut alive[l];
        for x in 0..approx.row_blocks() {
            for y in 0..approx.col_blocks() {
                if m.get(x, y) && covered_at(state, &rnd, r, approx.corner_row(x), l, approx.corner_col(y), 44) {
                    m.set(x, y, false);
                }
            }
        }
    }
}

/// Corner pair covering the most still-alive block triples; ties go to the
/// smallest pair in row-major order.
fn greedy_pivot(
    a: &Matrix,
    b: &Matrix,
    approx: &BlockApprox,
    state: &SampleState,
    alive: &[BitMatrix],
) -> (usize, usize) {
    let (gx, gy) = (approx.row_blocks(), approx.col_blocks());
    let lim = 44 * approx.delta() as i64;
    let mut gain = vec![0u64; gx * gy];
    // L for every candidate, as per-candidate sorted lists
    let kept: Vec<Vec<usize>> = (0..gx * gy)
        .map(|c| {
            let pivot = (approx.corner_row(c / gy), approx.corner_col(c % gy));
            surviving_for(a, b, approx, state, pivot)
        })
        .collect();
    let mut weight = vec![0u64; gy];
    for (l, live) in alive.iter().enumerate() {
        if live.count_ones() == 0 {
            continue;
        }
        for qy in 0..gy {
            let q = approx.corner_col(qy);
            // weight[y]: alive (x, y) whose row side is in the window for q
            weight.iter_mut().for_each(|w| *w = 0);
            for x in 0..gx {
                let i = approx.corner_row(x);
                if (a.get(i, l) + b.get(l, q) - approx.get(i, q)).abs() > lim {
                    continue;
                }
                for (y, w) in weight.iter_mut().enumerate() {
                    *w += u64::from(live.get(x, y));
                }
            }
            if weight.iter().all(|&w| w == 0) {
                continue;
            }
            for px in 0..gx {
                let cand = px * gy + qy;
                if kept[cand].binary_search(&l).is_err() {
                    continue;
                }
                let p = approx.corner_row(px);
                let shift = approx.get(p, q) - b.get(l, q);
                let mut total = 0;
                for (y, &w) in weight.iter().enumerate() {
                    let j = approx.corner_col(y);
                    if w > 0 && (b.get(l, j) + shift - approx.get(p, j)).abs() <= lim {
                        total += w;
                    }
                }
                gain[cand] += total;
            }
        }
    }
    let best = (0..gx * gy).fold(0, |best, c| if gain[c] > gain[best] { c } else { best });
    (approx.corner_row(best / gy), approx.corner_col(best % gy))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Phase3Stats {
    /// Block-level triples found interesting.
    pub interesting: u64,
    /// Individual `(i, ℓ, j)` relaxations performed.
    pub relaxations: u64,
}

/// Relaxes `Ĉ` over every block whose corner triple is approximately relevant
/// and not approximately covered by any round. Returns the exact product.
pub fn phase3_complete(
    a: &BdMatrix,
    b: &BdMatrix,
    approx: &BlockApprox,
    mut c_hat: Matrix,
    state: &SampleState,
) -> Result<(Matrix, Phase3Stats)> {
    check_operands(a, b)?;
    let (am, bm) = (a.matrix(), b.matrix());
    let (rows, cols) = (am.rows(), bm.cols());
    let (gx, gy) = (approx.row_blocks(), approx.col_blocks());
    let d = approx.delta();
    let rho = state.pivots.len();
    let rounds: Vec<Round> = state.pivots.iter().map(|&pv| round(am, bm, approx, pv)).collect();
    let lim = 44 * d as i64;
    let mut stats = Phase3Stats::default();

    for l in 0..am.cols() {
        let live: Vec<usize> = (0..rho).filter(|&r| state.in_round(r, l)).collect();
        let u = BitMatrix::from_fn(gx, rho, |x, r| {
            live.binary_search(&r).is_ok() && rounds[r].a(approx.corner_row(x), l).abs() <= lim
        });
        let v = BitMatrix::from_fn(rho, gy, |r, y| {
            live.binary_search(&r).is_ok() && rounds[r].b(l, approx.corner_col(y)).abs() <= lim
        });
        let z = boolean_product(&u, &v);
        for x in 0..gx {
            let i0 = approx.corner_row(x);
            for y in 0..gy {
                let j0 = approx.corner_col(y);
                let relevant = (am.get(i0, l) + bm.get(l, j0) - approx.block(x, y)).abs() <= 8 * d as i64;
                if !relevant || z.get(x, y) {
                    continue;
                }
                stats.interesting += 1;
                for i in x * d..((x + 1) * d).min(rows) {
                    let ai = am.get(i, l);
                    for j in y * d..((y + 1) * d).min(cols) {
                        c_hat.relax(i, j, ai + bm.get(l, j));
                        stats.relaxations += 1;
                    }
                }
            }
        }
    }
    Ok((c_hat, stats))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BdStats {
    pub delta: usize,
    pub rho: usize,
    pub covered: u64,
    pub surviving: Vec<usize>,
    pub interesting: u64,
    pub relaxations: u64,
}

pub fn minplus_bd(a: &BdMatrix, b: &BdMatrix, params: &BdParams) -> Result<Matrix> {
    minplus_bd_with_stats(a, b, params).map(|(c, _)| c)
}

pub fn minplus_bd_with_stats(a: &BdMatrix, b: &BdMatrix, params: &BdParams) -> Result<(Matrix, BdStats)> {
    check_operands(a, b)?;
    let (rows, inner, cols) = (a.matrix().rows(), a.matrix().cols(), b.matrix().cols());
    if rows == 0 || cols == 0 || inner == 0 {
        return Ok((Matrix::infinite(rows, cols), BdStats::default()));
    }
    let (delta, rho) = params.resolve(rows.max(cols));
    let approx = phase1_block_approx(a, b, delta)?;
    let (c_hat, state) = phase2_sampled_products(a, b, &approx, rho, params.strategy, params.seed)?;
    let (c, p3) = phase3_complete(a, b, &approx, c_hat, &state)?;
    let stats = BdStats {
        delta,
        rho,
        covered: state.covered.iter().sum(),
        surviving: state.surviving.iter().map(Vec::len).collect(),
        interesting: p3.interesting,
        relaxations: p3.relaxations,
    };
    Ok((c, stats))
}
