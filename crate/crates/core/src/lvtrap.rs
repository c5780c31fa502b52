//! Tall trapezoids: Landau–Vishkin style diagonal frontiers.
//!
//! For a tall maximal trapezoid `(a,b,c,d)` the cost of a cross pair
//! `(i, j) ∈ [a..b] × [c..d]` only depends on how far the diagonal
//! `i + j = b + c + δ` can be walked outward at cost `v`. `L_v[δ]` records the
//! largest such `j`; the outward walk between edits is a single LCP query.

use crate::band::{two_sided, Band};
use crate::cost::{cap_for, run_cost, Cost};
use crate::error::{Error, Result};
use crate::geometry::Trapezoid;
use crate::lcp::LcpIndex;

/// Sentinel for "no position reachable".
pub const NEG_INF: i64 = i64::MIN / 4;

/// Upper bound applied to the frontier before the LCP slide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrontierCap {
    /// `j <= d + δ₋`, i.e. the cell stays inside `[a..b] × [c..d]`.
    #[default]
    Square,
    /// `j <= d - 2k + δ₊`, the range `L_v[δ]` is defined over.
    Band,
}

/// `L_v[δ]` for `v ∈ [0..k]`, `δ ∈ [-2k..2k]`, with [`NEG_INF`] outside
/// `|δ| <= 2v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalTable {
    k: usize,
    values: Vec<i64>,
}

impl DiagonalTable {
    fn new(k: usize) -> Self {
        DiagonalTable {
            k,
            values: vec![NEG_INF; (k + 1) * (4 * k + 1)],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `NEG_INF` for any out-of-range `v` or `δ`.
    pub fn get(&self, v: i64, delta: i64) -> i64 {
        let k = self.k as i64;
        if v < 0 || v > k || delta < -2 * k || delta > 2 * k {
            return NEG_INF;
        }
        self.values[(v as usize) * (4 * self.k + 1) + (delta + 2 * k) as usize]
    }

    fn set(&mut self, v: usize, delta: i64, x: i64) {
        let k = self.k as i64;
        self.values[v * (4 * self.k + 1) + (delta + 2 * k) as usize] = x;
    }

    /// Smallest `v` with `L_v[δ] >= j`.
    pub fn first_reaching(&self, delta: i64, j: usize) -> Option<usize> {
        (0..=self.k).find(|&v| self.get(v as i64, delta) >= j as i64)
    }
}

#[derive(Debug, Clone)]
pub struct TrapezoidOutput {
    /// Costs over `[a..a+2k] ∪ [d-2k..d]`.
    pub band: Band,
    pub table: DiagonalTable,
    /// Inner-loop iterations; `O(k²)` regardless of the trapezoid height.
    pub ops: u64,
}

/// Positions of the band a trapezoid consumes: `[b-2k..b] ∪ [c..c+2k]`.
pub fn input_positions(t: &Trapezoid, k: usize) -> Vec<usize> {
    two_sided(t.b - 2 * k, t.c + 2 * k, 2 * k)
}

/// Positions of the band a trapezoid produces: `[a..a+2k] ∪ [d-2k..d]`.
pub fn output_positions(t: &Trapezoid, k: usize) -> Vec<usize> {
    two_sided(t.a, t.d, 2 * k)
}

pub fn process_trapezoid(t: &Trapezoid, k: usize, input: &Band, idx: &LcpIndex) -> Result<TrapezoidOutput> {
    process_trapezoid_with(t, k, input, idx, FrontierCap::default())
}

pub fn process_trapezoid_with(
    t: &Trapezoid,
    k: usize,
    input: &Band,
    idx: &LcpIndex,
    cap_rule: FrontierCap,
) -> Result<TrapezoidOutput> {
    if !t.is_tall(k) || t.d > idx.n() {
        return Err(Error::InvalidParameter(format!(
            "trapezoid {t:?} is not tall for k={k}"
        )));
    }
    input.check_positions(&input_positions(t, k))?;
    let cap = cap_for(k);
    let (b, c, d) = (t.b as i64, t.c as i64, t.d as i64);
    let kk = k as i64;
    let mut table = DiagonalTable::new(k);
    let mut ops = 0u64;

    // seed[v][δ]: largest j over cells of [b-2k..b] × [c..c+2k] on diagonal δ
    // with D <= v. The corner alone is not enough: a cell just outside the
    // square may take its predecessor from any square cell on the rim.
    let width = 4 * k + 1;
    let mut seed = vec![NEG_INF; (k + 1) * width];
    for i in t.b - 2 * k..=t.b {
        for j in t.c..=t.c + 2 * k {
            ops += 1;
            let delta = (i + j) as i64 - (b + c);
            let x = input.try_get(i, j)? as usize;
            if x <= k && delta.abs() <= 2 * kk {
                let cell = &mut seed[x * width + (delta + 2 * kk) as usize];
                *cell = (*cell).max(j as i64);
            }
        }
    }
    for v in 1..=k {
        for w in 0..width {
            seed[v * width + w] = seed[v * width + w].max(seed[(v - 1) * width + w]);
        }
    }

    for v in 0..=k {
        let vi = v as i64;
        for delta in -2 * vi..=2 * vi {
            ops += 1;
            let (dp, dm) = (delta.max(0), delta.min(0));
            let prev = |s: i64| table.get(vi - 1, s);
            let hi = match cap_rule {
                FrontierCap::Square => d + dm,
                FrontierCap::Band => d - 2 * kk + dp,
            };
            let best = (prev(delta - 2) + 2)
                .max(prev(delta - 1) + 1)
                .max(prev(delta) + 1)
                .max(prev(delta + 1))
                .max(prev(delta + 2));
            let mut frontier = if best < NEG_INF / 2 { NEG_INF } else { best.min(hi) };
            frontier = frontier.max(seed[v * width + (delta + 2 * kk) as usize]);
            if frontier > NEG_INF / 2 {
                let i_end = (b + c + delta - frontier) as usize;
                let slide = idx.matched_extension(t.a, i_end, frontier as usize, t.d);
                frontier += slide as i64;
            }
            table.set(v, delta, frontier);
        }
    }

    let band = Band::from_fn(output_positions(t, k), cap, |i, j| {
        if same_leg(t, i, j) {
            return run_cost(i, j, cap);
        }
        // only possible when the trapezoid is at most 4k high
        if let Some(x) = input.get(i, j) {
            return x;
        }
        let delta = (i + j) as i64 - (b + c);
        match table.first_reaching(delta, j) {
            Some(v) => v as Cost,
            None => cap,
        }
    });
    Ok(TrapezoidOutput { band, table, ops })
}

fn same_leg(t: &Trapezoid, i: usize, j: usize) -> bool {
    (t.a <= i && j <= t.b) || (t.c <= i && j <= t.d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_ascii;
    use crate::cost::CostTable;
    use crate::geometry::maximal_trapezoids;
    use crate::oracle::dp_cubic;
    use crate::seq::ParenSeq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn input_from(t: &Trapezoid, k: usize, table: &CostTable) -> Band {
        Band::from_fn(input_positions(t, k), cap_for(k), |i, j| table.get(i, j))
    }

    /// Compares the frontier predicate and the output band with the oracle.
    fn check(s: &ParenSeq, k: usize, rule: FrontierCap) -> std::result::Result<usize, String> {
        let table = dp_cubic(s, k);
        let idx = LcpIndex::new(s);
        let mut checked = 0;
        for t in maximal_trapezoids(s).into_iter().filter(|t| t.is_tall(k)) {
            crate::invariants::frontier_matches(&t, k, &table, &idx, rule)?;
            checked += 1;
        }
        Ok(checked)
    }

    fn random_cases(seed: u64, count: usize) -> Vec<(ParenSeq, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let k = rng.random_range(0..=5);
                let depth = rng.random_range(2 * k..=2 * k + 40);
                let inner = 2 * rng.random_range(0..=30);
                let context = 2 * rng.random_range(0..=10);
                let edits = rng.random_range(0..=k + 2);
                let g = crate::gen::nested_dyck(&mut rng, depth, inner, context, 1 + (seed % 3) as u32, edits);
                (g.seq, k)
            })
            .collect()
    }

    #[test]
    fn pure_nesting() {
        let s = parse_ascii("((((((()))))))").unwrap();
        let table = dp_cubic(&s, 2);
        let t = Trapezoid::new(0, 7, 7, 14);
        let out = process_trapezoid(&t, 2, &input_from(&t, 2, &table), &LcpIndex::new(&s)).unwrap();
        assert_eq!(out.band.get(0, 14), Some(0));
        assert_eq!(out.band.get(0, 3), Some(2));
        assert_eq!(out.band.get(11, 14), Some(2));
        assert_eq!(out.band.get(1, 14), Some(1));
    }

    #[test]
    fn one_substitution_in_the_legs() {
        let s = parse_ascii("((((((()])))))").unwrap();
        let table = dp_cubic(&s, 2);
        let t = Trapezoid::new(0, 7, 7, 14);
        let out = process_trapezoid(&t, 2, &input_from(&t, 2, &table), &LcpIndex::new(&s)).unwrap();
        assert_eq!(out.band.get(0, 14), Some(table.get(0, 14)));
        let s = parse_ascii("(((((((]))))))").unwrap();
        let table = dp_cubic(&s, 2);
        let out = process_trapezoid(&t, 2, &input_from(&t, 2, &table), &LcpIndex::new(&s)).unwrap();
        assert_eq!(table.get(0, 14), 1);
        assert_eq!(out.band.get(0, 14), Some(1));
    }

    #[test]
    fn rejects_misaligned_band() {
        let s = parse_ascii("((((((()))))))").unwrap();
        let t = Trapezoid::new(0, 7, 7, 14);
        let bad = Band::new(vec![0, 1, 2], 3);
        assert!(process_trapezoid(&t, 2, &bad, &LcpIndex::new(&s)).is_err());
        let short = Trapezoid::new(4, 6, 8, 10);
        let band = Band::new(input_positions(&Trapezoid::new(0, 7, 7, 14), 2), 3);
        assert!(process_trapezoid(&short, 2, &band, &LcpIndex::new(&s)).is_err());
    }

    #[test]
    fn frontier_matches_oracle() {
        let mut total = 0;
        for seed in [11, 12, 14] {
            for (s, k) in random_cases(seed, 150) {
                total += check(&s, k, FrontierCap::Square).unwrap_or_else(|e| panic!("{e}\n{s:?}"));
            }
        }
        assert!(total > 100, "only {total} tall trapezoids exercised");
    }

    #[test]
    fn band_cap_misses_outer_substitution() {
        // Only the outermost pair is wrong, so D[0,14] = 1. Capping the
        // frontier at row a+2k before sliding runs into that mismatch and
        // never gets back out to j = d.
        let s = parse_ascii("[(((((()))))))").unwrap();
        let table = dp_cubic(&s, 2);
        assert_eq!(table.get(0, 14), 1);
        let t = Trapezoid::new(0, 7, 7, 14);
        let input = input_from(&t, 2, &table);
        let idx = LcpIndex::new(&s);
        let square = process_trapezoid_with(&t, 2, &input, &idx, FrontierCap::Square).unwrap();
        let narrow = process_trapezoid_with(&t, 2, &input, &idx, FrontierCap::Band).unwrap();
        assert_eq!(square.band.get(0, 14), Some(1));
        assert_ne!(narrow.band.get(0, 14), Some(1));
    }

    #[test]
    fn frontier_is_monotone_in_v() {
        for (s, k) in random_cases(13, 60) {
            let table = dp_cubic(&s, k);
            let idx = LcpIndex::new(&s);
            for t in maximal_trapezoids(&s).into_iter().filter(|t| t.is_tall(k)) {
                let out = process_trapezoid(&t, k, &input_from(&t, k, &table), &idx).unwrap();
                for v in 1..=k as i64 {
                    for delta in -2 * k as i64..=2 * k as i64 {
                        assert!(out.table.get(v, delta) >= out.table.get(v - 1, delta));
                    }
                }
            }
        }
    }

    #[test]
    fn work_is_independent_of_height() {
        let k = 3;
        let ops: Vec<u64> = [20usize, 200, 2000]
            .iter()
            .map(|&h| {
                let text = format!("{}{}", "(".repeat(h), ")".repeat(h));
                let s = parse_ascii(&text).unwrap();
                let t = Trapezoid::new(0, h, h, 2 * h);
                let band = Band::from_fn(input_positions(&t, k), cap_for(k), |i, j| {
                    if same_leg(&t, i, j) {
                        run_cost(i, j, cap_for(k))
                    } else {
                        ((i + j) as i64 - 2 * h as i64).unsigned_abs() as Cost / 2
                    }
                });
                process_trapezoid(&t, k, &band, &LcpIndex::new(&s)).unwrap().ops
            })
            .collect();
        assert!(ops.windows(2).all(|w| w[0] == w[1]), "{ops:?}");
    }
}
