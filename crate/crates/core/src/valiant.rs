//! Interval recursion that fills an upper-triangular table `A[i, j]` whose
//! entries depend on entries nested inside `[i..j]` plus one term
//! `min { A[i, m] + A[m, j] : m ∈ M ∩ (i..j) }`.
//!
//! Those split terms are batched into rectangular min-plus products over
//! weight-balanced intervals, so a subcubic kernel speeds up the whole fill.

use crate::cost::{cap_for, run_cost};
use crate::error::{Error, Result};
use crate::minplus::{Matrix, MinPlusKernel, INF};
use crate::profile::HeightProfile;
use crate::seq::{pair_cost, ParenSeq, Symbol};

/// How to compute one table entry.
pub trait EntryRule {
    /// Number of ground indices; the table is `size × size`.
    fn size(&self) -> usize;

    /// Sorted distinguished indices `M`.
    fn distinguished(&self) -> &[usize];

    /// `A[i, j]` for `i <= j`. May read any `A[i', j']` with
    /// `i <= i' <= j' <= j`, `(i', j') != (i, j)`. `split` is the minimum of
    /// `A[i, m] + A[m, j]` over `m ∈ M ∩ (i..j)`, or `INF` if there is none.
    fn entry(&self, i: usize, j: usize, table: &Matrix, split: i64) -> i64;
}

/// Inclusive interval of ground indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Weights `w'(I) = n·|I ∩ M| + |I \ M|·|M|` (scaled by `n` to stay
/// integral) and the balanced split rule.
#[derive(Debug, Clone)]
pub struct WeightedDecomposition {
    n: usize,
    m_count: usize,
    /// `prefix[x] = |M ∩ [0..x)|`.
    prefix: Vec<usize>,
    depth: usize,
}

impl WeightedDecomposition {
    pub fn new(n: usize, m: &[usize]) -> Self {
        let mut prefix = vec![0; n + 1];
        let mut it = m.iter().peekable();
        for x in 0..n {
            let hit = it.next_if(|&&v| v == x).is_some();
            prefix[x + 1] = prefix[x] + hit as usize;
        }
        let m_count = prefix[n];
        let mut d = Self {
            n,
            m_count,
            prefix,
            depth: 0,
        };
        let total = d.weight(Interval::new(0, n.max(1) - 1));
        // largest d with 2^d · n <= W'
        while n > 0 && ((n as u128) << (d.depth + 1)) <= total as u128 {
            d.depth += 1;
        }
        d
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn m_in(&self, iv: Interval) -> usize {
        self.prefix[iv.hi + 1] - self.prefix[iv.lo]
    }

    pub fn weight(&self, iv: Interval) -> u64 {
        if self.n == 0 {
            return 0;
        }
        let cm = self.m_in(iv) as u64;
        self.n as u64 * cm + (iv.len() as u64 - cm) * self.m_count as u64
    }

    /// Leftmost split minimising the heavier half. `iv` must have two or
    /// more elements.
    pub fn split(&self, iv: Interval) -> (Interval, Interval) {
        debug_assert!(iv.len() >= 2);
        let left = |s: usize| self.weight(Interval::new(iv.lo, s));
        let right = |s: usize| self.weight(Interval::new(s + 1, iv.hi));
        // first s where the left half is at least as heavy
        let (mut lo, mut hi) = (iv.lo, iv.hi - 1);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if left(mid) >= right(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let mut s = lo;
        if s > iv.lo && left(s - 1).max(right(s - 1)) <= left(s).max(right(s)) {
            s -= 1;
        }
        (Interval::new(iv.lo, s), Interval::new(s + 1, iv.hi))
    }

    /// Intervals of each level, down to the recursion depth or singletons.
    pub fn levels(&self) -> Vec<Vec<Interval>> {
        if self.n == 0 {
            return Vec::new();
        }
        let mut out = vec![vec![Interval::new(0, self.n - 1)]];
        for _ in 0..self.depth {
            let next: Vec<Interval> = out
                .last()
                .unwrap()
                .iter()
                .flat_map(|&iv| {
                    if iv.len() >= 2 {
                        let (l, r) = self.split(iv);
                        vec![l, r]
                    } else {
                        vec![iv]
                    }
                })
                .collect();
            out.push(next);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValiantStats {
    pub depth: usize,
    /// Updates that reached the kernel.
    pub updates: u64,
    /// Entries filled by the naive base cases.
    pub base_entries: u64,
    pub p_checks: u64,
}

/// Target table `A`, split accumulator `P`, entry rule and kernel.
pub struct RecursionContext<'a, R: EntryRule + ?Sized> {
    rule: &'a R,
    kernel: &'a mut dyn MinPlusKernel,
    decomp: WeightedDecomposition,
    m: Vec<usize>,
    a: Matrix,
    p: Matrix,
    check_p: bool,
    stats: ValiantStats,
}

impl<'a, R: EntryRule + ?Sized> RecursionContext<'a, R> {
    /// With `check_p`, every `complete` first verifies that `P` holds the
    /// split minimum over indices strictly between its two intervals.
    pub fn new(rule: &'a R, kernel: &'a mut dyn MinPlusKernel, check_p: bool) -> Self {
        let n = rule.size();
        let m = rule.distinguished().to_vec();
        debug_assert!(m.windows(2).all(|w| w[0] < w[1]) && m.iter().all(|&x| x < n));
        let decomp = WeightedDecomposition::new(n, &m);
        let stats = ValiantStats {
            depth: decomp.depth(),
            ..Default::default()
        };
        RecursionContext {
            rule,
            kernel,
            decomp,
            m,
            a: Matrix::infinite(n, n),
            p: Matrix::infinite(n, n),
            check_p,
            stats,
        }
    }

    pub fn table(&self) -> &Matrix {
        &self.a
    }

    pub fn stats(&self) -> ValiantStats {
        self.stats
    }

    pub fn into_table(self) -> Matrix {
        self.a
    }

    /// Fills the whole table.
    pub fn run(&mut self) -> Result<()> {
        let n = self.rule.size();
        if n == 0 {
            return Ok(());
        }
        for i in 0..n {
            let v = self.rule.entry(i, i, &self.a, INF);
            self.a.set(i, i, v);
        }
        self.compute(Interval::new(0, n - 1), 0)
    }

    fn distinguished_in(&self, lo: usize, hi: usize) -> &[usize] {
        if lo > hi {
            return &[];
        }
        let from = self.m.partition_point(|&x| x < lo);
        let to = self.m.partition_point(|&x| x <= hi);
        &self.m[from..to]
    }

    fn split_over(&self, i: usize, j: usize, lo: usize, hi: usize) -> i64 {
        self.distinguished_in(lo, hi)
            .iter()
            .map(|&m| self.a.get(i, m) + self.a.get(m, j))
            .min()
            .unwrap_or(INF)
    }

    /// All `A[i, j]` with `i < j` inside `iv`; diagonal entries must be set.
    pub fn compute(&mut self, iv: Interval, level: usize) -> Result<()> {
        if level >= self.decomp.depth() || iv.len() == 1 || self.decomp.m_in(iv) <= 2 {
            for i in (iv.lo..=iv.hi).rev() {
                for j in i + 1..=iv.hi {
                    let split = self.split_over(i, j, i + 1, j - 1);
                    let v = self.rule.entry(i, j, &self.a, split);
                    self.a.set(i, j, v);
                    self.stats.base_entries += 1;
                }
            }
            return Ok(());
        }
        let (l, r) = self.decomp.split(iv);
        self.compute(l, level + 1)?;
        self.compute(r, level + 1)?;
        self.complete(l, r, level + 1)
    }

    /// All `A[i, j]` with `i ∈ i_iv`, `j ∈ j_iv`. Needs every other entry
    /// inside `[i_iv.lo .. j_iv.hi]` that these depend on, and `P` holding
    /// the split minimum over `M` strictly between the two intervals.
    pub fn complete(&mut self, i_iv: Interval, j_iv: Interval, level: usize) -> Result<()> {
        if self.check_p {
            self.verify_p(i_iv, j_iv)?;
        }
        let small = self.decomp.m_in(i_iv) + self.decomp.m_in(j_iv) <= 2;
        if level >= self.decomp.depth() || i_iv.len() == 1 || j_iv.len() == 1 || small {
            for i in (i_iv.lo..=i_iv.hi).rev() {
                for j in j_iv.lo..=j_iv.hi {
                    let split = self
                        .p
                        .get(i, j)
                        .min(self.split_over(i, j, i + 1, i_iv.hi))
                        .min(self.split_over(i, j, j_iv.lo, j - 1));
                    let v = self.rule.entry(i, j, &self.a, split);
                    self.a.set(i, j, v);
                    self.stats.base_entries += 1;
                }
            }
            return Ok(());
        }
        let (il, ir) = self.decomp.split(i_iv);
        let (jl, jr) = self.decomp.split(j_iv);
        let next = level + 1;
        self.complete(ir, jl, next)?;
        self.update(il, ir, jl)?;
        self.complete(il, jl, next)?;
        self.update(ir, jl, jr)?;
        self.complete(ir, jr, next)?;
        self.update(il, ir, jr)?;
        self.update(il, jl, jr)?;
        self.complete(il, jr, next)
    }

    /// `P[i, j] ← min(P[i, j], min_{m ∈ K ∩ M} A[i, m] + A[m, j])` over
    /// `I × J`, as one kernel call.
    pub fn update(&mut self, i_iv: Interval, k_iv: Interval, j_iv: Interval) -> Result<()> {
        let ms = self.distinguished_in(k_iv.lo, k_iv.hi).to_vec();
        if ms.is_empty() {
            return Ok(());
        }
        let left = Matrix::from_fn(i_iv.len(), ms.len(), |x, y| self.a.get(i_iv.lo + x, ms[y]));
        let right = Matrix::from_fn(ms.len(), j_iv.len(), |x, y| self.a.get(ms[x], j_iv.lo + y));
        let prod = self.kernel.multiply(&left, &right)?;
        for x in 0..i_iv.len() {
            for y in 0..j_iv.len() {
                self.p.relax(i_iv.lo + x, j_iv.lo + y, prod.get(x, y));
            }
        }
        self.stats.updates += 1;
        Ok(())
    }

    fn verify_p(&mut self, i_iv: Interval, j_iv: Interval) -> Result<()> {
        self.stats.p_checks += 1;
        for i in i_iv.lo..=i_iv.hi {
            for j in j_iv.lo..=j_iv.hi {
                let want = self.split_over(i, j, i_iv.hi + 1, j_iv.lo.saturating_sub(1));
                if self.p.get(i, j).min(INF) != want {
                    return Err(Error::Invariant(format!(
                        "P[{i}, {j}] = {} but the split minimum is {want}",
                        self.p.get(i, j)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Reference fill: `i` descending, `j` ascending, splits enumerated directly.
pub fn naive_fill<R: EntryRule + ?Sized>(rule: &R) -> Matrix {
    let n = rule.size();
    let m = rule.distinguished();
    let mut a = Matrix::infinite(n, n);
    for i in (0..n).rev() {
        let v = rule.entry(i, i, &a, INF);
        a.set(i, i, v);
        for j in i + 1..n {
            let from = m.partition_point(|&x| x <= i);
            let split = m[from..]
                .iter()
                .take_while(|&&x| x < j)
                .map(|&x| a.get(i, x) + a.get(x, j))
                .min()
                .unwrap_or(INF);
            let v = rule.entry(i, j, &a, split);
            a.set(i, j, v);
        }
    }
    a
}

/// Recursive fill through `kernel`.
pub fn valiant_fill<R: EntryRule + ?Sized>(
    rule: &R,
    kernel: &mut dyn MinPlusKernel,
    check_p: bool,
) -> Result<(Matrix, ValiantStats)> {
    let mut ctx = RecursionContext::new(rule, kernel, check_p);
    ctx.run()?;
    let stats = ctx.stats();
    Ok((ctx.into_table(), stats))
}

/// The capped table recurrence with splits restricted to `M` and the four
/// positions next to either end. Ground set `[0..n]`.
pub struct RestrictedRule<'a> {
    syms: &'a [Symbol],
    cap: i64,
    m: Vec<usize>,
}

impl<'a> RestrictedRule<'a> {
    pub fn new(s: &'a ParenSeq, k: usize) -> Self {
        let m = HeightProfile::new(s).midpoint_set();
        Self::with_set(s, k, m)
    }

    pub fn with_set(s: &'a ParenSeq, k: usize, m: Vec<usize>) -> Self {
        RestrictedRule {
            syms: s.symbols(),
            cap: cap_for(k) as i64,
            m,
        }
    }
}

impl EntryRule for RestrictedRule<'_> {
    fn size(&self) -> usize {
        self.syms.len() + 1
    }

    fn distinguished(&self) -> &[usize] {
        &self.m
    }

    fn entry(&self, i: usize, j: usize, a: &Matrix, split: i64) -> i64 {
        if j <= i + 1 {
            return run_cost(i, j, self.cap as u32) as i64;
        }
        let mut best = pair_cost(self.syms[i], self.syms[j - 1]) as i64 + a.get(i + 1, j - 1);
        best = best.min(split);
        for x in [i + 1, i + 2, j - 2, j - 1] {
            if x > i && x < j {
                best = best.min(a.get(i, x) + a.get(x, j));
            }
        }
        best.min(self.cap)
    }
}
