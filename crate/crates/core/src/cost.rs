//! Threshold-capped cost values and the `D[i, j]` table.

/// A capped distance value. `cap = k + 1` is absorbing.
pub type Cost = u32;

#[inline]
pub fn cap_for(k: usize) -> Cost {
    Cost::try_from(k)
        .ok()
        .and_then(|k| k.checked_add(1))
        .expect("threshold too large")
}

#[inline]
pub fn sat_add(a: Cost, b: Cost, cap: Cost) -> Cost {
    a.saturating_add(b).min(cap)
}

/// `ceil((j - i) / 2)`: distance of a run of equally oriented parentheses.
#[inline]
pub fn run_cost(i: usize, j: usize, cap: Cost) -> Cost {
    let len = j.abs_diff(i);
    (len.div_ceil(2)).min(cap as usize) as Cost
}

/// `values[i][j] = min(ed_D(S[i..j)), cap)` for `0 <= i <= j <= n`.
///
/// Stored densely; entries below the diagonal are unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostTable {
    n: usize,
    cap: Cost,
    values: Vec<Cost>,
}

impl CostTable {
    /// A table with every entry at `cap`.
    pub fn new(n: usize, cap: Cost) -> Self {
        CostTable {
            n,
            cap,
            values: vec![cap; (n + 1) * (n + 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> Cost {
        self.cap
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cost {
        self.values[i * (self.n + 1) + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Cost) {
        self.values[i * (self.n + 1) + j] = v.min(self.cap);
    }

    /// `D[0, n]`, the capped distance of the whole sequence.
    pub fn total(&self) -> Cost {
        self.get(0, self.n)
    }

    /// The same table under a smaller cap.
    pub fn recapped(&self, cap: Cost) -> CostTable {
        assert!(cap <= self.cap, "cannot raise the cap of a computed table");
        CostTable {
            n: self.n,
            cap,
            values: self.values.iter().map(|&v| v.min(cap)).collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[Cost] {
        &self.values[i * (self.n + 1)..(i + 1) * (self.n + 1)]
    }
}
