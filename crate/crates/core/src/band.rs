//! Cost values over a small set of positions, exchanged between tree nodes.

use crate::cost::Cost;
use crate::error::{Error, Result};

/// `min(D[i,j], cap)` for `i <= j` drawn from a sorted position set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    positions: Vec<usize>,
    cap: Cost,
    values: Vec<Cost>,
}

/// `[lo..lo+w] ∪ [hi-w..hi]`, sorted and deduplicated.
pub fn two_sided(lo: usize, hi: usize, w: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (lo..=lo + w).chain(hi.saturating_sub(w)..=hi).collect();
    p.sort_unstable();
    p.dedup();
    p
}

impl Band {
    pub fn new(positions: Vec<usize>, cap: Cost) -> Self {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let m = positions.len();
        Band {
            positions,
            cap,
            values: vec![cap; m * m],
        }
    }

    pub fn from_fn(positions: Vec<usize>, cap: Cost, mut f: impl FnMut(usize, usize) -> Cost) -> Self {
        let mut band = Band::new(positions, cap);
        let m = band.positions.len();
        for x in 0..m {
            for y in x..m {
                let v = f(band.positions[x], band.positions[y]).min(cap);
                band.values[x * m + y] = v;
            }
        }
        band
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn cap(&self) -> Cost {
        self.cap
    }

    pub fn index_of(&self, p: usize) -> Option<usize> {
        self.positions.binary_search(&p).ok()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.index_of(p).is_some()
    }

    /// Value at global positions `(i, j)`; `cap` when `i > j`.
    pub fn get(&self, i: usize, j: usize) -> Option<Cost> {
        let x = self.index_of(i)?;
        let y = self.index_of(j)?;
        if x > y {
            return Some(self.cap);
        }
        Some(self.values[x * self.positions.len() + y])
    }

    pub fn try_get(&self, i: usize, j: usize) -> Result<Cost> {
        self.get(i, j).ok_or(Error::MissingBandEntry(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cost) {
        let x = self.index_of(i).expect("position in band");
        let y = self.index_of(j).expect("position in band");
        let m = self.positions.len();
        self.values[x * m + y] = v.min(self.cap);
    }

    /// Fails unless the positions are exactly `expected`.
    pub fn check_positions(&self, expected: &[usize]) -> Result<()> {
        if self.positions == expected {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "band over {:?}, expected {:?}",
                summarize(&self.positions),
                summarize(expected)
            )))
        }
    }
}

// run-length form for error messages
fn summarize(p: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &x in p {
        match out.last_mut() {
            Some((_, hi)) if *hi + 1 == x => *hi = x,
            _ => out.push((x, x)),
        }
    }
    out
}
