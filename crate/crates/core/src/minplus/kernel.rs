//! Pluggable min-plus products for the interval recursion.

use super::bd::{minplus_bd_with_stats, BdMatrix, BdParams};
use super::matrix::Matrix;
use crate::error::Result;
use crate::oracle::minplus_naive;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KernelStats {
    pub calls: u64,
    /// `rows · inner · cols` summed over calls.
    pub triples: u64,
    /// Triples handled by the sampled rounds (BD kernel only).
    pub covered: u64,
    /// Block-level triples completed directly (BD kernel only).
    pub interesting: u64,
}

pub trait MinPlusKernel {
    fn multiply(&mut self, a: &Matrix, b: &Matrix) -> Result<Matrix>;
    fn stats(&self) -> KernelStats;
}

#[derive(Debug, Clone, Default)]
pub struct NaiveKernel {
    stats: KernelStats,
}

impl MinPlusKernel for NaiveKernel {
    fn multiply(&mut self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        self.stats.calls += 1;
        self.stats.triples += (a.rows() * a.cols() * b.cols()) as u64;
        minplus_naive(a, b)
    }

    fn stats(&self) -> KernelStats {
        self.stats
    }
}

/// Checks that the left operand is column-BD and the right one row-BD, and
/// fails otherwise.
#[derive(Debug, Clone, Default)]
pub struct BdKernel {
    params: BdParams,
    stats: KernelStats,
}

impl BdKernel {
    pub fn new(params: BdParams) -> Self {
        BdKernel {
            params,
            stats: KernelStats::default(),
        }
    }
}

impl MinPlusKernel for BdKernel {
    fn multiply(&mut self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        let a = BdMatrix::column(a.clone())?;
        let b = BdMatrix::row(b.clone())?;
        let mut params = self.params;
        // vary the seed per call so rounds differ between calls
        params.seed = params.seed.wrapping_add(self.stats.calls);
        let (c, st) = minplus_bd_with_stats(&a, &b, &params)?;
        self.stats.calls += 1;
        self.stats.triples += (a.matrix().rows() * a.matrix().cols() * b.matrix().cols()) as u64;
        self.stats.covered += st.covered;
        self.stats.interesting += st.interesting;
        Ok(c)
    }

    fn stats(&self) -> KernelStats {
        self.stats
    }
}
