//! Min-plus products: exponent-encoded small entries and the bounded
//! difference product, plus the kernel interface used by the recursion.

pub mod bd;
pub mod bitmat;
pub mod kernel;
pub mod matrix;
pub mod small;

pub use bd::{
    minplus_bd, minplus_bd_with_stats, phase1_block_approx, phase2_sampled_products, phase3_complete, BdMatrix,
    BdParams, BdStats, BlockApprox, SampleState, Strategy,
};
pub use kernel::{BdKernel, KernelStats, MinPlusKernel, NaiveKernel};
pub use matrix::{is_inf, tropical_add, Matrix, INF};
pub use small::minplus_small_entries;
