//! Dyck edit distance: exact and threshold algorithms.

pub mod band;
pub mod codec;
pub mod cost;
pub mod error;
pub mod gen;
pub mod geometry;
pub mod invariants;
pub mod lcp;
pub mod lvtrap;
pub mod minplus;
pub mod oracle;
pub mod profile;
pub mod reduce;
pub mod seq;
pub mod solver;
pub mod valiant;
pub mod valleydp;

pub use codec::{format_ascii, parse_ascii, Encoding};
pub use cost::{Cost, CostTable};
pub use error::{Error, Result};
pub use profile::{height_profile, midpoint_set, HeightProfile};
pub use seq::{pair_cost, Orientation, ParenAlphabet, ParenSeq, Symbol};
