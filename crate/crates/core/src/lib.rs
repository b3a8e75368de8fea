//! Exact verification of submodular pair-maps, partial metrics and normed
//! inverse semigroups.

pub mod algebra;
pub mod clifford_bridge;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod io;
mod kernels;
pub mod metrics;
pub mod norms;
pub mod ordermaps;
pub mod random;
pub mod report;

pub use error::{Error, Result};
