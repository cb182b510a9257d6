//! Simplex category combinatorics, truncated chain complexes and Dold-Kan.

pub mod chain;
pub mod dold_kan;
pub mod surjection;

pub use chain::{standard_resolution, BaseModule, TruncatedChainComplex};
pub use dold_kan::{alternating_sum, dold_kan, BasisLabel, SimplicialLevel, TruncatedSimplicialModule};
pub use surjection::{enumerate_surjections, epi_mono_factor, MonotoneMap, Surjection};
