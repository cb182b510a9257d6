//! Exact homological algebra over `Z/4` for the geometric fixed points of
//! real topological cyclic homology of `Z/4`.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: integer Smith normal form, finite abelian groups and
//!   homomorphisms between them, and a dense eliminator over `Z/4`.
//! * [`simplicial`]: surjections in the simplex category, truncated chain
//!   complexes and the Dold-Kan functor, Moore complexes.
//! * [`quad`]: the fixed-point square `F(M) = (M ⊗ M)^{C2}`, the tensor square
//!   `G(M) = M ⊗ M` and the inclusion `F ⇒ G` on based free modules.
//! * [`nadf`]: non-abelian derived functors `L_i^(n) T(M)` with explicit
//!   cycle representatives, induced maps and the parity functional.
//! * [`tcr`]: assembly of the homotopy groups of `THR(Z/4)^φ` and its fixed
//!   points, the maps `f` and `r`, the kernel/cokernel tables and bounds.
//! * [`cache`] and [`config`]: on-disk result cache and run configuration.

pub mod cache;
pub mod config;
pub mod error;
pub mod linalg;
pub mod nadf;
pub mod oracle;
pub mod quad;
pub mod report;
pub mod simplicial;
pub mod tcr;

pub use error::{Error, Result};

/// Hash of the crate sources, used to invalidate cached derived values.
pub const CODE_VERSION: &str = env!("TCRGF_CODE_VERSION");
