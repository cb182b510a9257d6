//! Integer and `Z/4` linear algebra.

pub mod group;
pub mod int_matrix;
pub mod snf;
pub mod subquotient;
pub mod z4;

pub use group::{
    group_pushout, hom_cokernel, hom_cokernel_presented, hom_kernel, CyclicSum, FinAbTwoGroup,
    GroupHom,
};
pub use int_matrix::IntMatrix;
pub use snf::{snf, SnfResult};
pub use subquotient::{subquotient, Subquotient};
pub use z4::{z4_homology, z4_kernel, Z4Classifier, Z4Dense, Z4Homology, Z4Kernel, Z4Sparse};
