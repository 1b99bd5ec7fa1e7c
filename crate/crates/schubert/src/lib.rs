//! Exact symbolic computation with double Schubert polynomials for the
//! classical Weyl groups, their closed Grassmannian formulas, and the
//! degeneracy-locus classes they represent.

pub mod divdiff;
pub mod families;
pub mod quotient;
pub mod kernels;
pub mod loci;
pub mod lq1;
pub mod partitions;
pub mod poly;
pub mod verify;
pub mod weyl;

pub use poly::{Coef, Polynomial};
pub use weyl::{Family, GroupContext, SignedPermutation};
