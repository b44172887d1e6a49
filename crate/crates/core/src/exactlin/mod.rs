//! Exact dense linear algebra over GF(p) and the rationals.

pub mod field;
pub mod mat;
pub mod poly;
pub mod subspace;

pub use field::{FieldSpec, Scalar};
pub use mat::{solve_left_null_join, LinearSystem, Mat};
pub use subspace::{sum_intersect, EchelonBuilder, SubspaceBasis};
