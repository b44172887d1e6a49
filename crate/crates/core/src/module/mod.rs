//! Modules as quiver representations.

pub mod decomp;
pub mod duality;
pub mod hom;
pub mod ops;
pub mod rep;

pub use decomp::{
    decompose, is_indecomposable, is_isomorphic, DecompResult, Indecomposability,
    LocalityCertificate, Split, Summand,
};
pub use duality::{dual, dual_over, injective_envelope_simple};
pub use hom::{end_ring, hom_space, ring_radical, EndRing};
pub use ops::{
    image_of, is_semisimple, preimage, quotient, radical_of, socle_of, spin, spin_from, top_of,
};
pub use rep::{check_rep, direct_sum, DirectSum, ModuleMap, RelationReport, Rep, SubRep};
