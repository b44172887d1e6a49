//! Bound quiver algebras and non-distributivity witnesses.

pub mod bound;
pub mod quiver;
pub mod witness;

pub use bound::{AlgebraElement, BoundQuiverAlgebra, DEFAULT_PATH_BOUND};
pub use quiver::{Arrow, Path, Quiver, Relation};
pub use witness::{check_witness, find_witness, NonDistWitness, WitnessReport};
