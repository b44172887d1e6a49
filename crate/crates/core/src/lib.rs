//! Exact computations with finite-dimensional modules over bound quiver
//! algebras: decomposition, submodule lattices, uniform inclusions,
//! couniform projections and accessibility, together with the module
//! families `M(n)`, `R(n)`, `W(n)` built over non-distributive algebras.

pub mod algebra;
pub mod check;
pub mod config;
pub mod constructions;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod module;
mod par;

pub use config::Config;
pub use error::{Error, Result};
