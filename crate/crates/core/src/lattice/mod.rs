//! Submodule lattices and the uniform, couniform and accessibility predicates.

pub mod access;
pub mod predicates;
pub mod submodules;

pub use access::{
    is_accessible, is_accessible_with, AccessCertificate, AccessOptions, AccessStep, MemoTable,
    StepKind, StepSummary,
};
pub use predicates::{
    is_couniform_projection, is_uniform_inclusion, is_uniform_module,
    is_uniform_module_by_enumeration, Offender, OffenderSummary, Verdict,
};
pub use submodules::{
    all_submodules, cyclic_submodules, intermediate_submodules, line_count, maximal_submodules,
    normalized_vectors, simple_submodules, submodules_within,
};
