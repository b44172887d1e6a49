//! Built-in algebras addressable by name.

use std::sync::Arc;

use crate::algebra::{BoundQuiverAlgebra, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactlin::FieldSpec;

pub const FIXTURE_NAMES: [&str; 3] = ["kronecker", "local-b", "three-subspace"];

pub fn by_name(name: &str, field: FieldSpec) -> Result<Arc<BoundQuiverAlgebra>> {
    match name {
        "kronecker" => Ok(kronecker(field)),
        "local-b" => Ok(local_b(field)),
        "three-subspace" => Ok(three_subspace(field)),
        other => Err(Error::Parse(format!(
            "unknown fixture `{other}` (expected one of {})",
            FIXTURE_NAMES.join(", ")
        ))),
    }
}

/// Two vertices `a`, `b` and two arrows `alpha, beta: a -> b`.
pub fn kronecker(field: FieldSpec) -> Arc<BoundQuiverAlgebra> {
    let q = Quiver::from_strs(&["a", "b"], &[("alpha", "a", "b"), ("beta", "a", "b")])
        .expect("valid quiver");
    Arc::new(BoundQuiverAlgebra::build(q, vec![], field).expect("path algebra builds"))
}

/// The local algebra with basis `1, phi, psi` and radical square zero.
pub fn local_b(field: FieldSpec) -> Arc<BoundQuiverAlgebra> {
    let q =
        Quiver::from_strs(&["o"], &[("phi", "o", "o"), ("psi", "o", "o")]).expect("valid quiver");
    let rels = [
        ["phi", "phi"],
        ["psi", "psi"],
        ["phi", "psi"],
        ["psi", "phi"],
    ]
    .iter()
    .map(|ids| Relation::monomial(field.one(), q.path(ids).expect("loops compose")))
    .collect();
    Arc::new(BoundQuiverAlgebra::build(q, rels, field).expect("admissible relations"))
}

/// One sink `t` and three sources `s1, s2, s3` with arrows `a_i: s_i -> t`.
pub fn three_subspace(field: FieldSpec) -> Arc<BoundQuiverAlgebra> {
    let q = Quiver::from_strs(
        &["s1", "s2", "s3", "t"],
        &[("a1", "s1", "t"), ("a2", "s2", "t"), ("a3", "s3", "t")],
    )
    .expect("valid quiver");
    Arc::new(BoundQuiverAlgebra::build(q, vec![], field).expect("path algebra builds"))
}

/// Linearly oriented `1 -> 2 -> ... -> n`, no relations.
pub fn linear_a(field: FieldSpec, n: usize) -> Arc<BoundQuiverAlgebra> {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows = (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()));
    let q = Quiver::new(vertices, arrows).expect("valid quiver");
    Arc::new(BoundQuiverAlgebra::build(q, vec![], field).expect("path algebra builds"))
}

/// `n` isolated vertices: a product of copies of the field.
pub fn semisimple(field: FieldSpec, n: usize) -> Arc<BoundQuiverAlgebra> {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let q = Quiver::new(vertices, std::iter::empty()).expect("valid quiver");
    Arc::new(BoundQuiverAlgebra::build(q, vec![], field).expect("semisimple algebra builds"))
}
