use std::sync::Arc;

use crate::algebra::BoundQuiverAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::Mat;
use crate::module::ops::socle_of;
use crate::module::rep::{ModuleMap, Rep};

/// `D M = Hom_k(M, k)` as a module over the opposite algebra, using dual bases.
pub fn dual(m: &Rep) -> Rep {
    dual_over(m, Arc::new(m.algebra().opposite())).expect("opposite algebra matches")
}

/// Like [`dual`], with the opposite algebra supplied by the caller. Passing
/// the original algebra of a module over an opposite algebra gives back a
/// module over the original allocation.
pub fn dual_over(m: &Rep, opposite: Arc<BoundQuiverAlgebra>) -> Result<Rep> {
    let expected = m.algebra().opposite();
    if !opposite.same_as(&expected) {
        return Err(Error::DimensionMismatch(
            "target algebra is not the opposite algebra".into(),
        ));
    }
    let actions = m.actions().iter().map(Mat::transpose).collect();
    Rep::new_unchecked(opposite, m.dims().to_vec(), actions)
}

/// The injective envelope `E(i)` of the simple module at vertex `i`, computed
/// as the dual of the projective `P(i)` over the opposite algebra, with the
/// embedding of the simple module onto its socle.
pub fn injective_envelope_simple(
    algebra: &Arc<BoundQuiverAlgebra>,
    i: usize,
) -> Result<(Rep, ModuleMap)> {
    let opposite = Arc::new(algebra.opposite());
    let p = Rep::projective(opposite, i);
    let e = dual_over(&p, algebra.clone())?;
    let soc = socle_of(&e);
    if soc.length() != 1 || soc.part(i).dim() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "socle of E({}) has dimension vector {:?}",
            algebra.quiver().vertices()[i],
            soc.dims()
        )));
    }
    let f = algebra.field();
    let blocks = (0..e.vertex_count())
        .map(|v| {
            if v == i {
                Mat::column(f, &soc.part(i).vectors()[0])
            } else {
                Mat::zeros(f, e.dims()[v], 0)
            }
        })
        .collect();
    Ok((e, ModuleMap::from_blocks(blocks)))
}
