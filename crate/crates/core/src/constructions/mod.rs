//! The modules `V`, `M(n)`, `R(n)`, `W(n)` built from a non-distributivity
//! witness, restriction to the subalgebra `B = k<1, φ, ψ>`, and the
//! checkable lemmas and counterexamples around them.

mod bmod;
mod family;
mod lemmas;
mod remarks;
mod vdata;

pub use bmod::{canonical_n, classify_b_module, restrict_to_b, BKind, BModClass, CanonicalN};
pub use family::{
    build_family, chain, verify_chain, ChainLink, FamilyInstance, LinkKind, LinkReport,
};
pub use lemmas::{
    check_restriction_lemma_1, check_restriction_lemma_2, check_step4, lemma1_instances,
    lemma2_instances, semisimple_complement, step4_exhaustive, LemmaInstance, LemmaReport,
    Step4Branch, Step4Report,
};
pub use remarks::{remark3_instance, remark_char_ne_2, CharNe2Report, Remark3Report};
pub use vdata::{find_xy, VData};

use crate::exactlin::SubspaceBasis;
use crate::exactlin::{Mat, Scalar};
use crate::module::{ModuleMap, Rep, SubRep};

pub(crate) fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vscale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

/// Coordinates of the flat vector `x` of `parent` in the basis of `sub.to_rep(parent)`.
pub fn sub_coords(parent: &Rep, sub: &SubRep, x: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut out = Vec::new();
    for v in 0..parent.vertex_count() {
        out.extend(sub.part(v).coords(parent.component(x, v))?);
    }
    Some(out)
}

/// `inner ⊆ outer` (both in the same parent) as a submodule of `outer.to_rep(..)`.
pub fn relative(outer: &SubRep, inner: &SubRep) -> Option<SubRep> {
    let mut parts = Vec::new();
    for (o, i) in outer.parts().iter().zip(inner.parts()) {
        let coords: Option<Vec<_>> = i.vectors().iter().map(|x| o.coords(x)).collect();
        parts.push(SubspaceBasis::span(o.field(), o.dim(), coords?));
    }
    Some(SubRep::from_parts(parts))
}

/// The restriction of `map` to `src_sub`, landing in `tgt_sub`, in the bases
/// of their `to_rep` modules. `None` if the image leaves `tgt_sub`.
pub fn restrict_map(map: &ModuleMap, src_sub: &SubRep, tgt_sub: &SubRep) -> Option<ModuleMap> {
    let f = map.field();
    let mut blocks = Vec::new();
    for v in 0..map.blocks().len() {
        let cols: Option<Vec<Vec<Scalar>>> = src_sub
            .part(v)
            .vectors()
            .iter()
            .map(|b| tgt_sub.part(v).coords(&map.block(v).mul_vec(b)))
            .collect();
        let cols = cols?;
        let rows = tgt_sub.part(v).dim();
        blocks.push(Mat::from_fn(f, rows, cols.len(), |r, c| cols[c][r].clone()));
    }
    Some(ModuleMap::from_blocks(blocks))
}
