use serde::Serialize;

use crate::algebra::NonDistWitness;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::fixtures;
use crate::module::{is_indecomposable, radical_of, socle_of, Rep};

use super::FamilyInstance;

/// `m` as a module over `B`, the subalgebra spanned by `1, φ, ψ`.
pub fn restrict_to_b(m: &Rep, w: &NonDistWitness) -> Result<Rep> {
    let b = fixtures::local_b(m.field());
    let len = m.length();
    Rep::new(
        b,
        vec![len],
        vec![m.element_action(&w.phi), m.element_action(&w.psi)],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BKind {
    Simple,
    Preprojective,
    Regular,
    Preinjective,
    /// Odd length whose socle and top fit neither known class.
    Anomalous,
}

/// Invariants of an indecomposable `B`-module. `n` is the size parameter:
/// length `2n + 1` for odd lengths, `2n` for even ones, 0 for the simple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BModClass {
    pub kind: BKind,
    pub n: usize,
    pub length: usize,
    pub socle_length: usize,
    pub top_length: usize,
    pub phi_kernel_dim: usize,
}

pub fn classify_b_module(m: &Rep, cfg: &Config) -> Result<BModClass> {
    let alg = m.algebra();
    if !alg.same_as(&fixtures::local_b(m.field())) {
        return Err(Error::Unsupported(
            "classification is only for the local algebra B".into(),
        ));
    }
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    if !is_indecomposable(m, cfg)?.is_indecomposable() {
        return Err(Error::Decomposable);
    }
    let length = m.length();
    let socle_length = socle_of(m).length();
    let top_length = length - radical_of(m).length();
    let phi_kernel_dim = length - m.action(0).rank();
    let (kind, n) = if length == 1 {
        (BKind::Simple, 0)
    } else if length % 2 == 0 {
        (BKind::Regular, length / 2)
    } else {
        let n = length / 2;
        let kind = match (socle_length, top_length) {
            (s, t) if s == n + 1 && t == n => BKind::Preprojective,
            (s, t) if s == n && t == n + 1 => BKind::Preinjective,
            _ => BKind::Anomalous,
        };
        (kind, n)
    };
    Ok(BModClass {
        kind,
        n,
        length,
        socle_length,
        top_length,
        phi_kernel_dim,
    })
}

/// The three distinguished `B`-submodules used to show the families are indecomposable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CanonicalN {
    /// `Σ B z_i`, inside `M(n-1)`.
    Preprojective,
    /// `B x_(1) + Σ B z_i`, inside `R(n)`.
    Regular,
    /// `B x_(1) + B y_(n) + Σ B z_i`, inside `W(n)`.
    Preinjective,
}

/// Generators of the chosen `N`, as flat vectors of `V^n`.
pub fn canonical_n(fam: &FamilyInstance, which: CanonicalN) -> Vec<Vec<Scalar>> {
    let mut gens = Vec::new();
    if which != CanonicalN::Preprojective {
        gens.push(fam.x_at(1));
    }
    if which == CanonicalN::Preinjective {
        gens.push(fam.y_at(fam.n));
    }
    gens.extend(fam.z.iter().cloned());
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_witness;
    use crate::constructions::{build_family, find_xy, sub_coords};
    use crate::exactlin::{FieldSpec, Mat};
    use crate::module::spin;

    #[test]
    fn simple_restricts_to_simple() {
        let k = fixtures::kronecker(FieldSpec::Prime(2));
        let w = find_witness(&k).unwrap();
        let s = restrict_to_b(&Rep::simple(k, 1), &w).unwrap();
        let c = classify_b_module(&s, &Config::default()).unwrap();
        assert_eq!(c.kind, BKind::Simple);
    }

    #[test]
    fn restricted_v_is_preinjective_of_length_three() {
        let k = fixtures::kronecker(FieldSpec::Prime(3));
        let w = find_witness(&k).unwrap();
        let vd = find_xy(&k, &w, &Config::default()).unwrap();
        let b = restrict_to_b(&vd.v_rep, &w).unwrap();
        let c = classify_b_module(&b, &Config::default()).unwrap();
        assert_eq!(
            (c.kind, c.length, c.socle_length, c.top_length),
            (BKind::Preinjective, 3, 1, 2)
        );
    }

    #[test]
    fn decomposable_is_refused() {
        let b = fixtures::local_b(FieldSpec::Prime(2));
        let f = b.field();
        let z = Mat::zeros(f, 2, 2);
        let ss = Rep::new(b, vec![2], vec![z.clone(), z]).unwrap();
        assert!(matches!(
            classify_b_module(&ss, &Config::default()),
            Err(Error::Decomposable)
        ));
    }

    #[test]
    fn phi_and_psi_act_on_z_as_stated() {
        let k = fixtures::kronecker(FieldSpec::Prime(2));
        let w = find_witness(&k).unwrap();
        let vd = find_xy(&k, &w, &Config::default()).unwrap();
        let fam = build_family(&vd, 3).unwrap();
        let m = fam.m_prev_rep();
        let bm = restrict_to_b(&m, &w).unwrap();
        let c = |x: &[Scalar]| sub_coords(fam.space(), &fam.m_prev, x).unwrap();
        for i in 1..3 {
            let z = c(&fam.z[i - 1]);
            assert_eq!(bm.action(0).mul_vec(&z), c(&fam.u_at(i)));
            assert_eq!(bm.action(1).mul_vec(&z), c(&fam.u_at(i + 1)));
        }
        let n = spin(
            &bm,
            canonical_n(&fam, CanonicalN::Preprojective)
                .iter()
                .map(|g| c(g)),
        );
        assert_eq!(n.length(), 5);
    }
}
