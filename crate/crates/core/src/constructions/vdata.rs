use std::sync::Arc;

use crate::algebra::{check_witness, BoundQuiverAlgebra, NonDistWitness};
use crate::check::Check;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlin::{Mat, Scalar};
use crate::module::{injective_envelope_simple, socle_of, spin, Rep, SubRep};

use super::sub_coords;

/// Elements `x = fx`, `y = fy` of `E = E(e)` with `φx = 0`, `ψx = φy = u ≠ 0`,
/// `ψy = 0`, and the submodule `V` they generate.
#[derive(Clone, Debug)]
pub struct VData {
    pub witness: NonDistWitness,
    pub e: Rep,
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    pub u: Vec<Scalar>,
    pub v: SubRep,
    /// `V` as a module, and `x`, `y`, `u` in its basis.
    pub v_rep: Rep,
    pub xv: Vec<Scalar>,
    pub yv: Vec<Scalar>,
    pub uv: Vec<Scalar>,
}

impl VData {
    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        self.e.algebra()
    }

    /// The defining identities, re-evaluated from scratch.
    pub fn checks(&self) -> Vec<Check> {
        let e = &self.e;
        let w = &self.witness;
        let act = |a, v: &[Scalar]| e.act(a, v);
        let zero = e.zero_vector();
        vec![
            Check::new("phi x = 0", act(&w.phi, &self.x) == zero),
            Check::new("psi x = u", act(&w.psi, &self.x) == self.u),
            Check::new("phi y = u", act(&w.phi, &self.y) == self.u),
            Check::new("psi y = 0", act(&w.psi, &self.y) == zero),
            Check::new("u != 0", self.u != zero),
            Check::new("x = f x", act(&w.f, &self.x) == self.x),
            Check::new("y = f y", act(&w.f, &self.y) == self.y),
            Check::new("u in soc E", socle_of(e).contains(e, &self.u)),
            Check::new(
                "V = spin{x, y}",
                spin(e, [self.x.clone(), self.y.clone()]) == self.v,
            ),
        ]
    }
}

/// Solves for `x`, `y` inside the injective envelope of the simple at the vertex of `e`.
pub fn find_xy(alg: &Arc<BoundQuiverAlgebra>, w: &NonDistWitness, cfg: &Config) -> Result<VData> {
    let report = check_witness(alg, w, cfg)?;
    if !report.passed() {
        return Err(Error::DegenerateWitness(format!(
            "witness fails: {}",
            report.failures().join(", ")
        )));
    }
    let vertex = w.e_vertex(alg).ok_or_else(|| {
        Error::DegenerateWitness("e is not congruent to a vertex idempotent".into())
    })?;
    let (e, _) = injective_envelope_simple(alg, vertex)?;
    let f = alg.field();
    let n = e.length();
    let phi = e.element_action(&w.phi);
    let psi = e.element_action(&w.psi);
    let fixed = Mat::identity(f, n).sub(&e.element_action(&w.f));
    let z = Mat::zeros(f, n, n);
    // Unknowns (x, y) stacked.
    let system = phi
        .hstack(&z)
        .vstack(&psi.hstack(&phi.scale(&-f.one())))
        .vstack(&z.hstack(&psi))
        .vstack(&fixed.hstack(&z))
        .vstack(&z.hstack(&fixed));
    let solutions = system.kernel();
    let (x, y) = solutions
        .vectors()
        .into_iter()
        .map(|s| (s[..n].to_vec(), s[n..].to_vec()))
        .find(|(x, _)| psi.mul_vec(x).iter().any(|c| !c.is_zero()))
        .ok_or_else(|| Error::DegenerateWitness("every solution has psi x = 0".into()))?;
    let u = psi.mul_vec(&x);
    let v = spin(&e, [x.clone(), y.clone()]);
    let (v_rep, _) = v.to_rep(&e);
    let coords = |a: &[Scalar]| sub_coords(&e, &v, a).expect("generator lies in V");
    let (xv, yv, uv) = (coords(&x), coords(&y), coords(&u));
    Ok(VData {
        witness: w.clone(),
        e,
        x,
        y,
        u,
        v,
        v_rep,
        xv,
        yv,
        uv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_witness;
    use crate::check::all_passed;
    use crate::exactlin::FieldSpec;
    use crate::fixtures;
    use crate::module::SubRep;

    fn vdata(alg: &Arc<BoundQuiverAlgebra>) -> VData {
        let w = find_witness(alg).unwrap();
        find_xy(alg, &w, &Config::default()).unwrap()
    }

    #[test]
    fn kronecker_v_is_e() {
        let k = fixtures::kronecker(FieldSpec::Prime(2));
        let vd = vdata(&k);
        assert_eq!(vd.e.dims(), &[2, 1]);
        assert_eq!(vd.v, SubRep::whole(&vd.e));
        assert_eq!(
            socle_of(&vd.e).flat_subspace(&vd.e).vectors(),
            vec![vd.u.clone()]
        );
        assert!(all_passed(&vd.checks()));
    }

    #[test]
    fn local_b_v_has_length_three() {
        for p in [2, 3] {
            let b = fixtures::local_b(FieldSpec::Prime(p));
            let vd = vdata(&b);
            assert_eq!(vd.v.length(), 3);
            assert!(all_passed(&vd.checks()));
        }
    }

    #[test]
    fn psi_equal_phi_is_refused() {
        let k = fixtures::kronecker(FieldSpec::Prime(2));
        let mut w = find_witness(&k).unwrap();
        w.psi = w.phi.clone();
        assert!(matches!(
            find_xy(&k, &w, &Config::default()),
            Err(Error::DegenerateWitness(_))
        ));
    }
}
