use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra};
use crate::check::Check;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlin::{sum_intersect, SubspaceBasis};
use crate::module::{is_indecomposable, spin, Rep};

/// Idempotents `e`, `f` and independent `φ = eφf`, `ψ = eψf` annihilated by the radical on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonDistWitness {
    pub e: AlgebraElement,
    pub f: AlgebraElement,
    pub phi: AlgebraElement,
    pub psi: AlgebraElement,
}

impl NonDistWitness {
    /// The vertex whose simple module is `Ae/Je`, read off the idempotent part of `e`.
    pub fn e_vertex(&self, alg: &BoundQuiverAlgebra) -> Option<usize> {
        idempotent_vertex(alg, &self.e)
    }

    pub fn f_vertex(&self, alg: &BoundQuiverAlgebra) -> Option<usize> {
        idempotent_vertex(alg, &self.f)
    }
}

/// `Some(v)` when the vertex-idempotent coordinates of `x` are those of `e_v`.
pub fn idempotent_vertex(alg: &BoundQuiverAlgebra, x: &AlgebraElement) -> Option<usize> {
    let idx = alg.vertex_idempotent_indices();
    let mut found = None;
    for (v, &i) in idx.iter().enumerate() {
        let c = &x.0[i];
        if c.is_one() {
            if found.is_some() {
                return None;
            }
            found = Some(v);
        } else if !c.is_zero() {
            return None;
        }
    }
    found
}

/// Scans vertex pairs `(i, j)` in input order for `dim e_i Z e_j ≥ 2`, where
/// `Z` is the two-sided annihilator of the radical.
pub fn find_witness(alg: &BoundQuiverAlgebra) -> Option<NonDistWitness> {
    let z = alg.radical_annihilator();
    let n = alg.quiver().vertex_count();
    let zs: Vec<AlgebraElement> = z.vectors().into_iter().map(AlgebraElement).collect();
    for i in 0..n {
        let ei = alg.vertex_idempotent(i);
        for j in 0..n {
            let ej = alg.vertex_idempotent(j);
            let sandwich = SubspaceBasis::span(
                alg.field(),
                alg.dim(),
                zs.iter()
                    .map(|x| alg.multiply(&alg.multiply(&ei, x), &ej).0),
            );
            if sandwich.dim() >= 2 {
                let rows = sandwich.vectors();
                return Some(NonDistWitness {
                    e: ei,
                    f: ej,
                    phi: AlgebraElement(rows[0].clone()),
                    psi: AlgebraElement(rows[1].clone()),
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub checks: Vec<Check>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// The left ideal `Ae` as a module.
pub fn left_ideal(alg: &Arc<BoundQuiverAlgebra>, e: &AlgebraElement) -> Rep {
    let (reg, pos) = Rep::regular(alg.clone());
    let gens = (0..alg.dim()).map(|k| {
        let prod = alg.multiply(&alg.basis_element(k), e);
        let mut x = reg.zero_vector();
        for (i, c) in prod.0.into_iter().enumerate() {
            x[pos[i]] = c;
        }
        x
    });
    let sub = spin(&reg, gens);
    sub.to_rep(&reg).0
}

fn is_primitive(alg: &Arc<BoundQuiverAlgebra>, e: &AlgebraElement, cfg: &Config) -> Result<bool> {
    if e.is_zero() {
        return Ok(false);
    }
    match is_indecomposable(&left_ideal(alg, e), cfg) {
        Ok(v) => Ok(v.is_indecomposable()),
        Err(Error::ZeroModule) => Ok(false),
        Err(err) => Err(err),
    }
}

/// Evaluates every defining condition of a witness separately.
pub fn check_witness(
    alg: &Arc<BoundQuiverAlgebra>,
    w: &NonDistWitness,
    cfg: &Config,
) -> Result<WitnessReport> {
    let mul = |x: &AlgebraElement, y: &AlgebraElement| alg.multiply(x, y);
    let rad: Vec<AlgebraElement> = alg
        .radical_indices()
        .iter()
        .map(|&i| alg.basis_element(i))
        .collect();
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool| checks.push(Check::new(name, passed));
    push("e idempotent", mul(&w.e, &w.e) == w.e);
    push("f idempotent", mul(&w.f, &w.f) == w.f);
    push(
        "e primitive",
        mul(&w.e, &w.e) == w.e && is_primitive(alg, &w.e, cfg)?,
    );
    push(
        "f primitive",
        mul(&w.f, &w.f) == w.f && is_primitive(alg, &w.f, cfg)?,
    );
    push("phi = e phi f", mul(&mul(&w.e, &w.phi), &w.f) == w.phi);
    push("psi = e psi f", mul(&mul(&w.e, &w.psi), &w.f) == w.psi);
    push("J phi = 0", rad.iter().all(|r| mul(r, &w.phi).is_zero()));
    push("phi J = 0", rad.iter().all(|r| mul(&w.phi, r).is_zero()));
    push("J psi = 0", rad.iter().all(|r| mul(r, &w.psi).is_zero()));
    push("psi J = 0", rad.iter().all(|r| mul(&w.psi, r).is_zero()));
    let span = SubspaceBasis::span(alg.field(), alg.dim(), [w.phi.0.clone(), w.psi.0.clone()]);
    push("phi, psi independent", span.dim() == 2);
    Ok(WitnessReport { checks })
}

/// The spans `I1 = kφ`, `I2 = kψ`, `I3 = k(φ+ψ)` have pairwise zero
/// intersections and pairwise equal sums, so the ideal lattice is not distributive.
pub fn ideals_are_non_distributive(alg: &BoundQuiverAlgebra, w: &NonDistWitness) -> bool {
    let f = alg.field();
    let line = |x: &AlgebraElement| SubspaceBasis::span(f, alg.dim(), [x.0.clone()]);
    let ideals = [line(&w.phi), line(&w.psi), line(&alg.add(&w.phi, &w.psi))];
    if ideals.iter().any(|i| i.dim() != 1) {
        return false;
    }
    let mut sums = Vec::new();
    for a in 0..3 {
        for b in a + 1..3 {
            let (s, meet) = sum_intersect(&ideals[a], &ideals[b]).expect("same ambient");
            if !meet.is_zero() {
                return false;
            }
            sums.push(s);
        }
    }
    sums.windows(2).all(|p| p[0] == p[1])
}
