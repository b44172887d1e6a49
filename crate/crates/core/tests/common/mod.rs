//! Brute-force oracles and random module generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use accmod_core::algebra::{find_witness, BoundQuiverAlgebra};
use accmod_core::config::Config;
use accmod_core::constructions::{build_family, find_xy, FamilyInstance, VData};
use accmod_core::exactlin::{FieldSpec, Mat, Scalar, SubspaceBasis};
use accmod_core::fixtures;
use accmod_core::module::{direct_sum, ModuleMap, Rep, SubRep};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Basis of `Hom(m, n)` from the raw intertwining equations `X_t A = B X_s`,
/// assembled entry by entry.
pub fn hom_basis(m: &Rep, n: &Rep) -> Vec<ModuleMap> {
    let f = m.field();
    let (dm, dn) = (m.dims(), n.dims());
    let mut offsets = vec![0];
    for v in 0..dm.len() {
        offsets.push(offsets[v] + dn[v] * dm[v]);
    }
    let unknowns = offsets[dm.len()];
    let var = |v: usize, i: usize, k: usize| offsets[v] + i * dm[v] + k;
    let mut rows = Vec::new();
    for (ai, a) in m.algebra().quiver().arrows().iter().enumerate() {
        let (am, an) = (m.action(ai), n.action(ai));
        let (s, t) = (a.source, a.target);
        for i in 0..dn[t] {
            for j in 0..dm[s] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..dm[t] {
                    row[var(t, i, k)] = &row[var(t, i, k)] + am.get(k, j);
                }
                for k in 0..dn[s] {
                    row[var(s, k, j)] = &row[var(s, k, j)] - an.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        SubspaceBasis::full(f, unknowns)
    } else {
        Mat::from_rows(f, unknowns, rows).unwrap().kernel()
    };
    kernel
        .vectors()
        .into_iter()
        .map(|x| {
            ModuleMap::from_blocks(
                (0..dm.len())
                    .map(|v| Mat::from_fn(f, dn[v], dm[v], |i, k| x[var(v, i, k)].clone()))
                    .collect(),
            )
        })
        .collect()
}

pub fn end_basis(m: &Rep) -> Vec<ModuleMap> {
    hom_basis(m, m)
}

/// Every element of a finite-dimensional space over a finite field, as coefficient vectors.
pub fn all_coefficients(f: FieldSpec, d: usize) -> Vec<Vec<Scalar>> {
    let q = f.order().expect("finite field");
    let total = q.pow(d as u32);
    (0..total)
        .map(|mut k| {
            (0..d)
                .map(|_| {
                    let c = f.from_i64((k % q) as i64);
                    k /= q;
                    c
                })
                .collect()
        })
        .collect()
}

fn combine(basis: &[ModuleMap], m: &Rep, n: &Rep, c: &[Scalar]) -> ModuleMap {
    basis
        .iter()
        .zip(c)
        .fold(ModuleMap::zero(m, n), |acc, (b, x)| acc.add(&b.scale(x)))
}

/// Every element of `Hom(m, n)`.
pub fn all_homs(m: &Rep, n: &Rep) -> Vec<ModuleMap> {
    let basis = hom_basis(m, n);
    all_coefficients(m.field(), basis.len())
        .iter()
        .map(|c| combine(&basis, m, n, c))
        .collect()
}

/// Isomorphism by searching all of `Hom(m, n)` for an invertible map.
pub fn brute_isomorphic(m: &Rep, n: &Rep) -> bool {
    m.dims() == n.dims() && all_homs(m, n).iter().any(ModuleMap::is_iso)
}

/// True when `End(m)` holds an idempotent other than 0 and 1, found by enumerating all of `End(m)`.
pub fn has_nontrivial_idempotent(m: &Rep) -> bool {
    let id = ModuleMap::identity(m);
    all_homs(m, m)
        .iter()
        .any(|e| !e.is_zero() && e != &id && e.is_idempotent())
}

/// Brute indecomposability: nonzero with no nontrivial idempotent endomorphism.
pub fn brute_indecomposable(m: &Rep) -> bool {
    !m.is_zero() && !has_nontrivial_idempotent(m)
}

/// All subspaces of `F_q^d`, by closing `{0}` under adding single vectors.
pub fn all_subspaces(f: FieldSpec, d: usize) -> Vec<SubspaceBasis> {
    let vectors = all_coefficients(f, d);
    let mut seen: HashSet<SubspaceBasis> = HashSet::new();
    let zero = SubspaceBasis::zero(f, d);
    seen.insert(zero.clone());
    let mut out = vec![zero];
    let mut i = 0;
    while i < out.len() {
        let s = out[i].clone();
        for v in &vectors {
            if s.contains(v) {
                continue;
            }
            let mut vs = s.vectors();
            vs.push(v.clone());
            let t = SubspaceBasis::span(f, d, vs);
            if seen.insert(t.clone()) {
                out.push(t);
            }
        }
        i += 1;
    }
    out
}

/// Every tuple of vertex subspaces closed under the arrows.
pub fn brute_submodules(m: &Rep) -> Vec<SubRep> {
    let f = m.field();
    let per_vertex: Vec<Vec<SubspaceBasis>> =
        m.dims().iter().map(|&d| all_subspaces(f, d)).collect();
    let mut tuples: Vec<Vec<SubspaceBasis>> = vec![Vec::new()];
    for choices in &per_vertex {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                choices.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .map(SubRep::from_parts)
        .filter(|s| s.is_closed(m))
        .collect()
}

pub fn random_mat(f: FieldSpec, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat {
    let q = f.order().unwrap();
    Mat::from_fn(f, rows, cols, |_, _| f.from_i64(rng.gen_range(0..q) as i64))
}

pub fn random_invertible(f: FieldSpec, rng: &mut ChaCha8Rng, n: usize) -> Mat {
    loop {
        let m = random_mat(f, rng, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random change of basis at every vertex.
pub fn scramble(m: &Rep, rng: &mut ChaCha8Rng) -> Rep {
    let g: Vec<Mat> = m
        .dims()
        .iter()
        .map(|&d| random_invertible(m.field(), rng, d))
        .collect();
    m.change_basis(&g).unwrap()
}

/// A module over a path algebra without relations, with random arrow matrices.
pub fn random_free_rep(alg: &Arc<BoundQuiverAlgebra>, dims: &[usize], rng: &mut ChaCha8Rng) -> Rep {
    let f = alg.field();
    let actions = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| random_mat(f, rng, dims[a.target], dims[a.source]))
        .collect();
    Rep::new(alg.clone(), dims.to_vec(), actions).unwrap()
}

/// A radical-square-zero module over the local algebra `B`: `φ`, `ψ` map a
/// top of dimension `t` into a socle part of dimension `s`, then the basis is scrambled.
pub fn random_local_b_rep(f: FieldSpec, t: usize, s: usize, rng: &mut ChaCha8Rng) -> Rep {
    let b = fixtures::local_b(f);
    let n = t + s;
    let mut phi = Mat::zeros(f, n, n);
    let mut psi = Mat::zeros(f, n, n);
    phi.set_block(t, 0, &random_mat(f, rng, s, t));
    psi.set_block(t, 0, &random_mat(f, rng, s, t));
    let m = Rep::new(b, vec![n], vec![phi, psi]).unwrap();
    scramble(&m, rng)
}

fn kronecker_rep(f: FieldSpec, dims: [usize; 2], alpha: &[&[i64]], beta: &[&[i64]]) -> Rep {
    let k = fixtures::kronecker(f);
    let mk = |rows: &[&[i64]]| {
        if rows.is_empty() {
            Mat::zeros(f, dims[1], dims[0])
        } else {
            Mat::from_i64(f, rows)
        }
    };
    Rep::new(k, dims.to_vec(), vec![mk(alpha), mk(beta)]).unwrap()
}

/// Small indecomposable Kronecker modules over GF(p), one per listed shape.
pub fn kronecker_indecomposables(f: FieldSpec) -> Vec<Rep> {
    let k = fixtures::kronecker(f);
    vec![
        Rep::simple(k.clone(), 0),
        Rep::simple(k.clone(), 1),
        kronecker_rep(f, [1, 1], &[&[1]], &[&[0]]),
        kronecker_rep(f, [1, 1], &[&[0]], &[&[1]]),
        kronecker_rep(f, [1, 1], &[&[1]], &[&[1]]),
        kronecker_rep(f, [1, 2], &[&[1], &[0]], &[&[0], &[1]]),
        kronecker_rep(f, [2, 1], &[&[1, 0]], &[&[0, 1]]),
        kronecker_rep(f, [2, 2], &[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]),
    ]
}

/// Direct sum of the chosen summands with a random basis, and the planted dimension vectors.
pub fn planted_sum(parts: &[Rep], rng: &mut ChaCha8Rng) -> (Rep, Vec<Vec<usize>>) {
    let sum = direct_sum(parts).unwrap().rep;
    let mut dims: Vec<Vec<usize>> = parts.iter().map(|p| p.dims().to_vec()).collect();
    dims.sort();
    (scramble(&sum, rng), dims)
}

/// The witness data and the families `n = 1..=upto` for a named fixture.
pub fn families(fixture: &str, f: FieldSpec, upto: usize) -> (VData, Vec<FamilyInstance>) {
    let alg = fixtures::by_name(fixture, f).unwrap();
    let w = find_witness(&alg).expect("fixture is non-distributive");
    let vd = find_xy(&alg, &w, &Config::default()).unwrap();
    let fams = (1..=upto).map(|n| build_family(&vd, n).unwrap()).collect();
    (vd, fams)
}

/// `M(n-1)`, `R(n)`, `W(n)` for every family, labelled.
pub fn family_modules(fams: &[FamilyInstance]) -> Vec<(String, Rep)> {
    fams.iter()
        .flat_map(|f| {
            let n = f.n;
            [
                (format!("M({})", n - 1), f.m_prev_rep()),
                (format!("R({n})"), f.r_rep()),
                (format!("W({n})"), f.w_rep()),
            ]
        })
        .collect()
}
