use std::collections::HashSet;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Mat, Scalar, SubspaceBasis};
use crate::module::{image_of, preimage, quotient, socle_of, spin, top_of, Rep, SubRep};
use crate::par;

fn require_finite(f: FieldSpec, what: &'static str) -> Result<u64> {
    f.order().ok_or(Error::NeedsFiniteField(what))
}

/// Nonzero vectors of `F_q^d` whose first nonzero entry is 1, in counting order.
pub fn normalized_vectors(f: FieldSpec, d: usize) -> Vec<Vec<Scalar>> {
    let Some(q) = f.order() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for lead in 0..d {
        let tail = d - lead - 1;
        let count = q.pow(tail as u32);
        for k in 0..count {
            let mut v = vec![f.zero(); d];
            v[lead] = f.one();
            let mut x = k;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = f.from_i64((x % q) as i64);
                x /= q;
            }
            out.push(v);
        }
    }
    out
}

/// `(q^d - 1) / (q - 1)`, the number of lines in `F_q^d`.
pub fn line_count(q: u64, d: usize) -> u64 {
    (0..d).map(|i| q.pow(i as u32)).sum()
}

/// Every maximal submodule, as the preimage of a hyperplane of one vertex of the top.
/// Over `GF(q)` there are `Σ_v (q^(t_v) - 1)/(q - 1)` of them, `t` the top dimension vector.
pub fn maximal_submodules(m: &Rep) -> Result<Vec<SubRep>> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let f = m.field();
    let (top, proj) = top_of(m);
    if f.order().is_none() && top.dims().iter().any(|&t| t > 1) {
        return Err(Error::NeedsFiniteField(
            "maximal submodules when a top vertex space has dimension > 1",
        ));
    }
    let mut out = Vec::new();
    for v in 0..top.vertex_count() {
        let t = top.dims()[v];
        let functionals = if f.order().is_some() {
            normalized_vectors(f, t)
        } else if t == 1 {
            vec![vec![f.one()]]
        } else {
            Vec::new()
        };
        for phi in functionals {
            let hyper = Mat::from_rows(f, t, vec![phi]).expect("one row").kernel();
            let mut parts: Vec<SubspaceBasis> = top
                .dims()
                .iter()
                .map(|&d| SubspaceBasis::full(f, d))
                .collect();
            parts[v] = hyper;
            out.push(preimage(&proj, &SubRep::from_parts(parts)));
        }
    }
    Ok(out)
}

/// Every simple submodule: the lines in each vertex part of the socle.
pub fn simple_submodules(m: &Rep) -> Result<Vec<SubRep>> {
    let f = m.field();
    let soc = socle_of(m);
    if f.order().is_none() && soc.dims().iter().any(|&d| d > 1) {
        return Err(Error::NeedsFiniteField(
            "simple submodules when a socle vertex space has dimension > 1",
        ));
    }
    let mut out = Vec::new();
    for v in 0..m.vertex_count() {
        let part = soc.part(v);
        let coeffs = if f.order().is_some() {
            normalized_vectors(f, part.dim())
        } else if part.dim() == 1 {
            vec![vec![f.one()]]
        } else {
            Vec::new()
        };
        for c in coeffs {
            let mut parts: Vec<SubspaceBasis> = m
                .dims()
                .iter()
                .map(|&d| SubspaceBasis::zero(f, d))
                .collect();
            parts[v] = SubspaceBasis::span(f, m.dims()[v], [part.combination(&c)]);
            out.push(SubRep::from_parts(parts));
        }
    }
    Ok(out)
}

/// The cyclic submodules generated by vertex-homogeneous vectors, deduplicated.
pub fn cyclic_submodules(m: &Rep, cfg: &Config) -> Result<Vec<SubRep>> {
    let f = m.field();
    require_finite(f, "submodule enumeration")?;
    let mut gens = Vec::new();
    for v in 0..m.vertex_count() {
        for c in normalized_vectors(f, m.dims()[v]) {
            gens.push(m.embed(v, &c));
        }
    }
    let spun = par::map(cfg, &gens, |x| spin(m, [x.clone()]));
    let mut seen = HashSet::new();
    Ok(spun
        .into_iter()
        .filter(|s| seen.insert(s.clone()))
        .collect())
}

/// The whole submodule lattice, ordered by length and then by discovery.
///
/// Every submodule is a sum of cyclic submodules generated by
/// vertex-homogeneous vectors, so closing `{0}` under adding those finds all.
pub fn all_submodules(m: &Rep, cfg: &Config) -> Result<Vec<SubRep>> {
    let cyclics = cyclic_submodules(m, cfg)?;
    let zero = SubRep::zero(m);
    let mut seen: HashSet<SubRep> = HashSet::new();
    seen.insert(zero.clone());
    let mut out = vec![zero];
    let mut i = 0;
    while i < out.len() {
        let s = out[i].clone();
        for c in &cyclics {
            if c.is_subset_of(&s) {
                continue;
            }
            let t = s.sum(c);
            if seen.insert(t.clone()) {
                out.push(t);
                if out.len() > cfg.cap {
                    return Err(Error::CapExceeded {
                        cap: cfg.cap,
                        found: out.len(),
                    });
                }
            }
        }
        i += 1;
    }
    out.sort_by_key(SubRep::length);
    Ok(out)
}

/// Submodules `U` with `lower ⊆ U ⊆ m`, obtained by pulling back the lattice of `m / lower`.
pub fn intermediate_submodules(m: &Rep, lower: &SubRep, cfg: &Config) -> Result<Vec<SubRep>> {
    let (q, proj) = quotient(m, lower)?;
    Ok(all_submodules(&q, cfg)?
        .iter()
        .map(|s| preimage(&proj, s))
        .collect())
}

/// Submodules of `m` contained in `x`.
pub fn submodules_within(m: &Rep, x: &SubRep, cfg: &Config) -> Result<Vec<SubRep>> {
    let (xr, incl) = x.to_rep(m);
    Ok(all_submodules(&xr, cfg)?
        .iter()
        .map(|s| image_of(&incl, s))
        .collect())
}
