use rand::Rng;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlin::poly::{coprime_split, crt_idempotent, minimal_polynomial};
use crate::exactlin::{FieldSpec, Mat, Scalar, SubspaceBasis};
use crate::module::hom::{combine, end_ring, hom_space, ring_radical, EndRing};
use crate::module::rep::{ModuleMap, Rep, SubRep};

/// Evidence that `End(M)` is local.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityCertificate {
    pub end_dim: usize,
    pub radical_dim: usize,
    /// `dim End/rad`; 1 means absolutely indecomposable.
    pub top_dim: usize,
}

/// A nontrivial idempotent endomorphism and the split `M = im e ⊕ ker e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub idempotent: ModuleMap,
    pub image: SubRep,
    pub kernel: SubRep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indecomposability {
    Indecomposable(LocalityCertificate),
    Decomposable(Split),
}

impl Indecomposability {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Indecomposability::Indecomposable(_))
    }

    pub fn split(&self) -> Option<&Split> {
        match self {
            Indecomposability::Decomposable(s) => Some(s),
            Indecomposability::Indecomposable(_) => None,
        }
    }
}

pub fn is_indecomposable(m: &Rep, cfg: &Config) -> Result<Indecomposability> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let end = end_ring(m)?;
    let rad = ring_radical(&end);
    let cert = LocalityCertificate {
        end_dim: end.dim(),
        radical_dim: rad.dim(),
        top_dim: end.dim() - rad.dim(),
    };
    if cert.top_dim == 1 {
        return Ok(Indecomposability::Indecomposable(cert));
    }
    match find_idempotent(&end, &rad, cfg)? {
        None => Ok(Indecomposability::Indecomposable(cert)),
        Some(e) => {
            let map = end.element(&e);
            let one_minus = ModuleMap::identity(m).sub(&map);
            Ok(Indecomposability::Decomposable(Split {
                image: map.image(),
                kernel: one_minus.image(),
                idempotent: map,
            }))
        }
    }
}

/// Idempotent from a coprime factorization of the minimal polynomial of `g`.
fn split_idempotent<R: Rng>(
    end: &EndRing,
    g: &[Scalar],
    rng: &mut R,
) -> Result<Option<Vec<Scalar>>> {
    let flat = end.element_flat(g);
    let mp = minimal_polynomial(&flat);
    let Some((a, b)) = coprime_split(&mp, rng)? else {
        return Ok(None);
    };
    let e = crt_idempotent(&a, &b);
    // Evaluate e(g) inside End.
    let mut acc = vec![end.field().zero(); end.dim()];
    for c in e.coeffs().iter().rev() {
        acc = end.multiply(&acc, g);
        acc[0] = &acc[0] + c;
    }
    debug_assert_eq!(end.multiply(&acc, &acc), acc);
    Ok(Some(acc))
}

/// A nontrivial idempotent of `End`, or `None` when `End / rad` is a field.
fn find_idempotent(
    end: &EndRing,
    rad: &SubspaceBasis,
    cfg: &Config,
) -> Result<Option<Vec<Scalar>>> {
    let f = end.field();
    let mut rng = cfg.rng();
    let free = rad.free_columns();
    // Ā = End / rad, with basis the unit vectors on the free columns.
    let reduce = |x: &[Scalar]| rad.quotient_coords(x);
    let lift = |c: &[Scalar]| {
        let mut x = vec![f.zero(); end.dim()];
        for (&i, v) in free.iter().zip(c) {
            x[i] = v.clone();
        }
        x
    };
    let s = free.len();
    let units: Vec<Vec<Scalar>> = (0..s)
        .map(|i| {
            let mut c = vec![f.zero(); s];
            c[i] = f.one();
            lift(&c)
        })
        .collect();
    let commutative = units.iter().all(|a| {
        units
            .iter()
            .all(|b| reduce(&end.multiply(a, b)) == reduce(&end.multiply(b, a)))
    });
    if commutative {
        match f {
            FieldSpec::Prime(p) => {
                // Frobenius is linear on a commutative algebra of characteristic p; its
                // fixed points form F_p^k, k the number of simple factors.
                let frob = Mat::from_fn(f, s, s, |r, c| {
                    let img = reduce(&end.power(&units[c], p));
                    let id = if r == c { f.one() } else { f.zero() };
                    img[r].clone() - id
                });
                let fixed = frob.kernel();
                if fixed.dim() == 1 {
                    return Ok(None);
                }
                for v in fixed.vectors() {
                    if let Some(e) = split_idempotent(end, &lift(&v), &mut rng)? {
                        return Ok(Some(e));
                    }
                }
                unreachable!("a non-scalar Frobenius-fixed element has a split minimal polynomial");
            }
            FieldSpec::Rational => {
                // A semisimple commutative algebra over Q is a product of number fields;
                // a primitive element has a squarefree minimal polynomial of degree s.
                for _ in 0..cfg.random_tries.max(1) {
                    let c: Vec<Scalar> = (0..s).map(|_| random_scalar(f, &mut rng)).collect();
                    let g = lift(&c);
                    let mult = Mat::from_fn(f, s, s, |r, col| {
                        reduce(&end.multiply(&units[col], &g))[r].clone()
                    });
                    let mp = minimal_polynomial(&mult);
                    if mp.degree() != Some(s) {
                        continue;
                    }
                    return split_idempotent(end, &g, &mut rng);
                }
                return Err(Error::SearchExhausted(cfg.random_tries));
            }
        }
    }
    // Non-commutative semisimple quotient. Over a finite field it is not a
    // division ring, so an idempotent exists.
    for g in units.iter().cloned() {
        if let Some(e) = split_idempotent(end, &g, &mut rng)? {
            return Ok(Some(e));
        }
    }
    let tries = match f {
        FieldSpec::Prime(_) => cfg.random_tries.max(1) * 16,
        FieldSpec::Rational => cfg.random_tries.max(1),
    };
    for _ in 0..tries {
        let c: Vec<Scalar> = (0..s).map(|_| random_scalar(f, &mut rng)).collect();
        if let Some(e) = split_idempotent(end, &lift(&c), &mut rng)? {
            return Ok(Some(e));
        }
    }
    match f {
        FieldSpec::Prime(_) => Err(Error::SearchExhausted(tries)),
        FieldSpec::Rational => Err(Error::UnsupportedFactorization(
            "End/rad is non-commutative and no idempotent was found; it may be a division algebra"
                .into(),
        )),
    }
}

/// One isomorphism class of summands together with split maps for every copy.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Rep,
    pub multiplicity: usize,
    pub certificate: LocalityCertificate,
    /// `inclusions[i]: rep -> M` and `projections[i]: M -> rep` for copy `i`.
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

#[derive(Clone, Debug)]
pub struct DecompResult {
    pub summands: Vec<Summand>,
}

impl DecompResult {
    /// Sorted dimension vectors, repeated by multiplicity.
    pub fn dim_vectors(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .summands
            .iter()
            .flat_map(|s| std::iter::repeat(s.rep.dims().to_vec()).take(s.multiplicity))
            .collect();
        out.sort();
        out
    }

    pub fn summand_count(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    /// `Σ ι_i π_i = id` and `π_i ι_j = δ_ij`.
    pub fn verify(&self, m: &Rep) -> bool {
        let pairs: Vec<(&ModuleMap, &ModuleMap, &Rep)> = self
            .summands
            .iter()
            .flat_map(|s| {
                s.inclusions
                    .iter()
                    .zip(&s.projections)
                    .map(move |(i, p)| (i, p, &s.rep))
            })
            .collect();
        let mut total = ModuleMap::zero(m, m);
        for (i, p, r) in &pairs {
            if !i.is_homomorphism(r, m) || !p.is_homomorphism(m, r) {
                return false;
            }
            total = total.add(&i.compose(p));
        }
        if total != ModuleMap::identity(m) {
            return false;
        }
        pairs.iter().enumerate().all(|(a, (_, pa, ra))| {
            pairs.iter().enumerate().all(|(b, (ib, _, rb))| {
                let c = pa.compose(ib);
                if a == b {
                    c == ModuleMap::identity(ra)
                } else {
                    c == ModuleMap::zero(rb, ra)
                }
            })
        })
    }
}

struct Piece {
    rep: Rep,
    cert: LocalityCertificate,
    incl: ModuleMap,
    proj: ModuleMap,
}

fn split_pieces(m: &Rep, cfg: &Config, out: &mut Vec<Piece>) -> Result<()> {
    match is_indecomposable(m, cfg)? {
        Indecomposability::Indecomposable(cert) => {
            out.push(Piece {
                rep: m.clone(),
                cert,
                incl: ModuleMap::identity(m),
                proj: ModuleMap::identity(m),
            });
            Ok(())
        }
        Indecomposability::Decomposable(split) => {
            let one_minus = ModuleMap::identity(m).sub(&split.idempotent);
            for (sub, e) in [
                (&split.image, &split.idempotent),
                (&split.kernel, &one_minus),
            ] {
                let (rep, incl) = sub.to_rep(m);
                // Coordinates in the RREF basis of each part are the pivot entries.
                let proj = ModuleMap::from_blocks(
                    sub.parts()
                        .iter()
                        .zip(e.blocks())
                        .map(|(part, eb)| {
                            let sel = Mat::from_fn(m.field(), part.dim(), eb.rows(), |r, c| {
                                if part.pivots()[r] == c {
                                    m.field().one()
                                } else {
                                    m.field().zero()
                                }
                            });
                            sel.mul(eb)
                        })
                        .collect(),
                );
                let start = out.len();
                split_pieces(&rep, cfg, out)?;
                for piece in &mut out[start..] {
                    piece.incl = incl.compose(&piece.incl);
                    piece.proj = piece.proj.compose(&proj);
                }
            }
            Ok(())
        }
    }
}

/// Krull–Remak–Schmidt decomposition with explicit split maps.
pub fn decompose(m: &Rep, cfg: &Config) -> Result<DecompResult> {
    let mut pieces = Vec::new();
    if !m.is_zero() {
        split_pieces(m, cfg, &mut pieces)?;
    }
    let mut summands: Vec<Summand> = Vec::new();
    for p in pieces {
        let mut placed = false;
        for s in &mut summands {
            if s.rep.dims() != p.rep.dims() {
                continue;
            }
            if let Some(iso) = is_isomorphic(&s.rep, &p.rep, cfg)? {
                let inv = iso.inverse().expect("isomorphism");
                s.inclusions.push(p.incl.compose(&iso));
                s.projections.push(inv.compose(&p.proj));
                s.multiplicity += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            summands.push(Summand {
                rep: p.rep,
                multiplicity: 1,
                certificate: p.cert,
                inclusions: vec![p.incl],
                projections: vec![p.proj],
            });
        }
    }
    summands.sort_by(|a, b| (a.rep.length(), a.rep.dims()).cmp(&(b.rep.length(), b.rep.dims())));
    Ok(DecompResult { summands })
}

/// An explicit isomorphism `m -> n`, or `None` if the modules are not isomorphic.
pub fn is_isomorphic(m: &Rep, n: &Rep, cfg: &Config) -> Result<Option<ModuleMap>> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::DimensionMismatch(
            "modules over different algebras".into(),
        ));
    }
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModuleMap::identity(m)));
    }
    let homs = hom_space(m, n)?;
    if homs.is_empty() {
        return Ok(None);
    }
    if let Some(found) = iso_search(&homs, cfg)? {
        return Ok(found);
    }
    iso_by_decomposition(m, n, cfg)
}

/// `Ok(Some(answer))` when decided, `Ok(None)` when the random search was inconclusive.
fn iso_search(homs: &[ModuleMap], cfg: &Config) -> Result<Option<Option<ModuleMap>>> {
    let f = homs[0].field();
    let d = homs.len() as u32;
    if let Some(q) = f.order() {
        let exhaustive = q.checked_pow(d).filter(|&t| t <= cfg.iso_exhaustive_limit);
        if let Some(total) = exhaustive {
            let mut coeffs = vec![0u64; homs.len()];
            for _ in 0..total {
                let c: Vec<Scalar> = coeffs.iter().map(|&x| f.from_i64(x as i64)).collect();
                let h = combine(homs, &c).expect("nonempty");
                if h.is_iso() {
                    return Ok(Some(Some(h)));
                }
                for x in coeffs.iter_mut() {
                    *x += 1;
                    if *x < q {
                        break;
                    }
                    *x = 0;
                }
            }
            return Ok(Some(None));
        }
    }
    let mut rng = cfg.rng();
    for _ in 0..cfg.random_tries {
        let c: Vec<Scalar> = (0..homs.len())
            .map(|_| random_scalar(f, &mut rng))
            .collect();
        let h = combine(homs, &c).expect("nonempty");
        if h.is_iso() {
            return Ok(Some(Some(h)));
        }
    }
    Ok(None)
}

pub(crate) fn random_scalar<R: Rng>(f: FieldSpec, rng: &mut R) -> Scalar {
    match f {
        FieldSpec::Prime(p) => f.from_i64(rng.gen_range(0..p) as i64),
        FieldSpec::Rational => f.from_i64(rng.gen_range(-9..=9)),
    }
}

fn iso_by_decomposition(m: &Rep, n: &Rep, cfg: &Config) -> Result<Option<ModuleMap>> {
    let dm = decompose(m, cfg)?;
    let dn = decompose(n, cfg)?;
    let mut total = ModuleMap::zero(m, n);
    let mut used = vec![false; dn.summands.len()];
    for sm in &dm.summands {
        let mut matched = None;
        for (j, sn) in dn.summands.iter().enumerate() {
            if used[j] || sn.multiplicity != sm.multiplicity || sn.rep.dims() != sm.rep.dims() {
                continue;
            }
            let homs = hom_space(&sm.rep, &sn.rep)?;
            if homs.is_empty() {
                continue;
            }
            // Between indecomposables the non-isomorphisms form a proper subspace.
            if let Some(Some(iso)) = iso_search(&homs, cfg)? {
                matched = Some((j, iso));
                break;
            }
        }
        let Some((j, iso)) = matched else {
            return Ok(None);
        };
        used[j] = true;
        let sn = &dn.summands[j];
        for (pm, inn) in sm.projections.iter().zip(&sn.inclusions) {
            total = total.add(&inn.compose(&iso).compose(pm));
        }
    }
    if used.iter().all(|&u| u) && total.is_iso() {
        Ok(Some(total))
    } else {
        Ok(None)
    }
}
