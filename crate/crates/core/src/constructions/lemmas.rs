use serde::Serialize;

use crate::algebra::NonDistWitness;
use crate::check::{all_passed, Check};
use crate::config::Config;
use crate::error::Result;
use crate::exactlin::{EchelonBuilder, Scalar, SubspaceBasis};
use crate::lattice::{intermediate_submodules, submodules_within};
use crate::module::{
    image_of, is_indecomposable, quotient, radical_of, socle_of, spin, Rep, SubRep,
};

use super::{canonical_n, relative, restrict_to_b, sub_coords, CanonicalN, FamilyInstance, VData};

/// Hypotheses are reported one by one; the conclusion is evaluated regardless.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub hypotheses: Vec<Check>,
    pub conclusion: bool,
}

impl LemmaReport {
    pub fn hypotheses_hold(&self) -> bool {
        all_passed(&self.hypotheses)
    }

    /// False only when every hypothesis passed and the conclusion did not.
    pub fn is_sound(&self) -> bool {
        !self.hypotheses_hold() || self.conclusion
    }
}

/// A complement of `N ∩ soc` inside the socle of `bm`; any subspace of the socle is a submodule.
pub fn semisimple_complement(bm: &Rep, n: &SubRep) -> SubRep {
    let soc = socle_of(bm);
    let inside = n.intersect(&soc);
    let parts = (0..bm.vertex_count())
        .map(|v| {
            let mut b = EchelonBuilder::from_subspace(inside.part(v));
            let extra: Vec<Vec<Scalar>> = soc
                .part(v)
                .vectors()
                .into_iter()
                .filter(|x| b.insert(x.clone()))
                .collect();
            SubspaceBasis::span(bm.field(), bm.dims()[v], extra)
        })
        .collect();
    SubRep::from_parts(parts)
}

fn indecomposable_nonzero(r: &Rep, cfg: &Config) -> Result<bool> {
    Ok(!r.is_zero() && is_indecomposable(r, cfg)?.is_indecomposable())
}

fn b_hypotheses(bm: &Rep, n: &SubRep, np: &SubRep, cfg: &Config) -> Result<Vec<Check>> {
    let n_closed = n.is_closed(bm);
    let np_closed = np.is_closed(bm);
    let n_indec = n_closed && indecomposable_nonzero(&n.to_rep(bm).0, cfg)?;
    let np_semisimple = np_closed && radical_of(&np.to_rep(bm).0).is_zero();
    Ok(vec![
        Check::new("N is a B-submodule", n_closed),
        Check::new("N' is a B-submodule", np_closed),
        Check::new("N + N' = M", n.sum(np) == SubRep::whole(bm)),
        Check::new("N meets N' in 0", n.intersect(np).is_zero()),
        Check::new("N indecomposable", n_indec),
        Check::new("N not simple", n.length() > 1),
        Check::new("N' semisimple", np_semisimple),
    ])
}

/// `rad_B N` or `soc_B N` pushed back into the flat space of `bm`.
fn inner_flat(bm: &Rep, n: &SubRep, f: fn(&Rep) -> SubRep) -> SubspaceBasis {
    let (nr, incl) = n.to_rep(bm);
    image_of(&incl, &f(&nr)).flat_subspace(bm)
}

pub fn check_restriction_lemma_1(
    m: &Rep,
    w: &NonDistWitness,
    n: &SubRep,
    np: &SubRep,
    cfg: &Config,
) -> Result<LemmaReport> {
    let bm = restrict_to_b(m, w)?;
    let mut hypotheses = b_hypotheses(&bm, n, np, cfg)?;
    let soc_n = if n.is_closed(&bm) {
        Some(inner_flat(&bm, n, socle_of))
    } else {
        None
    };
    let soc_m = socle_of(m).flat_subspace(m);
    hypotheses.push(Check::new("soc M = soc N", soc_n.as_ref() == Some(&soc_m)));
    Ok(LemmaReport {
        hypotheses,
        conclusion: indecomposable_nonzero(m, cfg)?,
    })
}

/// `t` is a subspace of the flat space of `m`.
pub fn check_restriction_lemma_2(
    m: &Rep,
    w: &NonDistWitness,
    n: &SubRep,
    np: &SubRep,
    t: &SubspaceBasis,
    cfg: &Config,
) -> Result<LemmaReport> {
    let bm = restrict_to_b(m, w)?;
    let mut hypotheses = b_hypotheses(&bm, n, np, cfg)?;
    let len = m.length();
    let rad_m = radical_of(m).flat_subspace(m);
    let complements_rad_m = t.dim() + rad_m.dim() == len && t.sum(&rad_m)?.dim() == len;
    let n_flat = n.part(0);
    let complements_rad_n = n.is_closed(&bm) && {
        let rad_n = inner_flat(&bm, n, radical_of);
        t.dim() + rad_n.dim() == n.length() && &t.sum(&rad_n)? == n_flat
    };
    hypotheses.push(Check::new("T inside N", t.is_subspace_of(n_flat)));
    hypotheses.push(Check::new("M = T + rad M directly", complements_rad_m));
    hypotheses.push(Check::new("N = T + rad N directly", complements_rad_n));
    Ok(LemmaReport {
        hypotheses,
        conclusion: indecomposable_nonzero(m, cfg)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Step4Branch {
    /// `U ⊆ M' + JL`.
    InsideMpPlusJl,
    /// `U = M`.
    Whole,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step4Report {
    pub preconditions: Vec<Check>,
    pub branch: Step4Branch,
}

impl Step4Report {
    pub fn preconditions_hold(&self) -> bool {
        all_passed(&self.preconditions)
    }

    pub fn holds(&self) -> bool {
        self.branch != Step4Branch::Neither
    }
}

fn step4_preconditions(
    m: &Rep,
    mp: &SubRep,
    l: &SubRep,
    cfg: &Config,
) -> Result<(Vec<Check>, SubRep)> {
    let (lr, incl) = l.to_rep(m);
    let jl = image_of(&incl, &radical_of(&lr));
    let local = !l.is_zero() && l.length() - jl.length() == 1;
    Ok((
        vec![
            Check::new("M' is a submodule", mp.is_closed(m)),
            Check::new("L is a submodule", l.is_closed(m)),
            Check::new("M = M' + L", mp.sum(l) == SubRep::whole(m)),
            Check::new("L local", local),
            Check::new("M indecomposable", indecomposable_nonzero(m, cfg)?),
        ],
        mp.sum(&jl),
    ))
}

fn step4_branch(m: &Rep, u: &SubRep, mp_jl: &SubRep) -> Step4Branch {
    if u.is_subset_of(mp_jl) {
        Step4Branch::InsideMpPlusJl
    } else if *u == SubRep::whole(m) {
        Step4Branch::Whole
    } else {
        Step4Branch::Neither
    }
}

pub fn check_step4(
    m: &Rep,
    mp: &SubRep,
    l: &SubRep,
    u: &SubRep,
    cfg: &Config,
) -> Result<Step4Report> {
    let (mut preconditions, mp_jl) = step4_preconditions(m, mp, l, cfg)?;
    preconditions.push(Check::new("U is a submodule", u.is_closed(m)));
    preconditions.push(Check::new("M' inside U", mp.is_subset_of(u)));
    Ok(Step4Report {
        preconditions,
        branch: step4_branch(m, u, &mp_jl),
    })
}

/// [`check_step4`] for every `U` between `mp` and `m`.
pub fn step4_exhaustive(
    m: &Rep,
    mp: &SubRep,
    l: &SubRep,
    cfg: &Config,
) -> Result<Vec<Step4Report>> {
    let (pre, mp_jl) = step4_preconditions(m, mp, l, cfg)?;
    Ok(intermediate_submodules(m, mp, cfg)?
        .iter()
        .map(|u| {
            let mut preconditions = pre.clone();
            preconditions.push(Check::new("U is a submodule", true));
            preconditions.push(Check::new("M' inside U", true));
            Step4Report {
                preconditions,
                branch: step4_branch(m, u, &mp_jl),
            }
        })
        .collect())
}

/// A labelled lemma check on one concrete module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaInstance {
    pub label: String,
    pub dims: Vec<usize>,
    pub report: LemmaReport,
}

/// Runs lemma 1 on `u` (a submodule of `V^n`) with `N` generated by `gens`.
fn lemma1_on(
    fam: &FamilyInstance,
    vd: &VData,
    label: String,
    u: &SubRep,
    gens: &[Vec<Scalar>],
    cfg: &Config,
) -> Result<LemmaInstance> {
    let (ur, _) = u.to_rep(fam.space());
    let bm = restrict_to_b(&ur, &vd.witness)?;
    let coords = gens
        .iter()
        .map(|g| sub_coords(fam.space(), u, g).expect("generator lies in U"));
    let n = spin(&bm, coords);
    let np = semisimple_complement(&bm, &n);
    Ok(LemmaInstance {
        label,
        dims: ur.dims().to_vec(),
        report: check_restriction_lemma_1(&ur, &vd.witness, &n, &np, cfg)?,
    })
}

/// Every `U` with `lower ⊆ U ⊆ J g + lower`, as submodules of `V^n`.
fn between(
    fam: &FamilyInstance,
    lower: &SubRep,
    g: Vec<Scalar>,
    cfg: &Config,
) -> Result<Vec<SubRep>> {
    let space = fam.space();
    let cyc = spin(space, [g]);
    let (cr, incl) = cyc.to_rep(space);
    let upper = image_of(&incl, &radical_of(&cr)).sum(lower);
    let (ur, uincl) = upper.to_rep(space);
    let low = relative(&upper, lower).expect("lower end lies in upper end");
    Ok(intermediate_submodules(&ur, &low, cfg)?
        .iter()
        .map(|s| image_of(&uincl, s))
        .collect())
}

/// Lemma 1 on every `U` between `M(n-1)` or `R(n)` and its cyclic extension, and on `W(n)`.
pub fn lemma1_instances(
    vd: &VData,
    fam: &FamilyInstance,
    cfg: &Config,
) -> Result<Vec<LemmaInstance>> {
    let n = fam.n;
    let mut out = Vec::new();
    if n >= 2 {
        let gens = canonical_n(fam, CanonicalN::Preprojective);
        for (i, u) in between(fam, &fam.m_prev, fam.x_at(1), cfg)?
            .iter()
            .enumerate()
        {
            out.push(lemma1_on(
                fam,
                vd,
                format!("step 1, n = {n}, U #{i}"),
                u,
                &gens,
                cfg,
            )?);
        }
    }
    let gens = canonical_n(fam, CanonicalN::Regular);
    for (i, u) in between(fam, &fam.r, fam.y_at(n), cfg)?.iter().enumerate() {
        out.push(lemma1_on(
            fam,
            vd,
            format!("step 2, n = {n}, U #{i}"),
            u,
            &gens,
            cfg,
        )?);
    }
    let gens = canonical_n(fam, CanonicalN::Preinjective);
    out.push(lemma1_on(
        fam,
        vd,
        format!("step 3, W({n})"),
        &fam.w,
        &gens,
        cfg,
    )?);
    Ok(out)
}

fn lemma2_on_quotients(
    vd: &VData,
    big: &FamilyInstance,
    sub: &SubRep,
    kernel_in: &SubRep,
    gens: &[Vec<Scalar>],
    label: &str,
    cfg: &Config,
) -> Result<Vec<LemmaInstance>> {
    let (mr, _) = sub.to_rep(big.space());
    let kernel = relative(sub, &kernel_in.intersect(sub)).expect("intersection lies in the module");
    let gens: Vec<Vec<Scalar>> = gens
        .iter()
        .map(|g| sub_coords(big.space(), sub, g).expect("generator lies in the module"))
        .collect();
    let mut out = Vec::new();
    for (i, xp) in submodules_within(&mr, &kernel, cfg)?.iter().enumerate() {
        let (q, proj) = quotient(&mr, xp)?;
        let bq = restrict_to_b(&q, &vd.witness)?;
        let images: Vec<Vec<Scalar>> = gens.iter().map(|g| proj.apply(&mr, g)).collect();
        let n = spin(&bq, images.clone());
        let np = semisimple_complement(&bq, &n);
        let t = SubspaceBasis::span(q.field(), q.length(), images);
        out.push(LemmaInstance {
            label: format!("{label}, kernel #{i}"),
            dims: q.dims().to_vec(),
            report: check_restriction_lemma_2(&q, &vd.witness, &n, &np, &t, cfg)?,
        });
    }
    Ok(out)
}

/// Lemma 2 on `M(n)/Y'` for `Y' ⊆ Y` and on `R(n+1)/X'` for `X' ⊆ X`; `next` is the family for `n + 1`.
pub fn lemma2_instances(
    vd: &VData,
    next: &FamilyInstance,
    cfg: &Config,
) -> Result<Vec<LemmaInstance>> {
    let n = next.n - 1;
    let mut out = lemma2_on_quotients(
        vd,
        next,
        &next.m_prev,
        &next.copy(1),
        &next.z,
        &format!("M({n}) modulo part of Y"),
        cfg,
    )?;
    out.extend(lemma2_on_quotients(
        vd,
        next,
        &next.r,
        &next.copy(next.n),
        &canonical_n(next, CanonicalN::Regular),
        &format!("R({}) modulo part of X", n + 1),
        cfg,
    )?);
    Ok(out)
}
