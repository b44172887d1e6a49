use std::path::Path;
use std::sync::Arc;

use accmod_core::algebra::{check_witness, find_witness, BoundQuiverAlgebra};
use accmod_core::constructions::{
    build_family, canonical_n, chain, classify_b_module, find_xy, lemma1_instances,
    lemma2_instances, relative, remark3_instance, remark_char_ne_2, restrict_to_b,
    step4_exhaustive, sub_coords, verify_chain, BKind, CanonicalN, FamilyInstance, VData,
};
use accmod_core::exactlin::FieldSpec;
use accmod_core::lattice::{
    is_accessible, is_couniform_projection, is_uniform_inclusion, is_uniform_module,
    is_uniform_module_by_enumeration, MemoTable, Verdict,
};
use accmod_core::module::{is_indecomposable, socle_of, spin, Indecomposability, Rep, SubRep};
use accmod_core::{fixtures, io, Config, Error, Result};
use serde_json::json;

use crate::inputs::{family_module, family_submodule, load_algebra};
use crate::report::Builder;

pub fn witness(
    fixture: Option<&str>,
    algebra: Option<&Path>,
    witness: Option<&Path>,
    field: Option<FieldSpec>,
    cfg: &Config,
    out: &mut Builder,
) -> Result<FieldSpec> {
    let alg = load_algebra(fixture, algebra, field)?;
    let w = match witness {
        Some(p) => io::load_witness(&alg, p)?,
        None => match find_witness(&alg) {
            Some(w) => w,
            None => {
                out.check(
                    "witness found",
                    false,
                    Some("every e_i Z e_j has dimension at most 1, so the ideal lattice is distributive".into()),
                );
                return Ok(alg.field());
            }
        },
    };
    if witness.is_none() {
        out.check("witness found", true, None);
    }
    let report = check_witness(&alg, &w, cfg)?;
    out.extend("witness: ", &report.checks);
    out.certificate("witness", io::witness_to_file(&alg, &w));
    Ok(alg.field())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    Indecomposable,
    Accessible,
    UniformInclusion,
    Couniform,
    UniformModule,
}

pub struct ModuleArgs<'a> {
    pub fixture: Option<&'a str>,
    pub algebra: Option<&'a Path>,
    pub module: Option<&'a Path>,
    pub family: Option<&'a str>,
    pub sub: Option<&'a Path>,
    pub sub_family: Option<&'a str>,
}

fn resolve_module(
    args: &ModuleArgs,
    field: Option<FieldSpec>,
    cfg: &Config,
) -> Result<(Rep, Option<SubRep>)> {
    match (args.module, args.family) {
        (Some(_), Some(_)) => Err(Error::Parse(
            "give either --module or --family, not both".into(),
        )),
        (None, None) => Err(Error::Parse(
            "a module is required: --module PATH or --family NAME".into(),
        )),
        (Some(path), None) => {
            if args.sub_family.is_some() {
                return Err(Error::Parse(
                    "--sub-family needs --family; use --sub with --module".into(),
                ));
            }
            let alg = if args.fixture.is_some() || args.algebra.is_some() {
                Some(load_algebra(args.fixture, args.algebra, field)?)
            } else {
                None
            };
            let m = io::load_module(path, alg)?;
            crate::inputs::check_field(m.field(), field)?;
            let sub = args.sub.map(|p| io::load_submodule(p, &m)).transpose()?;
            Ok((m, sub))
        }
        (None, Some(name)) => {
            let alg = load_algebra(args.fixture, args.algebra, field)?;
            let fm = family_module(&alg, name, cfg)?;
            let sub = match (args.sub, args.sub_family) {
                (Some(_), Some(_)) => {
                    return Err(Error::Parse(
                        "give either --sub or --sub-family, not both".into(),
                    ))
                }
                (Some(p), None) => Some(io::load_submodule(p, &fm.rep)?),
                (None, Some(s)) => Some(family_submodule(&fm, s)?),
                (None, None) => None,
            };
            Ok((fm.rep, sub))
        }
    }
}

fn verdict_into(out: &mut Builder, name: &str, v: &Verdict) {
    out.check(name, v.holds, Some(format!("{} modules tested", v.checked)));
    if let Some(o) = &v.offender {
        out.certificate("offender", o.summary());
    }
}

pub fn check(
    kind: CheckKind,
    args: &ModuleArgs,
    field: Option<FieldSpec>,
    cfg: &Config,
    out: &mut Builder,
) -> Result<FieldSpec> {
    let (m, sub) = resolve_module(args, field, cfg)?;
    out.certificate("dims", m.dims());
    let need_sub = || {
        sub.clone()
            .ok_or_else(|| Error::Parse("this check needs --sub or --sub-family".into()))
    };
    match kind {
        CheckKind::Indecomposable => match is_indecomposable(&m, cfg)? {
            Indecomposability::Indecomposable(c) => {
                out.check("indecomposable", true, None);
                out.certificate("locality", c);
            }
            Indecomposability::Decomposable(s) => {
                out.check("indecomposable", false, None);
                let blocks: Vec<Vec<Vec<io::CoeffJson>>> = s
                    .idempotent
                    .blocks()
                    .iter()
                    .map(|b| {
                        b.row_vecs()
                            .iter()
                            .map(|r| r.iter().map(io::coeff_to_json).collect())
                            .collect()
                    })
                    .collect();
                out.certificate(
                    "split",
                    json!({"image_dims": s.image.dims(), "kernel_dims": s.kernel.dims(), "idempotent": blocks}),
                );
            }
        },
        CheckKind::Accessible => {
            let (ok, cert) = is_accessible(&m, &MemoTable::new(), cfg)?;
            out.check("accessible", ok, None);
            if let Some(c) = cert {
                out.check("certificate valid", c.validate(cfg)?, None);
                out.certificate("chain", c.summary());
            }
        }
        CheckKind::UniformInclusion => verdict_into(
            out,
            "uniform inclusion",
            &is_uniform_inclusion(&need_sub()?, &m, cfg)?,
        ),
        CheckKind::Couniform => verdict_into(
            out,
            "couniform projection",
            &is_couniform_projection(&m, &need_sub()?, cfg)?,
        ),
        CheckKind::UniformModule => {
            out.check("uniform module", is_uniform_module(&m)?, None);
            out.certificate("socle_dims", socle_of(&m).dims());
        }
    }
    Ok(m.field())
}

fn guard<T>(out: &mut Builder, name: &str, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            out.error(name, e);
            None
        }
    }
}

fn family_checks(
    vd: &VData,
    fam: &FamilyInstance,
    memo: &MemoTable,
    cfg: &Config,
    out: &mut Builder,
) -> Result<()> {
    let n = fam.n;
    out.extend(&format!("family n={n}: "), &fam.length_checks());
    let names = [
        format!("M({})", n - 1),
        format!("R({n})"),
        format!("W({n})"),
    ];
    for (name, rep) in names
        .iter()
        .zip([fam.m_prev_rep(), fam.r_rep(), fam.w_rep()])
    {
        let indec = is_indecomposable(&rep, cfg)?.is_indecomposable();
        out.check(format!("family n={n}: {name} indecomposable"), indec, None);
        let (ok, cert) = is_accessible(&rep, memo, cfg)?;
        let valid = match &cert {
            Some(c) => c.validate(cfg)?,
            None => false,
        };
        out.check(
            format!("accessible: {name}"),
            ok && valid,
            cert.map(|c| format!("chain of {}", c.len())),
        );
    }

    // Restriction to B and the three distinguished submodules N.
    let space = fam.space();
    let mut classes = Vec::new();
    for (which, sub, label) in [
        (
            CanonicalN::Preprojective,
            &fam.m_prev,
            format!("M({})", n - 1),
        ),
        (CanonicalN::Regular, &fam.r, format!("R({n})")),
        (CanonicalN::Preinjective, &fam.w, format!("W({n})")),
    ] {
        if which == CanonicalN::Preprojective && n < 2 {
            continue;
        }
        let (rep, _) = sub.to_rep(space);
        let bm = restrict_to_b(&rep, &vd.witness)?;
        let gens = canonical_n(fam, which)
            .iter()
            .map(|g| sub_coords(space, sub, g).expect("generator lies in the module"))
            .collect::<Vec<_>>();
        let nsub = spin(&bm, gens);
        let c = classify_b_module(&nsub.to_rep(&bm).0, cfg)?;
        let expect = match which {
            CanonicalN::Preprojective => (BKind::Preprojective, 2 * n - 1, n, n - 1, None),
            CanonicalN::Regular => (BKind::Regular, 2 * n, n, n, Some(n + 1)),
            CanonicalN::Preinjective => (BKind::Preinjective, 2 * n + 1, n, n + 1, None),
        };
        let got = (
            c.kind,
            c.length,
            c.socle_length,
            c.top_length,
            expect.4.map(|_| c.phi_kernel_dim),
        );
        let kind_name = match which {
            CanonicalN::Preprojective => "preprojective",
            CanonicalN::Regular => "regular",
            CanonicalN::Preinjective => "preinjective",
        };
        out.check(
            format!("B-class n={n}: N in {label} is {kind_name}"),
            got == expect,
            Some(format!(
                "length {}, socle {}, top {}, phi-kernel {}",
                c.length, c.socle_length, c.top_length, c.phi_kernel_dim
            )),
        );
        classes.push(json!({"module": label, "class": c}));
    }
    out.certificate(format!("b_classes n={n}"), classes);

    for inst in lemma1_instances(vd, fam, cfg)? {
        out.check(
            format!("lemma 1: {}", inst.label),
            inst.report.hypotheses_hold() && inst.report.conclusion,
            None,
        );
    }

    let m = fam.r_rep();
    let mp = relative(&fam.r, &fam.m_prev).expect("M(n-1) lies in R(n)");
    let l = relative(&fam.r, &spin(space, [fam.x_at(1)])).expect("x_(1) lies in R(n)");
    let reports = step4_exhaustive(&m, &mp, &l, cfg)?;
    out.check(
        format!("step 4: R({n}) = M({}) + L", n - 1),
        reports.iter().all(|r| r.preconditions_hold() && r.holds()),
        Some(format!("{} intermediate modules", reports.len())),
    );
    Ok(())
}

/// The full instance suite for one fixture and field up to `n_max`.
pub fn paper_verify(
    fixture: &str,
    n_max: usize,
    field: Option<FieldSpec>,
    cfg: &Config,
    out: &mut Builder,
) -> Result<FieldSpec> {
    let field = field.unwrap_or(FieldSpec::Prime(2));
    if field.order().is_none() {
        return Err(Error::NeedsFiniteField(
            "paper verification (submodule enumeration)",
        ));
    }
    if n_max == 0 {
        return Err(Error::Unsupported("--n must be at least 1".into()));
    }
    let alg: Arc<BoundQuiverAlgebra> = fixtures::by_name(fixture, field)?;
    let Some(w) = find_witness(&alg) else {
        out.check("witness found", false, None);
        return Ok(field);
    };
    out.check("witness found", true, None);
    out.extend("witness: ", &check_witness(&alg, &w, cfg)?.checks);
    out.certificate("witness", io::witness_to_file(&alg, &w));
    let vd = find_xy(&alg, &w, cfg)?;
    out.extend("vdata: ", &vd.checks());

    let memo = MemoTable::new();
    for n in 1..=n_max {
        let fam = build_family(&vd, n)?;
        if let Err(e) = family_checks(&vd, &fam, &memo, cfg, out) {
            out.error(format!("family n={n}"), e);
        }
        if let Some(next) = guard(out, &format!("lemma 2: n={n}"), build_family(&vd, n + 1)) {
            if let Some(insts) = guard(
                out,
                &format!("lemma 2: n={n}"),
                lemma2_instances(&vd, &next, cfg),
            ) {
                for inst in insts {
                    out.check(
                        format!("lemma 2: {}", inst.label),
                        inst.report.hypotheses_hold() && inst.report.conclusion,
                        None,
                    );
                }
            }
        }
    }

    if let Some(links) = guard(
        out,
        "chain",
        chain(&vd, n_max).and_then(|l| verify_chain(&l, cfg)),
    ) {
        for l in &links {
            let kind = match l.kind {
                accmod_core::constructions::LinkKind::UniformInclusion => "uniform",
                accmod_core::constructions::LinkKind::CouniformProjection => "couniform",
            };
            out.check(
                format!("chain: {} {kind}", l.label),
                l.holds,
                Some(format!("{} modules tested", l.checked)),
            );
        }
        out.certificate("chain", links);
    }

    let w1 = build_family(&vd, 1)?.w_rep();
    out.check("W(1) uniform", is_uniform_module(&w1)?, None);
    out.check(
        "W(1) uniform by enumeration",
        is_uniform_module_by_enumeration(&w1, cfg)?,
        None,
    );

    if field == FieldSpec::Prime(2) {
        if let Some(r) = guard(out, "remark 3", remark3_instance(field, cfg)) {
            out.extend("remark 3: ", &r.checks);
        }
    } else if let Some(r) = guard(out, "final remark", remark_char_ne_2(field, cfg)) {
        out.extend("final remark: ", &r.checks);
        out.certificate("final_remark_offender", r.offender);
    }
    Ok(field)
}
