use std::path::Path;
use std::sync::Arc;

use accmod_core::algebra::{find_witness, BoundQuiverAlgebra};
use accmod_core::constructions::{build_family, find_xy, relative, FamilyInstance};
use accmod_core::exactlin::FieldSpec;
use accmod_core::module::{Rep, SubRep};
use accmod_core::{fixtures, io, Config, Error, Result};

/// Loads an algebra from a fixture name or a file. `field` applies to
/// fixtures; for files it must agree with the file when given.
pub fn load_algebra(
    fixture: Option<&str>,
    path: Option<&Path>,
    field: Option<FieldSpec>,
) -> Result<Arc<BoundQuiverAlgebra>> {
    match (fixture, path) {
        (Some(_), Some(_)) => Err(Error::Parse(
            "give either --fixture or --algebra, not both".into(),
        )),
        (_, Some(p)) => {
            let alg = io::load_algebra(p)?;
            check_field(alg.field(), field)?;
            Ok(Arc::new(alg))
        }
        (name, None) => fixtures::by_name(
            name.unwrap_or("kronecker"),
            field.unwrap_or(FieldSpec::Prime(2)),
        ),
    }
}

pub fn check_field(actual: FieldSpec, requested: Option<FieldSpec>) -> Result<()> {
    match requested {
        Some(f) if f != actual => Err(Error::InvalidField(format!(
            "--field {} disagrees with the input, which is over {}",
            f.to_label(),
            actual.to_label()
        ))),
        _ => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    M(usize),
    R(usize),
    W(usize),
}

impl FamilyName {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "V" {
            return Ok(FamilyName::W(1));
        }
        let bad = || {
            Error::Parse(format!(
                "bad family name `{s}` (expected M(k), R(k), W(k) or V)"
            ))
        };
        let (head, rest) = t.split_at(t.find('(').ok_or_else(bad)?);
        let k: usize = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(bad)?;
        match (head.trim(), k) {
            ("M", k) => Ok(FamilyName::M(k)),
            ("R", k) if k >= 1 => Ok(FamilyName::R(k)),
            ("W", k) if k >= 1 => Ok(FamilyName::W(k)),
            _ => Err(bad()),
        }
    }

    /// The `n` of the ambient `V^n` the module lives in.
    pub fn ambient_n(self) -> usize {
        match self {
            FamilyName::M(k) => k + 1,
            FamilyName::R(k) | FamilyName::W(k) => k,
        }
    }

    fn pick(self, fam: &FamilyInstance) -> SubRep {
        match self {
            FamilyName::M(_) => fam.m_prev.clone(),
            FamilyName::R(_) => fam.r.clone(),
            FamilyName::W(_) => fam.w.clone(),
        }
    }
}

/// A named module of the families, inside its ambient `V^n`.
pub struct FamilyModule {
    pub family: FamilyInstance,
    pub sub: SubRep,
    pub rep: Rep,
}

pub fn family_module(
    alg: &Arc<BoundQuiverAlgebra>,
    name: &str,
    cfg: &Config,
) -> Result<FamilyModule> {
    let fname = FamilyName::parse(name)?;
    let w = find_witness(alg).ok_or_else(|| {
        Error::DegenerateWitness("the algebra has no non-distributivity witness".into())
    })?;
    let vdata = find_xy(alg, &w, cfg)?;
    let family = build_family(&vdata, fname.ambient_n())?;
    let sub = fname.pick(&family);
    let rep = sub.to_rep(family.space()).0;
    Ok(FamilyModule { family, sub, rep })
}

/// A submodule of a family module: another family member of the same `V^n`,
/// or `X` (the part in the last copy of `V`) or `Y` (the part in the first).
pub fn family_submodule(fm: &FamilyModule, name: &str) -> Result<SubRep> {
    let fam = &fm.family;
    let inner = match name.trim() {
        "X" => fm.sub.intersect(&fam.copy(fam.n)),
        "Y" => fm.sub.intersect(&fam.copy(1)),
        other => {
            let sname = FamilyName::parse(other)?;
            if sname.ambient_n() != fam.n {
                return Err(Error::Unsupported(format!(
                    "{other} does not live in V^{}, the ambient module of the main module",
                    fam.n
                )));
            }
            sname.pick(fam)
        }
    };
    relative(&fm.sub, &inner)
        .ok_or_else(|| Error::Unsupported(format!("{name} is not contained in the main module")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names() {
        assert_eq!(FamilyName::parse("W(3)").unwrap(), FamilyName::W(3));
        assert_eq!(FamilyName::parse(" M( 0 ) ").unwrap(), FamilyName::M(0));
        assert_eq!(FamilyName::parse("V").unwrap(), FamilyName::W(1));
        assert!(FamilyName::parse("R(0)").is_err());
        assert!(FamilyName::parse("Q(2)").is_err());
        assert!(FamilyName::parse("W3").is_err());
    }

    #[test]
    fn resolves_sub_families() {
        let cfg = Config::default();
        let k = fixtures::kronecker(FieldSpec::Prime(3));
        let fm = family_module(&k, "W(2)", &cfg).unwrap();
        assert_eq!(fm.rep.length(), 5);
        assert_eq!(family_submodule(&fm, "M(1)").unwrap().length(), 3);
        assert!(family_submodule(&fm, "M(2)").is_err());
        let r3 = family_module(&k, "R(3)", &cfg).unwrap();
        assert_eq!(family_submodule(&r3, "X").unwrap().length(), 1);
    }
}
