//! JSON files for algebras, modules, submodules and witnesses.
//!
//! Paths list arrow ids in traversal order: the first arrow is applied first,
//! so `["alpha", "gamma"]` is the product `gamma alpha`. Matrices are
//! `target dim × source dim` and act on column vectors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra, NonDistWitness, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Mat, Scalar};
use crate::module::{spin, Rep, SubRep};

pub const PATH_ORDER: &str = "right_to_left_action";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Prime { p: u64 },
    Named(String),
}

/// An integer or a string such as `"-3"` or `"1/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Str(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: CoeffJson,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldJson,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_order: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(Box<AlgebraFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: AlgebraRef,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub actions: BTreeMap<String, Vec<Vec<CoeffJson>>>,
}

/// A submodule given by generators, each a flat vector of the parent module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmoduleFile {
    pub generators: Vec<Vec<CoeffJson>>,
}

/// Each element maps basis labels (`e_a`, `alpha`, `alpha.beta`) to coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub e: BTreeMap<String, CoeffJson>,
    pub f: BTreeMap<String, CoeffJson>,
    pub phi: BTreeMap<String, CoeffJson>,
    pub psi: BTreeMap<String, CoeffJson>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{origin}: {e}")))
}

fn read(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn field_from_json(f: &FieldJson) -> Result<FieldSpec> {
    match f {
        FieldJson::Prime { p } => FieldSpec::prime(*p),
        FieldJson::Named(s) => FieldSpec::parse(s),
    }
}

pub fn field_to_json(f: FieldSpec) -> FieldJson {
    match f {
        FieldSpec::Prime(p) => FieldJson::Prime { p },
        FieldSpec::Rational => FieldJson::Named("Q".into()),
    }
}

pub fn coeff_from_json(f: FieldSpec, c: &CoeffJson, ctx: &str) -> Result<Scalar> {
    match c {
        CoeffJson::Int(n) => Ok(f.from_i64(*n)),
        CoeffJson::Str(s) => f
            .parse_scalar(s)
            .map_err(|e| Error::Parse(format!("{ctx}: {e}"))),
    }
}

pub fn coeff_to_json(c: &Scalar) -> CoeffJson {
    if let Some(v) = c.residue() {
        return CoeffJson::Int(v as i64);
    }
    let q = c.as_rational().expect("rational scalar");
    match (q.denom().is_one(), q.numer().to_i64()) {
        (true, Some(n)) => CoeffJson::Int(n),
        _ => CoeffJson::Str(c.to_string()),
    }
}

pub fn algebra_from_file(file: &AlgebraFile, origin: &str) -> Result<BoundQuiverAlgebra> {
    if let Some(order) = &file.path_order {
        if order != PATH_ORDER {
            return Err(Error::Parse(format!(
                "{origin}: path_order: expected `{PATH_ORDER}`, found `{order}`"
            )));
        }
    }
    let field =
        field_from_json(&file.field).map_err(|e| Error::Parse(format!("{origin}: field: {e}")))?;
    for (i, a) in file.arrows.iter().enumerate() {
        for (key, v) in [("from", &a.from), ("to", &a.to)] {
            if !file.vertices.contains(v) {
                return Err(Error::Parse(format!(
                    "{origin}: arrows[{i}].{key}: unknown vertex `{v}`"
                )));
            }
        }
    }
    let quiver = Quiver::new(
        file.vertices.clone(),
        file.arrows
            .iter()
            .map(|a| (a.id.clone(), a.from.clone(), a.to.clone())),
    )
    .map_err(|e| Error::Parse(format!("{origin}: {e}")))?;
    let mut relations = Vec::new();
    for (ri, rel) in file.relations.iter().enumerate() {
        let mut terms = Vec::new();
        for (ti, t) in rel.iter().enumerate() {
            let ctx = format!("{origin}: relations[{ri}][{ti}]");
            if t.path.is_empty() {
                return Err(Error::Parse(format!("{ctx}.path: empty path")));
            }
            let ids: Vec<&str> = t.path.iter().map(String::as_str).collect();
            let path = quiver
                .path(&ids)
                .map_err(|e| Error::Parse(format!("{ctx}.path: {e}")))?;
            terms.push((
                coeff_from_json(field, &t.coeff, &format!("{ctx}.coeff"))?,
                path,
            ));
        }
        relations.push(Relation::new(terms));
    }
    BoundQuiverAlgebra::build(quiver, relations, field)
}

pub fn algebra_to_file(alg: &BoundQuiverAlgebra) -> AlgebraFile {
    let q = alg.quiver();
    AlgebraFile {
        field: field_to_json(alg.field()),
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowJson {
                id: a.id.clone(),
                from: q.vertices()[a.source].clone(),
                to: q.vertices()[a.target].clone(),
            })
            .collect(),
        relations: alg
            .relations()
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, p)| TermJson {
                        coeff: coeff_to_json(c),
                        path: p.arrows.iter().map(|&a| q.arrows()[a].id.clone()).collect(),
                    })
                    .collect()
            })
            .collect(),
        path_order: Some(PATH_ORDER.into()),
    }
}

pub fn parse_algebra(text: &str, origin: &str) -> Result<BoundQuiverAlgebra> {
    algebra_from_file(&parse_json(text, origin)?, origin)
}

pub fn load_algebra(path: &FsPath) -> Result<BoundQuiverAlgebra> {
    parse_algebra(&read(path)?, &path.display().to_string())
}

/// Builds a module over `alg`, or over the algebra named in the file when `alg` is `None`.
/// Relative algebra paths are resolved against `base`.
pub fn module_from_file(
    file: &ModuleFile,
    origin: &str,
    base: Option<&FsPath>,
    alg: Option<Arc<BoundQuiverAlgebra>>,
) -> Result<Rep> {
    let alg = match (alg, &file.algebra) {
        (Some(a), _) => a,
        (None, AlgebraRef::Inline(inner)) => {
            Arc::new(algebra_from_file(inner, &format!("{origin}: algebra"))?)
        }
        (None, AlgebraRef::Path(p)) => {
            let mut path = PathBuf::from(p);
            if path.is_relative() {
                if let Some(b) = base {
                    path = b.join(path);
                }
            }
            Arc::new(load_algebra(&path)?)
        }
    };
    let q = alg.quiver();
    let f = alg.field();
    for v in file.dims.keys() {
        if q.vertex_index(v).is_none() {
            return Err(Error::Parse(format!("{origin}: dims.{v}: unknown vertex")));
        }
    }
    for a in file.actions.keys() {
        if q.arrow_index(a).is_none() {
            return Err(Error::Parse(format!(
                "{origin}: actions.{a}: unknown arrow"
            )));
        }
    }
    let dims: Vec<usize> = q
        .vertices()
        .iter()
        .map(|v| file.dims.get(v).copied().unwrap_or(0))
        .collect();
    let mut actions = Vec::new();
    for a in q.arrows() {
        let (rows, cols) = (dims[a.target], dims[a.source]);
        let ctx = format!("{origin}: actions.{}", a.id);
        let m = match file.actions.get(&a.id) {
            None => Mat::zeros(f, rows, cols),
            Some(entries) => {
                let ok = entries.len() == rows && entries.iter().all(|r| r.len() == cols);
                // An arrow between zero spaces may be written as [] regardless of shape.
                if !ok && !(rows * cols == 0 && entries.iter().all(Vec::is_empty)) {
                    return Err(Error::Parse(format!(
                        "{ctx}: expected a {rows}x{cols} matrix"
                    )));
                }
                let mut m = Mat::zeros(f, rows, cols);
                for (i, row) in entries.iter().enumerate() {
                    for (j, c) in row.iter().enumerate() {
                        m.set(i, j, coeff_from_json(f, c, &format!("{ctx}[{i}][{j}]"))?);
                    }
                }
                m
            }
        };
        actions.push(m);
    }
    Rep::new(alg.clone(), dims, actions).map_err(|e| Error::Parse(format!("{origin}: {e}")))
}

pub fn module_to_file(m: &Rep) -> ModuleFile {
    let alg = m.algebra();
    let q = alg.quiver();
    ModuleFile {
        algebra: AlgebraRef::Inline(Box::new(algebra_to_file(alg))),
        dims: q
            .vertices()
            .iter()
            .cloned()
            .zip(m.dims().iter().copied())
            .collect(),
        actions: q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                (
                    a.id.clone(),
                    m.action(ai)
                        .row_vecs()
                        .iter()
                        .map(|r| r.iter().map(coeff_to_json).collect())
                        .collect(),
                )
            })
            .collect(),
    }
}

pub fn parse_module(
    text: &str,
    origin: &str,
    base: Option<&FsPath>,
    alg: Option<Arc<BoundQuiverAlgebra>>,
) -> Result<Rep> {
    module_from_file(&parse_json(text, origin)?, origin, base, alg)
}

pub fn load_module(path: &FsPath, alg: Option<Arc<BoundQuiverAlgebra>>) -> Result<Rep> {
    parse_module(
        &read(path)?,
        &path.display().to_string(),
        path.parent(),
        alg,
    )
}

pub fn submodule_from_file(file: &SubmoduleFile, parent: &Rep, origin: &str) -> Result<SubRep> {
    let f = parent.field();
    let mut gens = Vec::new();
    for (i, g) in file.generators.iter().enumerate() {
        if g.len() != parent.length() {
            return Err(Error::Parse(format!(
                "{origin}: generators[{i}]: expected {} entries, found {}",
                parent.length(),
                g.len()
            )));
        }
        gens.push(
            g.iter()
                .enumerate()
                .map(|(j, c)| coeff_from_json(f, c, &format!("{origin}: generators[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(spin(parent, gens))
}

pub fn load_submodule(path: &FsPath, parent: &Rep) -> Result<SubRep> {
    let origin = path.display().to_string();
    submodule_from_file(&parse_json(&read(path)?, &origin)?, parent, &origin)
}

fn element_from_map(
    alg: &BoundQuiverAlgebra,
    m: &BTreeMap<String, CoeffJson>,
    ctx: &str,
) -> Result<AlgebraElement> {
    let mut terms = Vec::new();
    for (label, c) in m {
        terms.push((
            coeff_from_json(alg.field(), c, &format!("{ctx}.{label}"))?,
            label.as_str(),
        ));
    }
    alg.element_from_terms(&terms)
        .map_err(|e| Error::Parse(format!("{ctx}: {e}")))
}

pub fn element_to_map(alg: &BoundQuiverAlgebra, x: &AlgebraElement) -> BTreeMap<String, CoeffJson> {
    x.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (alg.basis_label(i), coeff_to_json(c)))
        .collect()
}

pub fn witness_from_file(
    alg: &BoundQuiverAlgebra,
    file: &WitnessFile,
    origin: &str,
) -> Result<NonDistWitness> {
    Ok(NonDistWitness {
        e: element_from_map(alg, &file.e, &format!("{origin}: e"))?,
        f: element_from_map(alg, &file.f, &format!("{origin}: f"))?,
        phi: element_from_map(alg, &file.phi, &format!("{origin}: phi"))?,
        psi: element_from_map(alg, &file.psi, &format!("{origin}: psi"))?,
    })
}

pub fn witness_to_file(alg: &BoundQuiverAlgebra, w: &NonDistWitness) -> WitnessFile {
    WitnessFile {
        e: element_to_map(alg, &w.e),
        f: element_to_map(alg, &w.f),
        phi: element_to_map(alg, &w.phi),
        psi: element_to_map(alg, &w.psi),
    }
}

pub fn load_witness(alg: &BoundQuiverAlgebra, path: &FsPath) -> Result<NonDistWitness> {
    let origin = path.display().to_string();
    witness_from_file(alg, &parse_json(&read(path)?, &origin)?, &origin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const KRONECKER: &str = r#"{
        "field": {"p": 3},
        "vertices": ["a", "b"],
        "arrows": [{"id": "alpha", "from": "a", "to": "b"}, {"id": "beta", "from": "a", "to": "b"}],
        "path_order": "right_to_left_action"
    }"#;

    #[test]
    fn algebra_round_trip() {
        let a = parse_algebra(KRONECKER, "k.json").unwrap();
        assert!(a.same_as(&fixtures::kronecker(FieldSpec::Prime(3))));
        let b = algebra_from_file(
            &algebra_to_file(&fixtures::local_b(FieldSpec::Rational)),
            "b",
        )
        .unwrap();
        assert!(b.same_as(&fixtures::local_b(FieldSpec::Rational)));
    }

    #[test]
    fn module_round_trip() {
        let text = format!(
            r#"{{"algebra": {KRONECKER}, "dims": {{"a": 2, "b": 1}}, "actions": {{"alpha": [[1, 0]], "beta": [[0, "2"]]}}}}"#
        );
        let m = parse_module(&text, "m.json", None, None).unwrap();
        assert_eq!(m.dims(), &[2, 1]);
        let again = module_from_file(&module_to_file(&m), "again", None, None).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn errors_carry_context() {
        let bad = KRONECKER.replace(
            r#""to": "b"}, {"id": "beta""#,
            r#""to": "c"}, {"id": "beta""#,
        );
        let e = parse_algebra(&bad, "k.json").unwrap_err().to_string();
        assert!(e.contains("arrows[0].to") && e.contains("`c`"), "{e}");
        let e = parse_algebra("{\"field\": ", "k.json")
            .unwrap_err()
            .to_string();
        assert!(e.contains("k.json") && e.contains("line"), "{e}");
        let text = format!(
            r#"{{"algebra": {KRONECKER}, "dims": {{"a": 2, "b": 1}}, "actions": {{"alpha": [[1]]}}}}"#
        );
        let e = parse_module(&text, "m.json", None, None)
            .unwrap_err()
            .to_string();
        assert!(e.contains("actions.alpha") && e.contains("1x2"), "{e}");
    }

    #[test]
    fn witness_round_trip() {
        let k = fixtures::kronecker(FieldSpec::Prime(2));
        let w = crate::algebra::find_witness(&k).unwrap();
        let file = witness_to_file(&k, &w);
        assert_eq!(witness_from_file(&k, &file, "w").unwrap(), w);
    }

    #[test]
    fn relations_follow_traversal_order() {
        let text = r#"{
            "field": {"p": 2},
            "vertices": ["1", "2", "3"],
            "arrows": [{"id": "a", "from": "1", "to": "2"}, {"id": "b", "from": "2", "to": "3"}],
            "relations": [[{"coeff": 1, "path": ["a", "b"]}]]
        }"#;
        let alg = parse_algebra(text, "a2.json").unwrap();
        assert_eq!(alg.dim(), 5);
        let reversed = text.replace(r#"["a", "b"]"#, r#"["b", "a"]"#);
        assert!(parse_algebra(&reversed, "x").is_err());
    }
}
