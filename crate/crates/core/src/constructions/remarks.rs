use serde::Serialize;

use crate::algebra::find_witness;
use crate::check::{all_passed, Check};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Mat, Scalar};
use crate::fixtures;
use crate::lattice::{
    is_uniform_inclusion, maximal_submodules, simple_submodules, OffenderSummary,
};
use crate::module::{hom_space, is_indecomposable, is_isomorphic, quotient, spin, ModuleMap, Rep};

use super::{build_family, find_xy, relative, vadd, vscale};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Remark3Report {
    pub hom_n_m_dim: usize,
    pub hom_m_n_dim: usize,
    pub image_lengths: Vec<usize>,
    pub checks: Vec<Check>,
}

impl Remark3Report {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

fn not_a_copy_of(x: &Rep, n: &Rep, cfg: &Config) -> Result<bool> {
    Ok(!is_indecomposable(x, cfg)?.is_indecomposable() || is_isomorphic(x, n, cfg)?.is_none())
}

/// The length-5 indecomposable `M` and length-4 indecomposable `N` of the
/// 3-subspace quiver over GF(2), and the facts relating them.
pub fn remark3_instance(field: FieldSpec, cfg: &Config) -> Result<Remark3Report> {
    if field != FieldSpec::Prime(2) {
        return Err(Error::InvalidField(format!(
            "this instance lives over GF(2), not {field}"
        )));
    }
    let a = fixtures::three_subspace(field);
    let lines: [&[&[i64]]; 3] = [&[&[1], &[0]], &[&[0], &[1]], &[&[1], &[1]]];
    let m = Rep::new(
        a.clone(),
        vec![1, 1, 1, 2],
        lines.iter().map(|l| Mat::from_i64(field, l)).collect(),
    )?;
    let n = Rep::new(
        a,
        vec![1, 1, 1, 1],
        (0..3).map(|_| Mat::from_i64(field, &[&[1]])).collect(),
    )?;

    let hom_nm = hom_space(&n, &m)?;
    let hom_mn = hom_space(&m, &n)?;
    let nonzero: Vec<ModuleMap> = field
        .elements()
        .flat_map(|c0| field.elements().map(move |c1| (c0.clone(), c1)))
        .filter(|(c0, c1)| !(c0.is_zero() && c1.is_zero()))
        .filter_map(|(c0, c1)| {
            (hom_mn.len() == 2).then(|| hom_mn[0].scale(&c0).add(&hom_mn[1].scale(&c1)))
        })
        .collect();
    let image_lengths: Vec<usize> = nonzero.iter().map(ModuleMap::rank).collect();

    let mut subs_ok = true;
    for s in maximal_submodules(&m)?.iter().filter(|s| s.length() == 4) {
        subs_ok &= not_a_copy_of(&s.to_rep(&m).0, &n, cfg)?;
    }
    let mut quots_ok = true;
    for s in simple_submodules(&m)? {
        quots_ok &= not_a_copy_of(&quotient(&m, &s)?.0, &n, cfg)?;
    }
    let checks = vec![
        Check::new(
            "M indecomposable",
            is_indecomposable(&m, cfg)?.is_indecomposable(),
        ),
        Check::new(
            "N indecomposable",
            is_indecomposable(&n, cfg)?.is_indecomposable(),
        ),
        Check::new("Hom(N, M) = 0", hom_nm.is_empty()),
        Check::new("dim Hom(M, N) = 2", hom_mn.len() == 2),
        Check::new(
            "nonzero maps M -> N have image length 3",
            image_lengths.len() == 3 && image_lengths.iter().all(|&l| l == 3),
        ),
        Check::new("no length-4 submodule of M is N", subs_ok),
        Check::new("no length-4 quotient of M is N", quots_ok),
    ];
    Ok(Remark3Report {
        hom_n_m_dim: hom_nm.len(),
        hom_m_n_dim: hom_mn.len(),
        image_lengths,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharNe2Report {
    pub u_dims: Vec<usize>,
    pub u_prime_dims: Vec<usize>,
    pub uniform_inclusion_holds: bool,
    pub offender: Option<OffenderSummary>,
    /// Whether the first offender found is `U ⊕ U'` itself.
    pub offender_is_u_sum: bool,
    pub checks: Vec<Check>,
}

impl CharNe2Report {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

/// Inside `W(2)` for the Kronecker algebra in odd characteristic, the cyclic
/// submodules `U`, `U'` split `M(1) ⊂ U ⊕ U' ⊂ W(2)`.
pub fn remark_char_ne_2(field: FieldSpec, cfg: &Config) -> Result<CharNe2Report> {
    if field.characteristic() == 2 {
        return Err(Error::InvalidField(
            "the construction needs characteristic other than 2".into(),
        ));
    }
    let k = fixtures::kronecker(field);
    let w = find_witness(&k)
        .ok_or_else(|| Error::DegenerateWitness("Kronecker algebra without witness".into()))?;
    let vd = find_xy(&k, &w, cfg)?;
    let fam = build_family(&vd, 2)?;
    let space = fam.space();
    let neg = |v: Vec<Scalar>| vscale(&-field.one(), &v);
    let (x1, y1, x2, y2) = (fam.x_at(1), fam.y_at(1), fam.x_at(2), fam.y_at(2));
    let z = vadd(&vadd(&x1, &y1), &vadd(&x2, &y2));
    let zp = vadd(&vadd(&x1, &neg(y1)), &vadd(&neg(x2), &y2));
    let u = spin(space, [z.clone()]);
    let up = spin(space, [zp.clone()]);
    let sum = u.sum(&up);
    let half = field.from_i64(2).inv().expect("odd characteristic");
    let g = vscale(&half, &vadd(&z, &neg(zp)));

    let (wr, _) = fam.w.to_rep(space);
    let m1 = relative(&fam.w, &fam.m_prev).expect("M(1) lies in W(2)");
    let verdict = is_uniform_inclusion(&m1, &wr, cfg)?;
    let sum_in_w = relative(&fam.w, &sum);
    let offender_is_u_sum = match (&verdict.offender, &sum_in_w) {
        (Some(o), Some(s)) => &o.sub == s,
        _ => false,
    };
    let checks = vec![
        Check::new("dim U = 2", u.length() == 2),
        Check::new("dim U' = 2", up.length() == 2),
        Check::new("U meets U' in 0", u.intersect(&up).is_zero()),
        Check::new("U + U' inside W(2)", sum.is_subset_of(&fam.w)),
        Check::new(
            "U + U' decomposable",
            !is_indecomposable(&sum.to_rep(space).0, cfg)?.is_indecomposable(),
        ),
        Check::new("M(1) inside U + U'", fam.m_prev.is_subset_of(&sum)),
        Check::new(
            "M(1) generated by (z - z')/2",
            spin(space, [g]) == fam.m_prev,
        ),
        Check::new("M(1) in W(2) not uniform", !verdict.holds),
    ];
    Ok(CharNe2Report {
        u_dims: u.dims(),
        u_prime_dims: up.dims(),
        uniform_inclusion_holds: verdict.holds,
        offender: verdict.offender.map(|o| o.summary()),
        offender_is_u_sum,
        checks,
    })
}
