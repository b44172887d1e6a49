use serde::Serialize;

use crate::check::Check;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::lattice::{is_couniform_projection, is_uniform_inclusion, OffenderSummary};
use crate::module::{direct_sum, spin, DirectSum, ModuleMap, Rep, SubRep};
use crate::par;

use super::{relative, restrict_map, vadd, VData};

/// `V^n` with `M(n-1)`, `R(n)` and `W(n)` inside it.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub n: usize,
    pub ambient: DirectSum,
    /// `z_i = y_(i) + x_(i+1)` for `1 <= i < n`, as flat vectors of `V^n`.
    pub z: Vec<Vec<Scalar>>,
    pub m_prev: SubRep,
    pub r: SubRep,
    pub w: SubRep,
    v: Rep,
    xv: Vec<Scalar>,
    yv: Vec<Scalar>,
    uv: Vec<Scalar>,
}

impl FamilyInstance {
    pub fn space(&self) -> &Rep {
        &self.ambient.rep
    }

    fn place(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        assert!((1..=self.n).contains(&i), "component index out of range");
        self.ambient.injections[i - 1].apply(&self.v, v)
    }

    /// `x` in the `i`-th copy of `V`, counting from 1.
    pub fn x_at(&self, i: usize) -> Vec<Scalar> {
        self.place(i, &self.xv)
    }

    pub fn y_at(&self, i: usize) -> Vec<Scalar> {
        self.place(i, &self.yv)
    }

    pub fn u_at(&self, i: usize) -> Vec<Scalar> {
        self.place(i, &self.uv)
    }

    /// The `i`-th copy `V_(i)` as a submodule.
    pub fn copy(&self, i: usize) -> SubRep {
        self.ambient.injections[i - 1].image()
    }

    /// Lengths of `M(n-1)`, `R(n)`, `W(n)`.
    pub fn lengths(&self) -> [usize; 3] {
        [self.m_prev.length(), self.r.length(), self.w.length()]
    }

    pub fn length_checks(&self) -> Vec<Check> {
        let n = self.n;
        let [a, b, c] = self.lengths();
        vec![
            Check::with_detail(
                format!("length M({}) = {}", n - 1, 2 * n - 1),
                a == 2 * n - 1,
                format!("found {a}"),
            ),
            Check::with_detail(
                format!("length R({n}) = {}", 2 * n),
                b == 2 * n,
                format!("found {b}"),
            ),
            Check::with_detail(
                format!("length W({n}) = {}", 2 * n + 1),
                c == 2 * n + 1,
                format!("found {c}"),
            ),
        ]
    }

    pub fn m_prev_rep(&self) -> Rep {
        self.m_prev.to_rep(self.space()).0
    }

    pub fn r_rep(&self) -> Rep {
        self.r.to_rep(self.space()).0
    }

    pub fn w_rep(&self) -> Rep {
        self.w.to_rep(self.space()).0
    }
}

pub fn build_family(vd: &VData, n: usize) -> Result<FamilyInstance> {
    if n == 0 {
        return Err(Error::Unsupported("families start at n = 1".into()));
    }
    let copies: Vec<Rep> = (0..n).map(|_| vd.v_rep.clone()).collect();
    let ambient = direct_sum(&copies)?;
    let mut fam = FamilyInstance {
        n,
        ambient,
        z: Vec::new(),
        m_prev: SubRep::from_parts(Vec::new()),
        r: SubRep::from_parts(Vec::new()),
        w: SubRep::from_parts(Vec::new()),
        v: vd.v_rep.clone(),
        xv: vd.xv.clone(),
        yv: vd.yv.clone(),
        uv: vd.uv.clone(),
    };
    fam.z = (1..n)
        .map(|i| vadd(&fam.y_at(i), &fam.x_at(i + 1)))
        .collect();
    let space = fam.space().clone();
    fam.m_prev = if n == 1 {
        spin(&space, [fam.u_at(1)])
    } else {
        spin(&space, fam.z.clone())
    };
    let mut r_gens = vec![fam.x_at(1)];
    r_gens.extend(fam.z.iter().cloned());
    fam.r = spin(&space, r_gens.clone());
    r_gens.push(fam.y_at(n));
    fam.w = spin(&space, r_gens);
    Ok(fam)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkKind {
    UniformInclusion,
    CouniformProjection,
}

/// One arrow of the chain. For an inclusion `sub` is the smaller module
/// inside `target`; for a projection it is the kernel inside `source`.
#[derive(Clone, Debug)]
pub struct ChainLink {
    pub label: String,
    pub kind: LinkKind,
    pub source: Rep,
    pub target: Rep,
    pub map: ModuleMap,
    pub sub: SubRep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub label: String,
    pub kind: LinkKind,
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub holds: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offender: Option<OffenderSummary>,
}

/// The map `V^(n+1) -> V^n` forgetting copy `drop` (0-based) and keeping the others in order.
fn forget_copy(big: &DirectSum, small: &DirectSum, drop: usize) -> ModuleMap {
    let mut out = ModuleMap::zero(&big.rep, &small.rep);
    let mut j = 0;
    for (i, p) in big.projections.iter().enumerate() {
        if i == drop {
            continue;
        }
        out = out.add(&small.injections[j].compose(p));
        j += 1;
    }
    out
}

fn inclusion(label: String, ambient: &Rep, lower: &SubRep, upper: &SubRep) -> ChainLink {
    let (source, _) = lower.to_rep(ambient);
    let (target, _) = upper.to_rep(ambient);
    let id = ModuleMap::identity(ambient);
    ChainLink {
        label,
        kind: LinkKind::UniformInclusion,
        map: restrict_map(&id, lower, upper).expect("lower end lies in upper end"),
        sub: relative(upper, lower).expect("lower end lies in upper end"),
        source,
        target,
    }
}

fn projection(
    label: String,
    big: &FamilyInstance,
    from: &SubRep,
    small: &FamilyInstance,
    onto: &SubRep,
    drop: usize,
) -> Result<ChainLink> {
    let forget = forget_copy(&big.ambient, &small.ambient, drop);
    let map = restrict_map(&forget, from, onto)
        .ok_or_else(|| Error::DimensionMismatch(format!("{label}: image leaves the target")))?;
    let (source, _) = from.to_rep(big.space());
    let (target, _) = onto.to_rep(small.space());
    if map.rank() != target.length() {
        return Err(Error::DimensionMismatch(format!(
            "{label}: map is not onto"
        )));
    }
    Ok(ChainLink {
        label,
        kind: LinkKind::CouniformProjection,
        sub: map.kernel(),
        map,
        source,
        target,
    })
}

/// For `m = 1..=upto`: `M(m-1) ⊆ R(m)`, `R(m) ⊆ W(m)`, `M(m) -> R(m)` and `R(m+1) -> W(m)`.
pub fn chain(vd: &VData, upto: usize) -> Result<Vec<ChainLink>> {
    if upto == 0 {
        return Err(Error::Unsupported("the chain starts at m = 1".into()));
    }
    let fams: Vec<FamilyInstance> = (1..=upto + 1)
        .map(|n| build_family(vd, n))
        .collect::<Result<_>>()?;
    let mut links = Vec::new();
    for m in 1..=upto {
        let fm = &fams[m - 1];
        let next = &fams[m];
        links.push(inclusion(
            format!("M({}) -> R({m})", m - 1),
            fm.space(),
            &fm.m_prev,
            &fm.r,
        ));
        links.push(inclusion(
            format!("R({m}) -> W({m})"),
            fm.space(),
            &fm.r,
            &fm.w,
        ));
        links.push(projection(
            format!("M({m}) -> R({m})"),
            next,
            &next.m_prev,
            fm,
            &fm.r,
            0,
        )?);
        links.push(projection(
            format!("R({}) -> W({m})", m + 1),
            next,
            &next.r,
            fm,
            &fm.w,
            m,
        )?);
    }
    Ok(links)
}

/// Runs the uniform or couniform check on each link; links are checked in parallel when enabled.
pub fn verify_chain(links: &[ChainLink], cfg: &Config) -> Result<Vec<LinkReport>> {
    par::map(cfg, links, |l| {
        let verdict = match l.kind {
            LinkKind::UniformInclusion => is_uniform_inclusion(&l.sub, &l.target, cfg)?,
            LinkKind::CouniformProjection => is_couniform_projection(&l.source, &l.sub, cfg)?,
        };
        Ok(LinkReport {
            label: l.label.clone(),
            kind: l.kind,
            source_dims: l.source.dims().to_vec(),
            target_dims: l.target.dims().to_vec(),
            holds: verdict.holds,
            checked: verdict.checked,
            offender: verdict.offender.map(|o| o.summary()),
        })
    })
    .into_iter()
    .collect()
}
