use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::lattice::submodules::{all_submodules, intermediate_submodules, submodules_within};
use crate::module::{is_indecomposable, quotient, socle_of, Rep, SubRep};
use crate::par;

/// Outcome of a uniform-inclusion or couniform-projection check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Number of modules tested for indecomposability.
    pub checked: usize,
    pub offender: Option<Offender>,
}

/// The first decomposable module met, in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Offender {
    /// The intermediate submodule `U`, or the submodule `X'` whose quotient decomposes.
    pub sub: SubRep,
    /// Dimension vectors of the two halves of the split found.
    pub split_dims: (Vec<usize>, Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OffenderSummary {
    pub dims: Vec<usize>,
    pub split_dims: (Vec<usize>, Vec<usize>),
}

impl Offender {
    pub fn summary(&self) -> OffenderSummary {
        OffenderSummary {
            dims: self.sub.dims(),
            split_dims: self.split_dims.clone(),
        }
    }
}

/// `Some(split dims)` if the module decomposes; zero modules count as indecomposable-vacuous.
fn decomposition_witness(r: &Rep, cfg: &Config) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if r.is_zero() {
        return Ok(None);
    }
    Ok(is_indecomposable(r, cfg)?
        .split()
        .map(|s| (s.image.dims(), s.kernel.dims())))
}

fn first_offender<F>(cfg: &Config, subs: &[SubRep], test: F) -> Result<Verdict>
where
    F: Fn(&SubRep) -> Result<Option<(Vec<usize>, Vec<usize>)>> + Sync + Send,
{
    let hit = par::find_first(cfg, subs, |s| match test(s) {
        Ok(None) => None,
        Ok(Some(d)) => Some(Ok(d)),
        Err(e) => Some(Err(e)),
    });
    match hit {
        None => Ok(Verdict {
            holds: true,
            checked: subs.len(),
            offender: None,
        }),
        Some((_, Err(e))) => Err(e),
        Some((i, Ok(split_dims))) => Ok(Verdict {
            holds: false,
            checked: i + 1,
            offender: Some(Offender {
                sub: subs[i].clone(),
                split_dims,
            }),
        }),
    }
}

/// Is every submodule `U` with `mp ⊆ U ⊆ m` indecomposable? The zero
/// module, which only occurs when `mp = 0`, is not counted.
pub fn is_uniform_inclusion(mp: &SubRep, m: &Rep, cfg: &Config) -> Result<Verdict> {
    if !mp.is_closed(m) {
        return Err(Error::NotClosed("lower end of the inclusion".into()));
    }
    let subs = intermediate_submodules(m, mp, cfg)?;
    first_offender(cfg, &subs, |u| decomposition_witness(&u.to_rep(m).0, cfg))
}

/// Is `m / X'` indecomposable for every submodule `X' ⊆ x`?
pub fn is_couniform_projection(m: &Rep, x: &SubRep, cfg: &Config) -> Result<Verdict> {
    if !x.is_closed(m) {
        return Err(Error::NotClosed("kernel of the projection".into()));
    }
    let subs = submodules_within(m, x, cfg)?;
    first_offender(cfg, &subs, |xp| {
        decomposition_witness(&quotient(m, xp)?.0, cfg)
    })
}

/// A nonzero finite-length module is uniform exactly when its socle is simple.
pub fn is_uniform_module(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(socle_of(m).length() == 1)
}

/// The defining check: every inclusion `M' ⊆ m` with `M' ≠ 0` is uniform.
/// Exponential; meant as an oracle for [`is_uniform_module`].
pub fn is_uniform_module_by_enumeration(m: &Rep, cfg: &Config) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let subs = all_submodules(m, cfg)?;
    // All intermediates of all nonzero lower ends: every nonzero submodule
    // lies between some nonzero M' and m, so it is enough that every nonzero
    // submodule is indecomposable.
    let nonzero: Vec<SubRep> = subs.into_iter().filter(|s| !s.is_zero()).collect();
    Ok(first_offender(cfg, &nonzero, |u| {
        decomposition_witness(&u.to_rep(m).0, cfg)
    })?
    .holds)
}
