use std::collections::HashMap;
use std::sync::RwLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::lattice::submodules::{maximal_submodules, simple_submodules};
use crate::module::{is_indecomposable, is_isomorphic, quotient, Rep, SubRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// The module is simple; the chain stops.
    SimpleBase,
    /// The next module is `witness`, a submodule of colength 1.
    #[serde(rename = "submodule-of-colength-1")]
    SubmoduleOfColength1,
    /// The next module is the quotient by the simple submodule `witness`.
    QuotientBySimple,
}

#[derive(Clone, Debug)]
pub struct AccessStep {
    pub module: Rep,
    pub kind: StepKind,
    pub witness: SubRep,
}

/// A chain from a module down to a simple one, one length at a time.
#[derive(Clone, Debug)]
pub struct AccessCertificate {
    pub chain: Vec<AccessStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepSummary {
    pub length: usize,
    pub dims: Vec<usize>,
    pub kind: StepKind,
    pub witness_dims: Vec<usize>,
}

impl AccessCertificate {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn summary(&self) -> Vec<StepSummary> {
        self.chain
            .iter()
            .map(|s| StepSummary {
                length: s.module.length(),
                dims: s.module.dims().to_vec(),
                kind: s.kind,
                witness_dims: s.witness.dims(),
            })
            .collect()
    }

    /// Re-checks every link from scratch: lengths drop by one, each link is
    /// a colength-1 submodule or a quotient by a simple submodule isomorphic
    /// to the next module, every module is indecomposable, and the last is simple.
    pub fn validate(&self, cfg: &Config) -> Result<bool> {
        let Some(last) = self.chain.last() else {
            return Ok(false);
        };
        if last.module.length() != 1 || last.kind != StepKind::SimpleBase {
            return Ok(false);
        }
        for (i, step) in self.chain.iter().enumerate() {
            if !is_indecomposable(&step.module, cfg)?.is_indecomposable() {
                return Ok(false);
            }
            let Some(next) = self.chain.get(i + 1) else {
                break;
            };
            if next.module.length() + 1 != step.module.length()
                || !step.witness.is_closed(&step.module)
            {
                return Ok(false);
            }
            let derived = match step.kind {
                StepKind::SimpleBase => return Ok(false),
                StepKind::SubmoduleOfColength1 => {
                    if step.witness.length() + 1 != step.module.length() {
                        return Ok(false);
                    }
                    step.witness.to_rep(&step.module).0
                }
                StepKind::QuotientBySimple => {
                    if step.witness.length() != 1 {
                        return Ok(false);
                    }
                    quotient(&step.module, &step.witness)?.0
                }
            };
            if is_isomorphic(&derived, &next.module, cfg)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug)]
struct MemoEntry {
    rep: Rep,
    accessible: bool,
    certificate: Option<AccessCertificate>,
}

/// Accessibility verdicts keyed by dimension vector, one entry per
/// isomorphism class. Readers run concurrently; insertions are serialized.
#[derive(Debug, Default)]
pub struct MemoTable {
    entries: RwLock<HashMap<Vec<usize>, Vec<MemoEntry>>>,
}

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries
            .read()
            .expect("memo lock")
            .values()
            .map(Vec::len)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lookup(&self, m: &Rep, cfg: &Config) -> Result<Option<(bool, Option<AccessCertificate>)>> {
        let candidates: Vec<MemoEntry> = self
            .entries
            .read()
            .expect("memo lock")
            .get(m.dims())
            .cloned()
            .unwrap_or_default();
        for c in candidates {
            if is_isomorphic(&c.rep, m, cfg)?.is_some() {
                return Ok(Some((c.accessible, c.certificate)));
            }
        }
        Ok(None)
    }

    fn insert(
        &self,
        m: &Rep,
        accessible: bool,
        certificate: Option<AccessCertificate>,
        cfg: &Config,
    ) -> Result<()> {
        // Re-check under the write lock so concurrent inserts keep one entry per class.
        let mut guard = self.entries.write().expect("memo lock");
        let list = guard.entry(m.dims().to_vec()).or_default();
        for c in list.iter() {
            if is_isomorphic(&c.rep, m, cfg)?.is_some() {
                return Ok(());
            }
        }
        list.push(MemoEntry {
            rep: m.clone(),
            accessible,
            certificate,
        });
        Ok(())
    }
}

/// Options for [`is_accessible_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AccessOptions {
    /// Shuffle candidate children with this seed instead of the default order
    /// (maximal submodules first, then quotients by simple submodules).
    pub shuffle_seed: Option<u64>,
}

pub fn is_accessible(
    m: &Rep,
    memo: &MemoTable,
    cfg: &Config,
) -> Result<(bool, Option<AccessCertificate>)> {
    is_accessible_with(m, memo, cfg, AccessOptions::default())
}

pub fn is_accessible_with(
    m: &Rep,
    memo: &MemoTable,
    cfg: &Config,
    opts: AccessOptions,
) -> Result<(bool, Option<AccessCertificate>)> {
    if m.field().order().is_none() {
        return Err(Error::NeedsFiniteField("accessibility"));
    }
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let mut rng = opts.shuffle_seed.map(ChaCha8Rng::seed_from_u64);
    let out = explore(m, memo, cfg, &mut rng)?;
    memo.insert(m, out.0, out.1.clone(), cfg)?;
    Ok(out)
}

fn explore(
    m: &Rep,
    memo: &MemoTable,
    cfg: &Config,
    rng: &mut Option<ChaCha8Rng>,
) -> Result<(bool, Option<AccessCertificate>)> {
    if m.length() == 1 {
        let cert = AccessCertificate {
            chain: vec![AccessStep {
                module: m.clone(),
                kind: StepKind::SimpleBase,
                witness: SubRep::whole(m),
            }],
        };
        return Ok((true, Some(cert)));
    }
    if !is_indecomposable(m, cfg)?.is_indecomposable() {
        return Ok((false, None));
    }
    let mut candidates: Vec<(StepKind, SubRep)> = maximal_submodules(m)?
        .into_iter()
        .map(|s| (StepKind::SubmoduleOfColength1, s))
        .chain(
            simple_submodules(m)?
                .into_iter()
                .map(|s| (StepKind::QuotientBySimple, s)),
        )
        .collect();
    if let Some(r) = rng.as_mut() {
        candidates.shuffle(r);
    }
    for (kind, witness) in candidates {
        let child = match kind {
            StepKind::SubmoduleOfColength1 => witness.to_rep(m).0,
            _ => quotient(m, &witness)?.0,
        };
        let (ok, tail) = match memo.lookup(&child, cfg)? {
            Some(hit) => hit,
            None => {
                let res = explore(&child, memo, cfg, rng)?;
                memo.insert(&child, res.0, res.1.clone(), cfg)?;
                res
            }
        };
        if let (true, Some(tail)) = (ok, tail) {
            let mut chain = vec![AccessStep {
                module: m.clone(),
                kind,
                witness,
            }];
            chain.extend(tail.chain);
            return Ok((true, Some(AccessCertificate { chain })));
        }
    }
    Ok((false, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{FieldSpec, Mat};
    use crate::fixtures;
    use crate::module::direct_sum;

    #[test]
    fn simple_is_accessible() {
        let s = Rep::simple(fixtures::kronecker(FieldSpec::Prime(2)), 0);
        let (ok, cert) = is_accessible(&s, &MemoTable::new(), &Config::default()).unwrap();
        assert!(ok);
        assert_eq!(cert.unwrap().len(), 1);
    }

    #[test]
    fn s_plus_s_is_not_accessible() {
        let s = Rep::simple(fixtures::kronecker(FieldSpec::Prime(2)), 0);
        let ss = direct_sum(&[s.clone(), s]).unwrap().rep;
        let (ok, cert) = is_accessible(&ss, &MemoTable::new(), &Config::default()).unwrap();
        assert!(!ok && cert.is_none());
    }

    #[test]
    fn kronecker_v_chain_validates() {
        let k = fixtures::kronecker(FieldSpec::Prime(2));
        let f = k.field();
        let v = Rep::new(
            k,
            vec![2, 1],
            vec![Mat::from_i64(f, &[&[1, 0]]), Mat::from_i64(f, &[&[0, 1]])],
        )
        .unwrap();
        let cfg = Config::default();
        let memo = MemoTable::new();
        let (ok, cert) = is_accessible(&v, &memo, &cfg).unwrap();
        let cert = cert.unwrap();
        assert!(ok);
        assert_eq!(
            cert.summary().iter().map(|s| s.length).collect::<Vec<_>>(),
            vec![3, 2, 1]
        );
        assert!(cert.validate(&cfg).unwrap());
        assert!(!memo.is_empty());
    }
}
