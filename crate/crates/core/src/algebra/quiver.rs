use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertices and arrows are addressed by their position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// `arrows` are `(id, source vertex id, target vertex id)`.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for (id, from, to) in arrows {
            if seen.insert(id.clone(), ()).is_some() || vindex.contains_key(&id) {
                return Err(Error::InvalidQuiver(format!("duplicate id `{id}`")));
            }
            let source = *vindex.get(&from).ok_or_else(|| {
                Error::InvalidQuiver(format!("arrow `{id}` starts at unknown vertex `{from}`"))
            })?;
            let target = *vindex.get(&to).ok_or_else(|| {
                Error::InvalidQuiver(format!("arrow `{id}` ends at unknown vertex `{to}`"))
            })?;
            out.push(Arrow { id, source, target });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    /// Convenience constructor from string literals.
    pub fn from_strs(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        Quiver::new(
            vertices.iter().copied(),
            arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// Same vertices and arrow ids, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    id: a.id.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// Path from a list of arrow ids in traversal order (first arrow first).
    pub fn path(&self, ids: &[&str]) -> Result<Path> {
        let arrows = ids
            .iter()
            .map(|id| {
                self.arrow_index(id)
                    .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow `{id}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Path::from_arrows(self, arrows)
    }
}

/// A path in traversal order: `arrows[0]` is applied first.
///
/// As an algebra element under left-module conventions the path
/// `[a1, a2, ..., ak]` is the product `ak ··· a2 a1`. The empty path at a
/// vertex is that vertex's idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidQuiver(
                "empty arrow list does not name a vertex".into(),
            ));
        };
        let source = q.arrows[first].source;
        let mut at = source;
        for &a in &arrows {
            if q.arrows[a].source != at {
                return Err(Error::InvalidQuiver(format!(
                    "arrow `{}` does not start where the previous arrow ends",
                    q.arrows[a].id
                )));
            }
            at = q.arrows[a].target;
        }
        Ok(Path {
            source,
            target: at,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Traverse `self`, then `next`.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    /// The same arrows read backwards, as a path of the opposite quiver.
    pub fn reversed(&self) -> Path {
        Path {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            format!("e_{}", q.vertices[self.source])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].id.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Preference order for basis representatives: shorter first, then lexicographic.
    pub(crate) fn sort_key(&self) -> (usize, &[usize], usize) {
        (self.arrows.len(), &self.arrows, self.source)
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Path)>) -> Self {
        Relation { terms }
    }

    pub fn monomial(field_one: Scalar, path: Path) -> Self {
        Relation {
            terms: vec![(field_one, path)],
        }
    }

    /// Checks admissibility: nonempty, parallel, every path of length at least 2.
    pub fn validate(&self, index: usize) -> Result<()> {
        let bad = |reason: &str| Error::NonAdmissibleRelation {
            index,
            reason: reason.to_string(),
        };
        let Some((_, first)) = self.terms.first() else {
            return Err(bad("empty relation"));
        };
        for (_, p) in &self.terms {
            if p.len() < 2 {
                return Err(bad("contains a path of length < 2"));
            }
            if p.source != first.source || p.target != first.target {
                return Err(bad("paths are not parallel"));
            }
        }
        Ok(())
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.reversed()))
                .collect(),
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, p)| {
                if c.is_one() {
                    p.label(q)
                } else {
                    format!("{c}*{}", p.label(q))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.id, self.source, self.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;

    #[test]
    fn rejects_bad_quivers() {
        assert!(Quiver::from_strs(&["a", "a"], &[]).is_err());
        assert!(Quiver::from_strs(&["a"], &[("x", "a", "b")]).is_err());
        assert!(Quiver::from_strs(&["a", "b"], &[("x", "a", "b"), ("x", "b", "a")]).is_err());
    }

    #[test]
    fn path_composition() {
        let q = Quiver::from_strs(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let p = q.path(&["a", "b"]).unwrap();
        assert_eq!((p.source, p.target), (0, 2));
        assert!(q.path(&["b", "a"]).is_err());
        assert_eq!(p.reversed().arrows, vec![1, 0]);
        assert_eq!(p.label(&q), "a.b");
        assert_eq!(Path::trivial(1).label(&q), "e_2");
    }

    #[test]
    fn admissibility() {
        let f = FieldSpec::Prime(2);
        let q = Quiver::from_strs(&["o"], &[("x", "o", "o"), ("y", "o", "o")]).unwrap();
        let short = Relation::monomial(f.one(), q.path(&["x"]).unwrap());
        assert!(short.validate(0).is_err());
        let ok = Relation::new(vec![
            (f.one(), q.path(&["x", "y"]).unwrap()),
            (f.one(), q.path(&["y", "x"]).unwrap()),
        ]);
        assert!(ok.validate(0).is_ok());
    }
}
