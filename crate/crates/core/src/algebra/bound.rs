use std::collections::HashMap;

use crate::algebra::quiver::{Path, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, LinearSystem, Mat, Scalar, SubspaceBasis};

/// Paths longer than this without the ideal swallowing them are reported as
/// a non-admissible ideal.
pub const DEFAULT_PATH_BOUND: usize = 16;

/// Upper limit on the number of paths considered during elimination.
const PATH_COUNT_LIMIT: usize = 20_000;

/// Element of an algebra, as coordinates over its path-class basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement(pub Vec<Scalar>);

impl AlgebraElement {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

/// A basic algebra `kQ/I` with `I` admissible, stored by a path-class basis
/// and structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiverAlgebra {
    field: FieldSpec,
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    /// `table[i][j]` holds the coordinates of `basis[i] * basis[j]`.
    table: Vec<Vec<Vec<Scalar>>>,
    vertex_idempotents: Vec<usize>,
    radical: Vec<usize>,
    /// Every path of length below `nilpotency` has a normal form here; longer paths vanish.
    normal_forms: HashMap<Path, Vec<Scalar>>,
    nilpotency: usize,
}

impl BoundQuiverAlgebra {
    pub fn build(quiver: Quiver, relations: Vec<Relation>, field: FieldSpec) -> Result<Self> {
        Self::build_with_bound(quiver, relations, field, DEFAULT_PATH_BOUND)
    }

    /// Computes the path-class basis degree by degree: for increasing `n`,
    /// eliminates the ideal inside `kQ / J^(n+1)` until every path of
    /// length `n` lies in the ideal.
    pub fn build_with_bound(
        quiver: Quiver,
        relations: Vec<Relation>,
        field: FieldSpec,
        bound: usize,
    ) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            r.validate(i)?;
            for (c, _) in &r.terms {
                if c.field() != field {
                    return Err(Error::InvalidField(format!(
                        "relation {i} has coefficients outside {field}"
                    )));
                }
            }
        }
        let mut by_len: Vec<Vec<Path>> =
            vec![(0..quiver.vertex_count()).map(Path::trivial).collect()];
        for n in 1..=bound {
            let prev = &by_len[n - 1];
            let mut next = Vec::new();
            for p in prev {
                for (ai, a) in quiver.arrows().iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            by_len.push(next);
            let total: usize = by_len.iter().map(Vec::len).sum();
            if total > PATH_COUNT_LIMIT {
                return Err(Error::IdealNotAdmissible { bound: n });
            }
            if let Some(alg) = Self::try_truncation(&quiver, &relations, field, &by_len)? {
                return Ok(alg);
            }
        }
        Err(Error::IdealNotAdmissible { bound })
    }

    /// Works in `kQ / J^(n+1)` with `n = by_len.len() - 1`.
    fn try_truncation(
        quiver: &Quiver,
        relations: &[Relation],
        field: FieldSpec,
        by_len: &[Vec<Path>],
    ) -> Result<Option<Self>> {
        let n = by_len.len() - 1;
        let mut paths: Vec<&Path> = by_len.iter().flatten().collect();
        // Column order: least preferred first, so the RREF pivots land on them.
        paths.sort_by(|a, b| b.sort_key().cmp(&a.sort_key()));
        let col: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let ncols = paths.len();

        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        for rel in relations {
            let (s, t) = (rel.terms[0].1.source, rel.terms[0].1.target);
            let room = n.saturating_sub(rel.min_len());
            if rel.min_len() > n {
                continue;
            }
            for before_len in 0..=room {
                for before in by_len[before_len].iter().filter(|p| p.target == s) {
                    for after_len in 0..=(room - before_len) {
                        for after in by_len[after_len].iter().filter(|p| p.source == t) {
                            let mut v = vec![field.zero(); ncols];
                            for (c, p) in &rel.terms {
                                let full = before
                                    .then(p)
                                    .and_then(|bp| bp.then(after))
                                    .expect("composable");
                                if full.len() <= n {
                                    v[col[&full]] = &v[col[&full]] + c;
                                }
                            }
                            if v.iter().any(|x| !x.is_zero()) {
                                gens.push(v);
                            }
                        }
                    }
                }
            }
        }
        let ideal = SubspaceBasis::span(field, ncols, gens);

        // Every path of top length must already be in the ideal.
        for p in &by_len[n] {
            let mut unit = vec![field.zero(); ncols];
            unit[col[p]] = field.one();
            if !ideal.contains(&unit) {
                return Ok(None);
            }
        }

        let mut is_pivot = vec![false; ncols];
        for &c in ideal.pivots() {
            is_pivot[c] = true;
        }
        let mut basis: Vec<Path> = (0..ncols)
            .filter(|&c| !is_pivot[c])
            .map(|c| paths[c].clone())
            .collect();
        basis.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let bindex: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let dim = basis.len();

        let mut normal_forms = HashMap::new();
        let pivot_row: HashMap<usize, usize> = ideal
            .pivots()
            .iter()
            .enumerate()
            .map(|(r, &c)| (c, r))
            .collect();
        for (c, p) in paths.iter().enumerate() {
            let mut v = vec![field.zero(); dim];
            if let Some(&r) = pivot_row.get(&c) {
                // p ≡ -Σ row[j] path_j over the free columns j.
                for (j, x) in ideal.basis().row(r).iter().enumerate() {
                    if j != c && !x.is_zero() {
                        v[bindex[paths[j]]] = -x;
                    }
                }
            } else {
                v[bindex[*p]] = field.one();
            }
            normal_forms.insert((*p).clone(), v);
        }

        let vertex_idempotents = (0..quiver.vertex_count())
            .map(|v| bindex[&Path::trivial(v)])
            .collect();
        let radical = (0..dim).filter(|&i| !basis[i].is_trivial()).collect();

        let mut alg = BoundQuiverAlgebra {
            field,
            quiver: quiver.clone(),
            relations: relations.to_vec(),
            basis,
            table: Vec::new(),
            vertex_idempotents,
            radical,
            normal_forms,
            nilpotency: n,
        };
        alg.table = alg.compute_table();
        alg.check_associative()?;
        Ok(Some(alg))
    }

    fn compute_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        let dim = self.dim();
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match self.basis[j].then(&self.basis[i]) {
                        Some(p) => self.path_coords(&p),
                        None => vec![self.field.zero(); dim],
                    })
                    .collect()
            })
            .collect()
    }

    fn check_associative(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let ij = AlgebraElement(self.table[i][j].clone());
                for k in 0..dim {
                    let left = self.multiply(&ij, &self.basis_element(k));
                    let jk = AlgebraElement(self.table[j][k].clone());
                    let right = self.multiply(&self.basis_element(i), &jk);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_label(&self, i: usize) -> String {
        self.basis[i].label(&self.quiver)
    }

    pub fn basis_index_by_label(&self, label: &str) -> Option<usize> {
        (0..self.dim()).find(|&i| self.basis_label(i) == label)
    }

    pub fn vertex_idempotent_indices(&self) -> &[usize] {
        &self.vertex_idempotents
    }

    pub fn radical_indices(&self) -> &[usize] {
        &self.radical
    }

    /// Smallest `N` with `J^N = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    /// Coordinates of an arbitrary path; paths at or beyond the nilpotency bound vanish.
    pub fn path_coords(&self, p: &Path) -> Vec<Scalar> {
        self.normal_forms
            .get(p)
            .cloned()
            .unwrap_or_else(|| vec![self.field.zero(); self.dim()])
    }

    pub fn path_element(&self, p: &Path) -> AlgebraElement {
        AlgebraElement(self.path_coords(p))
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement(vec![self.field.zero(); self.dim()])
    }

    pub fn one(&self) -> AlgebraElement {
        let mut v = self.zero();
        for &i in &self.vertex_idempotents {
            v.0[i] = self.field.one();
        }
        v
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut v = self.zero();
        v.0[i] = self.field.one();
        v
    }

    pub fn vertex_idempotent(&self, v: usize) -> AlgebraElement {
        self.basis_element(self.vertex_idempotents[v])
    }

    pub fn arrow_element(&self, a: usize) -> AlgebraElement {
        let q = &self.quiver;
        self.path_element(&Path::from_arrows(q, vec![a]).expect("single arrow is a path"))
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(x.0.iter().zip(&y.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(x.0.iter().map(|a| c * a).collect())
    }

    /// Bilinear product through the structure constants.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        o.add_mul_assign(&ab, t);
                    }
                }
            }
        }
        AlgebraElement(out)
    }

    /// Matrix of `x ↦ a x` (columns indexed by the input basis).
    pub fn left_multiplication(&self, a: &AlgebraElement) -> Mat {
        let dim = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..dim)
            .map(|j| self.multiply(a, &self.basis_element(j)).0)
            .collect();
        Mat::from_fn(self.field, dim, dim, |r, c| cols[c][r].clone())
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_multiplication(&self, a: &AlgebraElement) -> Mat {
        let dim = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..dim)
            .map(|j| self.multiply(&self.basis_element(j), a).0)
            .collect();
        Mat::from_fn(self.field, dim, dim, |r, c| cols[c][r].clone())
    }

    /// Same basis labels, arrows reversed, products taken in the other order.
    pub fn opposite(&self) -> BoundQuiverAlgebra {
        let dim = self.dim();
        let table = (0..dim)
            .map(|i| (0..dim).map(|j| self.table[j][i].clone()).collect())
            .collect();
        BoundQuiverAlgebra {
            field: self.field,
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(Relation::reversed).collect(),
            basis: self.basis.iter().map(Path::reversed).collect(),
            table,
            vertex_idempotents: self.vertex_idempotents.clone(),
            radical: self.radical.clone(),
            normal_forms: self
                .normal_forms
                .iter()
                .map(|(p, v)| (p.reversed(), v.clone()))
                .collect(),
            nilpotency: self.nilpotency,
        }
    }

    /// `Z = {a ∈ J : J a = a J = 0}`, as a subspace of the whole algebra.
    pub fn radical_annihilator(&self) -> SubspaceBasis {
        let dim = self.dim();
        let rad = &self.radical;
        let mut sys = LinearSystem::new(self.field, rad.len());
        for &r in rad {
            // Coefficient k of r·a and of a·r, as linear forms in the radical coordinates of a.
            for k in 0..dim {
                let left: Vec<Scalar> = rad.iter().map(|&j| self.table[r][j][k].clone()).collect();
                let right: Vec<Scalar> = rad.iter().map(|&j| self.table[j][r][k].clone()).collect();
                sys.push(left).expect("sized to the radical");
                sys.push(right).expect("sized to the radical");
            }
        }
        let sol = sys.solve();
        SubspaceBasis::span(
            self.field,
            dim,
            sol.vectors().into_iter().map(|v| {
                let mut full = vec![self.field.zero(); dim];
                for (x, &j) in v.into_iter().zip(rad) {
                    full[j] = x;
                }
                full
            }),
        )
    }

    /// Is `x` in the span of the radical basis?
    pub fn in_radical(&self, x: &AlgebraElement) -> bool {
        self.vertex_idempotents.iter().all(|&i| x.0[i].is_zero())
    }

    /// Parses `{label: scalar}` style terms into an element.
    pub fn element_from_terms(&self, terms: &[(Scalar, &str)]) -> Result<AlgebraElement> {
        let mut v = self.zero();
        for (c, label) in terms {
            let el = self.element_by_label(label)?;
            v = self.add(&v, &self.scale(c, &el));
        }
        Ok(v)
    }

    /// A basis label or a dotted path of arrow ids (reduced to normal form).
    pub fn element_by_label(&self, label: &str) -> Result<AlgebraElement> {
        if let Some(i) = self.basis_index_by_label(label) {
            return Ok(self.basis_element(i));
        }
        if let Some(v) = label
            .strip_prefix("e_")
            .and_then(|v| self.quiver.vertex_index(v))
        {
            return Ok(self.vertex_idempotent(v));
        }
        let ids: Vec<&str> = label.split('.').collect();
        let p = self.quiver.path(&ids)?;
        Ok(self.path_element(&p))
    }

    /// Human-readable form such as `alpha + 2*beta`; `0` for the zero element.
    pub fn format_element(&self, x: &AlgebraElement) -> String {
        let terms: Vec<String> =
            x.0.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    if c.is_one() {
                        self.basis_label(i)
                    } else {
                        format!("{c}*{}", self.basis_label(i))
                    }
                })
                .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Structural equality that tolerates distinct allocations.
    pub fn same_as(&self, other: &BoundQuiverAlgebra) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field
                && self.quiver == other.quiver
                && self.basis == other.basis
                && self.table == other.table)
    }
}
