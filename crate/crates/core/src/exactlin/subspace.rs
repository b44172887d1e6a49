use crate::error::{Error, Result};
use crate::exactlin::field::{FieldSpec, Scalar};
use crate::exactlin::mat::Mat;

/// A subspace of `F^ambient`, stored as its unique RREF basis.
///
/// Two values are equal exactly when they span the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient: usize,
    rows: Mat,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            rows: Mat::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            rows: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut b = EchelonBuilder::new(field, ambient);
        for v in vectors {
            b.insert(v);
        }
        b.finish()
    }

    /// Row space of `m`.
    pub fn row_space(m: &Mat) -> Self {
        let (r, pivots) = m.rref();
        let rows = r.block(0, 0, pivots.len(), m.cols());
        SubspaceBasis {
            ambient: m.cols(),
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.rows.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The canonical RREF basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.rows
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.rows.row_vecs()
    }

    /// Remainder of `v` after eliminating the pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in w.iter_mut().zip(self.rows.row(i)) {
                if !b.is_zero() {
                    x.sub_mul_assign(&c, b);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coordinates of `v` modulo the subspace, with respect to the standard
    /// basis vectors on the non-pivot columns.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let w = self.reduce(v);
        self.free_columns()
            .into_iter()
            .map(|c| w[c].clone())
            .collect()
    }

    /// Non-pivot columns; their unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coeffs.len(), self.dim());
        let mut v = vec![self.field().zero(); self.ambient];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, b) in v.iter_mut().zip(self.rows.row(i)) {
                x.add_mul_assign(c, b);
            }
        }
        v
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|i| other.contains(self.rows.row(i)))
    }

    fn check_ambient(&self, other: &SubspaceBasis) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let mut b = EchelonBuilder::from_subspace(self);
        for v in other.vectors() {
            b.insert(v);
        }
        Ok(b.finish())
    }

    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        Ok(sum_intersect(self, other)?.1)
    }

    /// Image of the subspace under `m` (acting on column vectors).
    pub fn map(&self, m: &Mat) -> SubspaceBasis {
        SubspaceBasis::span(
            self.field(),
            m.rows(),
            (0..self.dim()).map(|i| m.mul_vec(self.rows.row(i))),
        )
    }

    /// Preimage `{v : m v ∈ self}` for `m: F^n -> F^ambient`.
    pub fn preimage(&self, m: &Mat) -> SubspaceBasis {
        // v ↦ (m v) mod self, as a matrix on the free coordinates.
        let free = self.free_columns();
        let f = self.field();
        let mut cols = Vec::with_capacity(m.cols());
        for c in 0..m.cols() {
            cols.push(self.quotient_coords(&m.col(c)));
        }
        Mat::from_fn(f, free.len(), m.cols(), |r, c| cols[c][r].clone()).kernel()
    }
}

/// Sum and intersection via the Zassenhaus block elimination
/// `[[A, A], [B, 0]]`.
pub fn sum_intersect(
    a: &SubspaceBasis,
    b: &SubspaceBasis,
) -> Result<(SubspaceBasis, SubspaceBasis)> {
    a.check_ambient(b)?;
    let n = a.ambient;
    let f = a.field();
    let mut z = Mat::zeros(f, a.dim() + b.dim(), 2 * n);
    z.set_block(0, 0, a.basis());
    z.set_block(0, n, a.basis());
    z.set_block(a.dim(), 0, b.basis());
    let (r, pivots) = z.rref();
    let mut sum = Vec::new();
    let mut meet = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        let row = r.row(i);
        if p < n {
            sum.push(row[..n].to_vec());
        } else {
            meet.push(row[n..].to_vec());
        }
    }
    Ok((
        SubspaceBasis::span(f, n, sum),
        SubspaceBasis::span(f, n, meet),
    ))
}

/// Incremental RREF: rows stay fully reduced after every insertion.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(field: FieldSpec, ambient: usize) -> Self {
        EchelonBuilder {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_subspace(s: &SubspaceBasis) -> Self {
        EchelonBuilder {
            field: s.field(),
            ambient: s.ambient,
            rows: s.vectors(),
            pivots: s.pivots.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    x.sub_mul_assign(&c, b);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        if !inv.is_one() {
            for x in v.iter_mut() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in row.iter_mut().zip(&v) {
                if !b.is_zero() {
                    x.sub_mul_assign(&c, b);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn finish(self) -> SubspaceBasis {
        let rows =
            Mat::from_rows(self.field, self.ambient, self.rows).expect("rows have ambient length");
        SubspaceBasis {
            ambient: self.ambient,
            rows,
            pivots: self.pivots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_subspaces_sum_and_meet_to_themselves() {
        let f = FieldSpec::Prime(3);
        let a = SubspaceBasis::span(f, 3, vec![vec![f.one(), f.from_i64(2), f.zero()]]);
        let (s, i) = sum_intersect(&a, &a).unwrap();
        assert_eq!(s, a);
        assert_eq!(i, a);
    }

    #[test]
    fn complementary_lines() {
        let f = FieldSpec::Prime(2);
        let a = SubspaceBasis::span(f, 2, vec![vec![f.one(), f.zero()]]);
        let b = SubspaceBasis::span(f, 2, vec![vec![f.one(), f.one()]]);
        let (s, i) = sum_intersect(&a, &b).unwrap();
        assert!(s.is_full());
        assert!(i.is_zero());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f = FieldSpec::Prime(2);
        assert!(sum_intersect(&SubspaceBasis::zero(f, 2), &SubspaceBasis::zero(f, 3)).is_err());
    }

    #[test]
    fn canonical_form_ignores_generator_choice() {
        let f = FieldSpec::Rational;
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let a = SubspaceBasis::span(f, 3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = SubspaceBasis::span(f, 3, vec![v(&[1, 3, 4]), v(&[2, 5, 7])]);
        assert_eq!(a, b);
        assert_eq!(
            a.coords(&v(&[1, 3, 4])).map(|c| a.combination(&c)),
            Some(v(&[1, 3, 4]))
        );
    }

    #[test]
    fn preimage_under_projection() {
        let f = FieldSpec::Prime(5);
        // m projects F^3 onto the first two coordinates.
        let m = Mat::from_i64(f, &[&[1, 0, 0], &[0, 1, 0]]);
        let target = SubspaceBasis::span(f, 2, vec![vec![f.one(), f.one()]]);
        let pre = target.preimage(&m);
        assert_eq!(pre.dim(), 2);
        assert!(pre.contains(&[f.zero(), f.zero(), f.one()]));
        assert!(pre.contains(&[f.one(), f.one(), f.zero()]));
    }
}
