use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::field::{FieldSpec, Scalar};
use crate::exactlin::subspace::SubspaceBasis;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Mat {
            field,
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Mat::from_rows(field, cols, rows).expect("ragged literal matrix")
    }

    /// Column matrix from a vector.
    pub fn column(field: FieldSpec, v: &[Scalar]) -> Self {
        Mat {
            field,
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols,
            other.rows,
            "matrix product shape mismatch {:?} x {:?}",
            self.shape(),
            other.shape()
        );
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let (orow, brow) = (i * other.cols, k * other.cols);
                for j in 0..other.cols {
                    let b = &other.data[brow + j];
                    if !b.is_zero() {
                        out.data[orow + j].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, x) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    o.add_mul_assign(a, x);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        self.with_data(data)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let data = self.data.iter().map(|a| a * c).collect();
        self.with_data(data)
    }

    /// `self += c * other`.
    pub fn add_scaled_assign(&mut self, c: &Scalar, other: &Mat) {
        assert_eq!(self.shape(), other.shape());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                a.add_mul_assign(c, b);
            }
        }
    }

    fn with_data(&self, data: Vec<Scalar>) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(self.field, rows, cols, |r, c| {
            self.get(r0 + r, c0 + c).clone()
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    /// Reduces in place and returns pivot columns. Zero rows end up at the bottom.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            if !inv.is_one() {
                for x in self.row_mut(r) {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let pivot_row: Vec<Scalar> = self.row(r).to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                let row = self.row_mut(i);
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !p.is_zero() {
                        x.sub_mul_assign(&factor, p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right kernel `{v : self * v = 0}`.
    pub fn kernel(&self) -> SubspaceBasis {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); n];
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            basis.push(v);
        }
        SubspaceBasis::span(self.field, n, basis)
    }

    /// Column space as a subspace of the target.
    pub fn image(&self) -> SubspaceBasis {
        SubspaceBasis::span(self.field, self.rows, (0..self.cols).map(|c| self.col(c)))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Mat::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "\n  [")?;
            for (i, x) in self.row(r).iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Collects homogeneous linear constraints on a vector of unknowns and
/// returns their joint solution space.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: FieldSpec,
    unknowns: usize,
    rows: Vec<Vec<Scalar>>,
}

impl LinearSystem {
    pub fn new(field: FieldSpec, unknowns: usize) -> Self {
        LinearSystem {
            field,
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn push(&mut self, constraint: Vec<Scalar>) -> Result<()> {
        if constraint.len() != self.unknowns {
            return Err(Error::DimensionMismatch(format!(
                "constraint over {} unknowns, system has {}",
                constraint.len(),
                self.unknowns
            )));
        }
        if constraint.iter().any(|x| !x.is_zero()) {
            self.rows.push(constraint);
        }
        Ok(())
    }

    pub fn solve(&self) -> SubspaceBasis {
        if self.rows.is_empty() {
            return SubspaceBasis::full(self.field, self.unknowns);
        }
        Mat::from_rows(self.field, self.unknowns, self.rows.clone())
            .expect("rows validated on push")
            .kernel()
    }
}

/// Joint kernel of a list of linear constraints, each a row over `unknowns` variables.
pub fn solve_left_null_join(
    field: FieldSpec,
    unknowns: usize,
    constraints: &[Vec<Scalar>],
) -> Result<SubspaceBasis> {
    let mut sys = LinearSystem::new(field, unknowns);
    for c in constraints {
        sys.push(c.clone())?;
    }
    Ok(sys.solve())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::Prime(p)
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = Mat::identity(gf(2), 3);
        let (r, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);
    }

    #[test]
    fn zero_matrix_has_no_pivots() {
        let z = Mat::zeros(gf(3), 2, 2);
        let (r, piv) = z.rref();
        assert_eq!(r, z);
        assert!(piv.is_empty());
    }

    #[test]
    fn kernel_edge_cases() {
        assert_eq!(Mat::identity(gf(5), 4).kernel().dim(), 0);
        assert_eq!(Mat::zeros(gf(5), 2, 3).kernel().dim(), 3);
        let k = Mat::from_i64(gf(2), &[&[1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        let one = gf(2).one();
        assert!(k.contains(&[one.clone(), one.clone()]));
        assert!(!k.contains(&[one, gf(2).zero()]));
    }

    #[test]
    fn inverse_over_rationals() {
        let q = FieldSpec::Rational;
        let m = Mat::from_i64(q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(q, 2));
        assert!(Mat::from_i64(q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn empty_system_is_everything() {
        let s = solve_left_null_join(gf(3), 4, &[]).unwrap();
        assert_eq!(s.dim(), 4);
        let f = gf(3);
        let forcing = vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]];
        assert_eq!(solve_left_null_join(f, 2, &forcing).unwrap().dim(), 0);
        assert!(solve_left_null_join(f, 3, &forcing).is_err());
    }
}
