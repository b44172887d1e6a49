use std::sync::Arc;

use crate::algebra::{AlgebraElement, BoundQuiverAlgebra, Path};
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Mat, Scalar, SubspaceBasis};

/// A finite-dimensional left module given as a quiver representation.
///
/// Arrow `a: v -> w` acts by a `dims[w] x dims[v]` matrix on column vectors.
/// Module elements are flat vectors: the vertex spaces concatenated in
/// vertex order.
#[derive(Clone, Debug)]
pub struct Rep {
    algebra: Arc<BoundQuiverAlgebra>,
    dims: Vec<usize>,
    actions: Vec<Mat>,
    offsets: Vec<usize>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra)
            && self.dims == other.dims
            && self.actions == other.actions
    }
}

impl Eq for Rep {}

impl Rep {
    /// Builds a representation and checks that every relation holds.
    pub fn new(
        algebra: Arc<BoundQuiverAlgebra>,
        dims: Vec<usize>,
        actions: Vec<Mat>,
    ) -> Result<Self> {
        let r = Self::new_unchecked(algebra, dims, actions)?;
        let report = check_rep(&r);
        if let Some(rel) = report.violated.first() {
            return Err(Error::RelationViolated {
                relation: rel.clone(),
            });
        }
        Ok(r)
    }

    /// Checks shapes only; relations may fail (see [`check_rep`]).
    pub fn new_unchecked(
        algebra: Arc<BoundQuiverAlgebra>,
        dims: Vec<usize>,
        actions: Vec<Mat>,
    ) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        if actions.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {} arrows",
                actions.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&actions) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.id,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::InvalidField(format!(
                    "arrow `{}` matrix over the wrong field",
                    a.id
                )));
            }
        }
        let offsets = dims
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        Ok(Rep {
            algebra,
            dims,
            actions,
            offsets,
        })
    }

    pub fn zero(algebra: Arc<BoundQuiverAlgebra>) -> Self {
        let f = algebra.field();
        let n = algebra.quiver().vertex_count();
        let actions = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|_| Mat::zeros(f, 0, 0))
            .collect();
        Rep::new_unchecked(algebra, vec![0; n], actions).expect("zero module is well formed")
    }

    /// The simple module at vertex `v`.
    pub fn simple(algebra: Arc<BoundQuiverAlgebra>, v: usize) -> Self {
        let f = algebra.field();
        let q = algebra.quiver();
        let mut dims = vec![0; q.vertex_count()];
        dims[v] = 1;
        let actions = q
            .arrows()
            .iter()
            .map(|a| Mat::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Rep::new_unchecked(algebra, dims, actions).expect("simple module is well formed")
    }

    /// The indecomposable projective `A e_v`, with basis the path classes starting at `v`.
    pub fn projective(algebra: Arc<BoundQuiverAlgebra>, v: usize) -> Self {
        Self::regular_part(algebra, |p| p.source == v).0
    }

    /// The left regular module `A`. The second component sends each algebra
    /// basis index to its flat coordinate.
    pub fn regular(algebra: Arc<BoundQuiverAlgebra>) -> (Self, Vec<usize>) {
        Self::regular_part(algebra, |_| true)
    }

    fn regular_part(
        algebra: Arc<BoundQuiverAlgebra>,
        keep: impl Fn(&Path) -> bool,
    ) -> (Self, Vec<usize>) {
        let f = algebra.field();
        let q = algebra.quiver();
        let n = q.vertex_count();
        // Kept basis indices grouped by the target vertex.
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, p) in algebra.basis().iter().enumerate() {
            if keep(p) {
                at[p.target].push(i);
            }
        }
        let actions = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let arrow = algebra.arrow_element(ai);
                Mat::from_fn(f, at[a.target].len(), at[a.source].len(), |r, c| {
                    let prod = algebra.multiply(&arrow, &algebra.basis_element(at[a.source][c]));
                    prod.0[at[a.target][r]].clone()
                })
            })
            .collect();
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let mut position = vec![usize::MAX; algebra.dim()];
        let mut next = 0;
        for idx in &at {
            for &i in idx {
                position[i] = next;
                next += 1;
            }
        }
        let rep =
            Rep::new_unchecked(algebra, dims, actions).expect("regular module is well formed");
        (rep, position)
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn actions(&self) -> &[Mat] {
        &self.actions
    }

    pub fn action(&self, arrow: usize) -> &Mat {
        &self.actions[arrow]
    }

    /// Total dimension, which is the composition length for a basic algebra.
    pub fn length(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.length() == 0
    }

    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.len()
    }

    /// Slice of a flat vector belonging to vertex `v`.
    pub fn component<'a>(&self, x: &'a [Scalar], v: usize) -> &'a [Scalar] {
        &x[self.offsets[v]..self.offsets[v] + self.dims[v]]
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field().zero(); self.length()]
    }

    /// Flat unit vector for basis vector `i` of vertex `v`.
    pub fn unit(&self, v: usize, i: usize) -> Vec<Scalar> {
        let mut x = self.zero_vector();
        x[self.offsets[v] + i] = self.field().one();
        x
    }

    /// Embeds a vertex-`v` vector into the flat space.
    pub fn embed(&self, v: usize, part: &[Scalar]) -> Vec<Scalar> {
        let mut x = self.zero_vector();
        x[self.offsets[v]..self.offsets[v] + self.dims[v]].clone_from_slice(part);
        x
    }

    /// Matrix of a path between its end vertex spaces.
    pub fn path_matrix(&self, p: &Path) -> Mat {
        let mut m = Mat::identity(self.field(), self.dims[p.source]);
        for &a in &p.arrows {
            m = self.actions[a].mul(&m);
        }
        m
    }

    /// Flat matrix of an arrow on the whole space.
    pub fn arrow_flat(&self, a: usize) -> Mat {
        let arrow = &self.algebra.quiver().arrows()[a];
        let n = self.length();
        let mut m = Mat::zeros(self.field(), n, n);
        m.set_block(
            self.offsets[arrow.target],
            self.offsets[arrow.source],
            &self.actions[a],
        );
        m
    }

    /// Flat matrix of an algebra element.
    pub fn element_action(&self, x: &AlgebraElement) -> Mat {
        let n = self.length();
        let f = self.field();
        let mut m = Mat::zeros(f, n, n);
        for (i, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.algebra.basis()[i];
            let block = self.path_matrix(p).scale(c);
            let (r0, c0) = (self.offsets[p.target], self.offsets[p.source]);
            for r in 0..block.rows() {
                for col in 0..block.cols() {
                    let cur = m.get(r0 + r, c0 + col) + block.get(r, col);
                    m.set(r0 + r, c0 + col, cur);
                }
            }
        }
        m
    }

    pub fn act(&self, x: &AlgebraElement, v: &[Scalar]) -> Vec<Scalar> {
        self.element_action(x).mul_vec(v)
    }

    /// Applies an arrow to a flat vector.
    pub fn apply_arrow(&self, a: usize, x: &[Scalar]) -> Vec<Scalar> {
        let arrow = &self.algebra.quiver().arrows()[a];
        let img = self.actions[a].mul_vec(self.component(x, arrow.source));
        self.embed(arrow.target, &img)
    }

    /// Conjugates the actions by per-vertex invertible matrices `g_v`
    /// (new basis vectors are the columns of `g_v`).
    pub fn change_basis(&self, g: &[Mat]) -> Result<Rep> {
        let invs = g
            .iter()
            .map(|m| {
                m.inverse().ok_or_else(|| {
                    Error::DimensionMismatch("change of basis is not invertible".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let actions = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .zip(&self.actions)
            .map(|(a, m)| invs[a.target].mul(m).mul(&g[a.source]))
            .collect();
        Rep::new_unchecked(self.algebra.clone(), self.dims.clone(), actions)
    }
}

/// Outcome of evaluating every relation on a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub violated: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violated.is_empty()
    }
}

/// Evaluates every relation of the algebra on `r`.
pub fn check_rep(r: &Rep) -> RelationReport {
    let alg = r.algebra();
    let mut violated = Vec::new();
    for rel in alg.relations() {
        let first = &rel.terms[0].1;
        let mut m = Mat::zeros(r.field(), r.dims[first.target], r.dims[first.source]);
        for (c, p) in &rel.terms {
            m.add_scaled_assign(c, &r.path_matrix(p));
        }
        if !m.is_zero() {
            violated.push(rel.display(alg.quiver()));
        }
    }
    RelationReport {
        checked: alg.relations().len(),
        violated,
    }
}

/// A submodule, stored as one canonical subspace per vertex. It is always
/// interpreted relative to a parent [`Rep`] supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubRep {
    parts: Vec<SubspaceBasis>,
}

impl SubRep {
    pub fn from_parts(parts: Vec<SubspaceBasis>) -> Self {
        SubRep { parts }
    }

    pub fn zero(parent: &Rep) -> Self {
        SubRep {
            parts: parent
                .dims
                .iter()
                .map(|&d| SubspaceBasis::zero(parent.field(), d))
                .collect(),
        }
    }

    pub fn whole(parent: &Rep) -> Self {
        SubRep {
            parts: parent
                .dims
                .iter()
                .map(|&d| SubspaceBasis::full(parent.field(), d))
                .collect(),
        }
    }

    pub fn parts(&self) -> &[SubspaceBasis] {
        &self.parts
    }

    pub fn part(&self, v: usize) -> &SubspaceBasis {
        &self.parts[v]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(SubspaceBasis::dim).collect()
    }

    pub fn length(&self) -> usize {
        self.parts.iter().map(SubspaceBasis::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.length() == 0
    }

    pub fn contains(&self, parent: &Rep, x: &[Scalar]) -> bool {
        (0..self.parts.len()).all(|v| self.parts[v].contains(parent.component(x, v)))
    }

    pub fn is_subset_of(&self, other: &SubRep) -> bool {
        self.parts
            .iter()
            .zip(&other.parts)
            .all(|(a, b)| a.is_subspace_of(b))
    }

    pub fn sum(&self, other: &SubRep) -> SubRep {
        SubRep {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.sum(b).expect("same parent"))
                .collect(),
        }
    }

    pub fn intersect(&self, other: &SubRep) -> SubRep {
        SubRep {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.intersect(b).expect("same parent"))
                .collect(),
        }
    }

    /// Closed under every arrow of the parent?
    pub fn is_closed(&self, parent: &Rep) -> bool {
        parent
            .algebra()
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(ai, a)| {
                self.parts[a.source]
                    .vectors()
                    .iter()
                    .all(|x| self.parts[a.target].contains(&parent.actions[ai].mul_vec(x)))
            })
    }

    /// Flat basis vectors, vertex by vertex.
    pub fn flat_vectors(&self, parent: &Rep) -> Vec<Vec<Scalar>> {
        let mut out = Vec::with_capacity(self.length());
        for (v, part) in self.parts.iter().enumerate() {
            for x in part.vectors() {
                out.push(parent.embed(v, &x));
            }
        }
        out
    }

    pub fn flat_subspace(&self, parent: &Rep) -> SubspaceBasis {
        SubspaceBasis::span(parent.field(), parent.length(), self.flat_vectors(parent))
    }

    /// The submodule as a module in its own right, with basis the canonical
    /// rows of each part, together with its inclusion into the parent.
    pub fn to_rep(&self, parent: &Rep) -> (Rep, ModuleMap) {
        let f = parent.field();
        let arrows = parent.algebra().quiver().arrows();
        let actions = arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let src = &self.parts[a.source];
                let tgt = &self.parts[a.target];
                let cols: Vec<Vec<Scalar>> = src
                    .vectors()
                    .iter()
                    .map(|x| {
                        tgt.coords(&parent.actions[ai].mul_vec(x))
                            .expect("submodule is closed under the action")
                    })
                    .collect();
                Mat::from_fn(f, tgt.dim(), src.dim(), |r, c| cols[c][r].clone())
            })
            .collect();
        let rep = Rep::new_unchecked(parent.algebra().clone(), self.dims(), actions)
            .expect("shapes agree");
        let incl =
            ModuleMap::from_blocks(self.parts.iter().map(|p| p.basis().transpose()).collect());
        (rep, incl)
    }
}

/// A module homomorphism given by one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    blocks: Vec<Mat>,
}

impl ModuleMap {
    pub fn from_blocks(blocks: Vec<Mat>) -> Self {
        ModuleMap { blocks }
    }

    pub fn identity(m: &Rep) -> Self {
        ModuleMap {
            blocks: m
                .dims
                .iter()
                .map(|&d| Mat::identity(m.field(), d))
                .collect(),
        }
    }

    pub fn zero(source: &Rep, target: &Rep) -> Self {
        ModuleMap {
            blocks: source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Mat::zeros(source.field(), t, s))
                .collect(),
        }
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Mat {
        &self.blocks[v]
    }

    pub fn field(&self) -> FieldSpec {
        self.blocks.first().map_or(FieldSpec::Rational, Mat::field)
    }

    pub fn source_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Mat::cols).collect()
    }

    pub fn target_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Mat::rows).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    /// Block-diagonal matrix on the flat spaces.
    pub fn flat(&self) -> Mat {
        let (rows, cols): (usize, usize) = (
            self.target_dims().iter().sum(),
            self.source_dims().iter().sum(),
        );
        let mut m = Mat::zeros(self.field(), rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in &self.blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows();
            c0 += b.cols();
        }
        m
    }

    /// Splits a flat square matrix back into vertex blocks.
    pub fn from_flat(m: &Mat, source_dims: &[usize], target_dims: &[usize]) -> Self {
        let (mut r0, mut c0) = (0, 0);
        let mut blocks = Vec::with_capacity(source_dims.len());
        for (&s, &t) in source_dims.iter().zip(target_dims) {
            blocks.push(m.block(r0, c0, t, s));
            r0 += t;
            c0 += s;
        }
        ModuleMap { blocks }
    }

    /// Flattened entries, used as coordinates for hom-space arithmetic.
    pub fn as_vector(&self) -> Vec<Scalar> {
        self.blocks
            .iter()
            .flat_map(|b| b.entries().iter().cloned())
            .collect()
    }

    pub fn apply(&self, source: &Rep, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = Vec::new();
        for (v, b) in self.blocks.iter().enumerate() {
            out.extend(b.mul_vec(source.component(x, v)));
        }
        out
    }

    /// Does the map intertwine every arrow action?
    pub fn is_homomorphism(&self, source: &Rep, target: &Rep) -> bool {
        if self.source_dims() != source.dims || self.target_dims() != target.dims {
            return false;
        }
        source
            .algebra()
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(ai, a)| {
                target.actions[ai].mul(&self.blocks[a.source])
                    == self.blocks[a.target].mul(&source.actions[ai])
            })
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(Mat::is_invertible)
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        self.blocks
            .iter()
            .map(Mat::inverse)
            .collect::<Option<Vec<_>>>()
            .map(|blocks| ModuleMap { blocks })
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    pub fn kernel(&self) -> SubRep {
        SubRep::from_parts(self.blocks.iter().map(Mat::kernel).collect())
    }

    pub fn image(&self) -> SubRep {
        SubRep::from_parts(self.blocks.iter().map(Mat::image).collect())
    }

    pub fn is_idempotent(&self) -> bool {
        &self.compose(self) == self
    }
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub rep: Rep,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(summands: &[Rep]) -> Result<DirectSum> {
    let first = summands
        .first()
        .ok_or_else(|| Error::DimensionMismatch("direct sum of nothing".into()))?;
    let alg = first.algebra().clone();
    if summands.iter().any(|s| !s.algebra().same_as(&alg)) {
        return Err(Error::DimensionMismatch(
            "summands over different algebras".into(),
        ));
    }
    let f = alg.field();
    let nv = alg.quiver().vertex_count();
    let dims: Vec<usize> = (0..nv)
        .map(|v| summands.iter().map(|s| s.dims[v]).sum())
        .collect();
    let actions = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Mat::zeros(f, dims[a.target], dims[a.source]);
            let (mut r0, mut c0) = (0, 0);
            for s in summands {
                m.set_block(r0, c0, &s.actions[ai]);
                r0 += s.dims[a.target];
                c0 += s.dims[a.source];
            }
            m
        })
        .collect();
    let rep = Rep::new_unchecked(alg, dims.clone(), actions)?;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut start = vec![0usize; nv];
    for s in summands {
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for v in 0..nv {
            let mut i = Mat::zeros(f, dims[v], s.dims[v]);
            i.set_block(start[v], 0, &Mat::identity(f, s.dims[v]));
            proj.push(i.transpose());
            inj.push(i);
            start[v] += s.dims[v];
        }
        injections.push(ModuleMap::from_blocks(inj));
        projections.push(ModuleMap::from_blocks(proj));
    }
    Ok(DirectSum {
        rep,
        injections,
        projections,
    })
}
