use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, LinearSystem, Mat, Scalar, SubspaceBasis};
use crate::module::rep::{ModuleMap, Rep};

/// Basis of `Hom(m, n)`, read off the RREF solution of the intertwining equations.
pub fn hom_space(m: &Rep, n: &Rep) -> Result<Vec<ModuleMap>> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::DimensionMismatch(
            "modules over different algebras".into(),
        ));
    }
    let f = m.field();
    let nv = m.vertex_count();
    // Unknown block F_v is n_v x m_v, stored row-major at offset off[v].
    let mut off = Vec::with_capacity(nv + 1);
    off.push(0);
    for v in 0..nv {
        off.push(off[v] + n.dims()[v] * m.dims()[v]);
    }
    let unknowns = off[nv];
    let idx = |v: usize, r: usize, c: usize| off[v] + r * m.dims()[v] + c;
    let mut sys = LinearSystem::new(f, unknowns);
    for (ai, a) in m.algebra().quiver().arrows().iter().enumerate() {
        let (v, w) = (a.source, a.target);
        let (ma, na) = (m.action(ai), n.action(ai));
        // (N_a F_v - F_w M_a)[i][j] = 0
        for i in 0..n.dims()[w] {
            for j in 0..m.dims()[v] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..n.dims()[v] {
                    row[idx(v, k, j)] = &row[idx(v, k, j)] + na.get(i, k);
                }
                for l in 0..m.dims()[w] {
                    row[idx(w, i, l)] = &row[idx(w, i, l)] - ma.get(l, j);
                }
                sys.push(row)?;
            }
        }
    }
    let sol = sys.solve();
    Ok(sol
        .vectors()
        .into_iter()
        .map(|x| unflatten(f, &x, m.dims(), n.dims()))
        .collect())
}

fn unflatten(f: FieldSpec, x: &[Scalar], src: &[usize], tgt: &[usize]) -> ModuleMap {
    let mut at = 0;
    let blocks = src
        .iter()
        .zip(tgt)
        .map(|(&s, &t)| {
            let b = Mat::from_fn(f, t, s, |r, c| x[at + r * s + c].clone());
            at += t * s;
            b
        })
        .collect();
    ModuleMap::from_blocks(blocks)
}

/// Linear combination `Σ c_i maps[i]`.
pub fn combine(maps: &[ModuleMap], coeffs: &[Scalar]) -> Option<ModuleMap> {
    let mut it = maps.iter().zip(coeffs);
    let (m0, c0) = it.next()?;
    let mut acc = m0.scale(c0);
    for (m, c) in it {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c));
        }
    }
    Some(acc)
}

/// The endomorphism ring of a module, with the identity as first basis element.
#[derive(Clone, Debug)]
pub struct EndRing {
    field: FieldSpec,
    basis: Vec<ModuleMap>,
    /// Each basis element as a matrix on the flat module space.
    flats: Vec<Mat>,
    /// `table[i][j]` = coordinates of `basis[i] ∘ basis[j]`.
    table: Vec<Vec<Vec<Scalar>>>,
    rows: SubspaceBasis,
    // Coordinates in `basis` of the RREF rows of `rows`.
    transform: Mat,
}

impl EndRing {
    pub fn new(m: &Rep) -> Result<Self> {
        let f = m.field();
        let homs = hom_space(m, m)?;
        let id = ModuleMap::identity(m);
        let mut basis = vec![id.clone()];
        let mut seen = crate::exactlin::EchelonBuilder::new(f, id.as_vector().len());
        seen.insert(id.as_vector());
        for h in homs {
            if seen.insert(h.as_vector()) {
                basis.push(h);
            }
        }
        let k = basis.len();
        let width = basis[0].as_vector().len();
        // RREF of [B | I] gives [R | T] with R = T B.
        let aug = Mat::from_fn(f, k, width + k, |r, c| {
            if c < width {
                basis[r].as_vector()[c].clone()
            } else if c - width == r {
                f.one()
            } else {
                f.zero()
            }
        });
        let (red, _) = aug.rref();
        let rows = SubspaceBasis::row_space(&red.block(0, 0, k, width));
        let transform = red.block(0, width, k, k);
        let flats: Vec<Mat> = basis.iter().map(ModuleMap::flat).collect();
        let mut ring = EndRing {
            field: f,
            basis,
            flats,
            table: Vec::new(),
            rows,
            transform,
        };
        let table = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        ring.coords_of(&ring.basis[i].compose(&ring.basis[j]))
                            .expect("End is closed under composition")
                    })
                    .collect()
            })
            .collect();
        ring.table = table;
        Ok(ring)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ModuleMap] {
        &self.basis
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.unit(0)
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Coordinates of an endomorphism in `basis`, if it is one.
    pub fn coords_of(&self, map: &ModuleMap) -> Option<Vec<Scalar>> {
        let d = self.rows.coords(&map.as_vector())?;
        // map = d R = d T B
        let k = self.dim();
        Some(
            (0..k)
                .map(|j| {
                    let mut s = self.field.zero();
                    for (i, di) in d.iter().enumerate() {
                        s.add_mul_assign(di, self.transform.get(i, j));
                    }
                    s
                })
                .collect(),
        )
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
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
        out
    }

    pub fn power(&self, x: &[Scalar], e: u64) -> Vec<Scalar> {
        let mut acc = self.one();
        let mut base = x.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn element(&self, x: &[Scalar]) -> ModuleMap {
        combine(&self.basis, x).expect("End contains the identity")
    }

    /// The element as a matrix on the flat module space.
    pub fn element_flat(&self, x: &[Scalar]) -> Mat {
        let n = self.flats[0].rows();
        let mut m = Mat::zeros(self.field, n, n);
        for (c, b) in x.iter().zip(&self.flats) {
            if !c.is_zero() {
                m.add_scaled_assign(c, b);
            }
        }
        m
    }
}

pub fn end_ring(m: &Rep) -> Result<EndRing> {
    EndRing::new(m)
}

/// Jacobson radical of an endomorphism ring, in its coordinates.
///
/// In characteristic 0 this is the kernel of the trace form on the natural
/// (faithful) representation. Over GF(p) the trace form is refined by the
/// generalized traces of Cohen, Ivanyos and Wales:
/// `I_i = {a ∈ I_(i-1) : g_i(ab) = 0 for all b}` with
/// `g_i(a) = Tr(ã^(p^i)) / p^i mod p`, and `rad = I_l` for `p^l ≤ n < p^(l+1)`.
pub fn ring_radical(e: &EndRing) -> SubspaceBasis {
    let k = e.dim();
    let f = e.field;
    if k == 1 {
        return SubspaceBasis::zero(f, k);
    }
    let n = e.flats[0].rows();
    let prods: Vec<Vec<Mat>> = (0..k)
        .map(|i| (0..k).map(|j| e.element_flat(&e.table[i][j])).collect())
        .collect();
    match f {
        FieldSpec::Rational => {
            let rows: Vec<Vec<Scalar>> = (0..k)
                .map(|j| (0..k).map(|i| prods[i][j].trace()).collect())
                .collect();
            Mat::from_rows(f, k, rows).expect("square system").kernel()
        }
        FieldSpec::Prime(p) => {
            let mut current = SubspaceBasis::full(f, k);
            let mut level = 0u32;
            let mut pi: u64 = 1;
            loop {
                let basis = current.vectors();
                if basis.is_empty() {
                    return current;
                }
                // cons[b][a] = g_level(a_j * b_basis)
                let mut sys = LinearSystem::new(f, basis.len());
                for bj in 0..k {
                    let row: Vec<Scalar> = basis
                        .iter()
                        .map(|a| {
                            let prod = e.multiply(a, &e.unit(bj));
                            f.from_i64(generalized_trace(&e.element_flat(&prod), p, level) as i64)
                        })
                        .collect();
                    sys.push(row).expect("sized to the basis");
                }
                let sol = sys.solve();
                current = SubspaceBasis::span(
                    f,
                    k,
                    sol.vectors().iter().map(|c| combine_vecs(f, &basis, c)),
                );
                match pi.checked_mul(p) {
                    Some(next) if next as u128 <= n as u128 => {
                        pi = next;
                        level += 1;
                    }
                    _ => return current,
                }
            }
        }
    }
}

fn combine_vecs(f: FieldSpec, vs: &[Vec<Scalar>], c: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![f.zero(); vs.first().map_or(0, Vec::len)];
    for (v, ci) in vs.iter().zip(c) {
        if ci.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            o.add_mul_assign(ci, x);
        }
    }
    out
}

/// `Tr(ã^(p^i)) / p^i mod p` where `ã` is the integer lift of `a`.
fn generalized_trace(a: &Mat, p: u64, i: u32) -> u64 {
    let modulus = (p as u128).pow(i + 1);
    let n = a.rows();
    let lift: Vec<u128> = a
        .entries()
        .iter()
        .map(|x| x.residue().expect("prime field") as u128)
        .collect();
    let mul = |x: &[u128], y: &[u128]| -> Vec<u128> {
        let mut out = vec![0u128; n * n];
        for r in 0..n {
            for k in 0..n {
                let xv = x[r * n + k];
                if xv == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] = (out[r * n + c] + xv * y[k * n + c]) % modulus;
                }
            }
        }
        out
    };
    let mut m = lift;
    for _ in 0..i {
        // m ← m^p
        let base = m.clone();
        let mut acc = base.clone();
        for _ in 1..p {
            acc = mul(&acc, &base);
        }
        m = acc;
    }
    let tr = (0..n).fold(0u128, |s, d| (s + m[d * n + d]) % modulus);
    let pi = (p as u128).pow(i);
    debug_assert_eq!(tr % pi, 0, "generalized trace must be divisible by p^i");
    ((tr / pi) % p as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::module::rep::direct_sum;

    #[test]
    fn simple_has_one_dimensional_end() {
        let k = fixtures::kronecker(FieldSpec::Prime(2));
        let s = Rep::simple(k, 1);
        let e = end_ring(&s).unwrap();
        assert_eq!(e.dim(), 1);
        assert!(ring_radical(&e).is_zero());
    }

    #[test]
    fn end_of_s_plus_s_is_a_matrix_ring() {
        for f in [
            FieldSpec::Prime(2),
            FieldSpec::Prime(3),
            FieldSpec::Rational,
        ] {
            let k = fixtures::kronecker(f);
            let s = Rep::simple(k, 0);
            let ss = direct_sum(&[s.clone(), s]).unwrap().rep;
            let e = end_ring(&ss).unwrap();
            assert_eq!(e.dim(), 4);
            assert!(ring_radical(&e).is_zero(), "{f}");
        }
    }

    #[test]
    fn local_b_regular_module_radical() {
        for f in [
            FieldSpec::Prime(2),
            FieldSpec::Prime(3),
            FieldSpec::Rational,
        ] {
            let b = fixtures::local_b(f);
            let reg = Rep::projective(b, 0);
            let e = end_ring(&reg).unwrap();
            assert_eq!(e.dim(), 3);
            assert_eq!(ring_radical(&e).dim(), 2, "{f}");
        }
    }

    #[test]
    fn identity_is_first_and_acts_as_one() {
        let b = fixtures::local_b(FieldSpec::Prime(3));
        let reg = Rep::projective(b, 0);
        let e = end_ring(&reg).unwrap();
        assert_eq!(e.basis()[0], ModuleMap::identity(&reg));
        for i in 0..e.dim() {
            assert_eq!(e.multiply(&e.one(), &e.unit(i)), e.unit(i));
            assert_eq!(e.multiply(&e.unit(i), &e.one()), e.unit(i));
        }
    }

    #[test]
    fn hom_between_simples() {
        let k = fixtures::kronecker(FieldSpec::Prime(5));
        let a = Rep::simple(k.clone(), 0);
        let b = Rep::simple(k, 1);
        assert_eq!(hom_space(&a, &a).unwrap().len(), 1);
        assert!(hom_space(&a, &b).unwrap().is_empty());
    }

    #[test]
    fn generalized_trace_of_identity() {
        // Tr(I_4) = 4, and Tr(I^2)/2 = 2 ≡ 0 mod 2 at level 1.
        let id = Mat::identity(FieldSpec::Prime(2), 4);
        assert_eq!(generalized_trace(&id, 2, 0), 0);
        assert_eq!(generalized_trace(&id, 2, 1), 0);
        assert_eq!(generalized_trace(&id, 2, 2), 1);
    }
}
