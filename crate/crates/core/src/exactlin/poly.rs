//! Univariate polynomials and the splitting routines used to find idempotents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::field::{FieldSpec, Scalar};
use crate::exactlin::mat::Mat;

/// Dense polynomial, coefficients from the constant term upwards, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly::constant(field, field.one())
    }

    /// The monomial `x`.
    pub fn x(field: FieldSpec) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                Poly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j].add_mul_assign(a, b);
            }
        }
        Poly::new(self.field, c)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.leading().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j].sub_mul_assign(&c, b);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics (debug) if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &self.field.from_i64(i as i64) * c)
            .collect();
        Poly::new(self.field, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_mat(&self, a: &Mat) -> Mat {
        let n = a.rows();
        let mut acc = Mat::zeros(self.field, n, n);
        let id = Mat::identity(self.field, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            acc.add_scaled_assign(c, &id);
        }
        acc
    }
}

/// Minimal polynomial of a square matrix (monic), via the Krylov sequence of powers.
pub fn minimal_polynomial(a: &Mat) -> Poly {
    assert!(a.is_square());
    let f = a.field();
    let n = a.rows();
    let mut powers: Vec<Vec<Scalar>> = vec![Mat::identity(f, n).entries().to_vec()];
    let mut cur = Mat::identity(f, n);
    loop {
        cur = cur.mul(a);
        let target = cur.entries().to_vec();
        // Columns: previous powers, then the candidate.
        let k = powers.len();
        let m = Mat::from_fn(f, n * n, k + 1, |r, c| {
            if c < k {
                powers[c][r].clone()
            } else {
                target[r].clone()
            }
        });
        let ker = m.kernel();
        if let Some(v) = ker.vectors().into_iter().find(|v| !v[k].is_zero()) {
            let inv = v[k].inv().unwrap();
            return Poly::new(f, v.iter().map(|c| c * &inv).collect());
        }
        powers.push(target);
    }
}

/// Splits `f` into two coprime nonconstant factors whose product is `f`,
/// or returns `None` when `f` is a power of a single irreducible.
///
/// Over the rationals only rational roots and factors of degree at most 3
/// are handled; anything else is reported as unsupported.
pub fn coprime_split<R: Rng>(f: &Poly, rng: &mut R) -> Result<Option<(Poly, Poly)>> {
    if f.is_constant() {
        return Ok(None);
    }
    let f = f.monic();
    let g = match f.field() {
        FieldSpec::Prime(p) => irreducible_factor_fp(&f, p, rng),
        FieldSpec::Rational => match irreducible_factor_q(&f)? {
            Some(g) => g,
            None => return Ok(None),
        },
    };
    let mut power = Poly::one(f.field());
    let mut rest = f.clone();
    loop {
        let (q, r) = rest.div_rem(&g);
        if !r.is_zero() {
            break;
        }
        power = power.mul(&g);
        rest = q;
    }
    if rest.is_constant() {
        Ok(None)
    } else {
        Ok(Some((power, rest)))
    }
}

/// Some monic irreducible factor of a monic nonconstant `f` over GF(p).
fn irreducible_factor_fp<R: Rng>(f: &Poly, p: u64, rng: &mut R) -> Poly {
    let df = f.derivative();
    if df.is_zero() {
        // f(x) = g(x^p) = g(x)^p over a prime field.
        let root: Vec<Scalar> = f.coeffs.iter().step_by(p as usize).cloned().collect();
        return irreducible_factor_fp(&Poly::new(f.field, root), p, rng);
    }
    let sqfree = f.div_exact(&f.gcd(&df));
    let x = Poly::x(f.field);
    let mut xq = x.clone();
    let w = sqfree;
    let mut d = 0usize;
    loop {
        d += 1;
        let deg = w.degree().unwrap();
        if deg < 2 * d {
            // What is left is irreducible.
            return w.monic();
        }
        xq = xq.pow_mod(p as u128, &w);
        let g = w.gcd(&xq.sub(&x));
        if !g.is_constant() {
            return equal_degree_factor(&g, d, p, rng);
        }
    }
}

/// Cantor–Zassenhaus: an irreducible factor of a squarefree product of
/// degree-`d` irreducibles.
fn equal_degree_factor<R: Rng>(g: &Poly, d: usize, p: u64, rng: &mut R) -> Poly {
    let n = g.degree().unwrap();
    if n == d {
        return g.monic();
    }
    let field = g.field;
    loop {
        let a = Poly::new(
            field,
            (0..n)
                .map(|_| field.from_i64(rng.gen_range(0..p as i64)))
                .collect(),
        );
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut t = a.rem(g);
            let mut s = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(g);
                s = s.add(&t);
            }
            s
        } else {
            let e = (p as u128).pow(d as u32);
            a.pow_mod((e - 1) / 2, g).sub(&Poly::one(field))
        };
        let h = g.gcd(&b);
        if !h.is_constant() && h.degree() != g.degree() {
            let other = g.div_exact(&h);
            let next = if h.degree() <= other.degree() {
                h
            } else {
                other
            };
            return equal_degree_factor(&next, d, p, rng);
        }
    }
}

/// Irreducible factor over Q, or `None` if `f` is a power of an
/// irreducible of degree at most 3.
fn irreducible_factor_q(f: &Poly) -> Result<Option<Poly>> {
    let df = f.derivative();
    let sqfree = f.div_exact(&f.gcd(&df));
    if let Some(r) = rational_root(&sqfree)? {
        let lin = Poly::new(f.field, vec![-&r, f.field.one()]);
        if sqfree.degree() == Some(1) {
            // f is a power of (x - r).
            return Ok(None);
        }
        return Ok(Some(lin));
    }
    // Square-free decomposition f = Π a_i^i can still separate factors.
    let mut a = sqfree.clone();
    let mut rest = f.clone();
    while !a.is_constant() {
        rest = rest.div_exact(&a);
        let next = rest.gcd(&a);
        if next.degree() != a.degree() {
            let factor = a.div_exact(&next);
            if factor.degree() != sqfree.degree() {
                return Ok(Some(factor));
            }
        }
        a = next;
    }
    if sqfree.degree().unwrap() <= 3 {
        Ok(None)
    } else {
        Err(Error::UnsupportedFactorization(format!(
            "square-free part of degree {} without rational roots",
            sqfree.degree().unwrap()
        )))
    }
}

/// Bound on |coefficient| for the rational-root search.
const ROOT_SEARCH_LIMIT: i64 = 1_000_000_000;

fn rational_root(f: &Poly) -> Result<Option<Scalar>> {
    let field = f.field;
    if f.coeffs[0].is_zero() {
        return Ok(Some(field.zero()));
    }
    // Clear denominators.
    let mut lcm = BigInt::one();
    for c in &f.coeffs {
        lcm = lcm.lcm(c.as_rational().unwrap().denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| {
            let q = c.as_rational().unwrap();
            q.numer() * (&lcm / q.denom())
        })
        .collect();
    let small = |b: &BigInt| b.abs().to_i64().filter(|v| *v <= ROOT_SEARCH_LIMIT);
    let (Some(c0), Some(cn)) = (small(&ints[0]), small(ints.last().unwrap())) else {
        return Err(Error::UnsupportedFactorization(
            "coefficients too large for rational-root search".into(),
        ));
    };
    for p in divisors(c0) {
        for q in divisors(cn) {
            for sign in [1i64, -1] {
                let cand = field.from_fraction(&BigInt::from(sign * p), &BigInt::from(q))?;
                if f.eval(&cand).is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Given coprime `a`, `b`, the polynomial `e` with `e ≡ 1 (mod a)` and `e ≡ 0 (mod b)`.
pub fn crt_idempotent(a: &Poly, b: &Poly) -> Poly {
    // s a + t b = 1, so t b ≡ 1 mod a and t b ≡ 0 mod b.
    let (g, _s, t) = a.xgcd(b);
    debug_assert!(g.degree() == Some(0), "factors must be coprime");
    t.mul(b)
}
