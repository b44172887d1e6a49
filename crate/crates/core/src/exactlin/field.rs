use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported characteristic. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The base field: a prime field GF(p) or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Parses `"2"`, `"101"`, `"Q"` or `"rational"`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
            return Ok(FieldSpec::Rational);
        }
        let p: u64 = t
            .parse()
            .map_err(|_| Error::InvalidField(format!("cannot parse field `{s}`")))?;
        FieldSpec::prime(p)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rational => 0,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p),
            FieldSpec::Rational => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp { v: 0, p: *p },
            FieldSpec::Rational => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp { v: 1 % p, p: *p },
            FieldSpec::Rational => Scalar::Q(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
            FieldSpec::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &m) + &m) % &m;
                    r.try_into().expect("residue fits in u64")
                };
                let d = Scalar::Fp {
                    v: reduce(den),
                    p: *p,
                };
                let inv = d
                    .inv()
                    .ok_or_else(|| Error::Parse(format!("denominator {den} vanishes mod {p}")))?;
                Ok(&Scalar::Fp {
                    v: reduce(num),
                    p: *p,
                } * &inv)
            }
            FieldSpec::Rational => {
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(Scalar::Q(BigRational::new(num.clone(), den.clone())))
            }
        }
    }

    /// Parses an integer or a fraction `a/b`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad scalar `{s}`")))?;
        let den: BigInt = d
            .parse()
            .map_err(|_| Error::Parse(format!("bad scalar `{s}`")))?;
        self.from_fraction(&num, &den)
    }

    /// All field elements in the order 0, 1, ..., p-1. Panics for the rationals.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + Clone {
        let p = self
            .order()
            .expect("element enumeration needs a finite field");
        (0..p).map(move |v| Scalar::Fp { v, p })
    }

    pub fn to_label(&self) -> String {
        match self {
            FieldSpec::Prime(p) => format!("GF({p})"),
            FieldSpec::Rational => "Q".into(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_label())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Prime-field residues carry their modulus so that
/// arithmetic needs no external context; mixing fields is a logic error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { v: u64, p: u64 },
    Q(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
            Scalar::Q(_) => FieldSpec::Rational,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Fp { v, p } => Some(Scalar::Fp {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            }),
            Scalar::Q(q) => Some(Scalar::Q(q.recip())),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue in `0..p` for prime fields.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    /// In-place `self -= c * x`.
    #[inline]
    pub fn sub_mul_assign(&mut self, c: &Scalar, x: &Scalar) {
        match (&mut *self, c, x) {
            (Scalar::Fp { v, p }, Scalar::Fp { v: cv, .. }, Scalar::Fp { v: xv, .. }) => {
                let prod = (cv * xv) % *p;
                *v = (*v + *p - prod) % *p;
            }
            _ => {
                let t = &*self - &(c * x);
                *self = t;
            }
        }
    }

    /// In-place `self += c * x`.
    #[inline]
    pub fn add_mul_assign(&mut self, c: &Scalar, x: &Scalar) {
        match (&mut *self, c, x) {
            (Scalar::Fp { v, p }, Scalar::Fp { v: cv, .. }, Scalar::Fp { v: xv, .. }) => {
                *v = (*v + (cv * xv) % *p) % *p;
            }
            _ => {
                let t = &*self + &(c * x);
                *self = t;
            }
        }
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else if q.is_negative() {
                    write!(f, "-{}/{}", q.numer().abs(), q.denom())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $fp:expr, $q:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: p2 }) => {
                        debug_assert_eq!(p, p2, "mixed prime fields");
                        Scalar::Fp {
                            v: $fp(*a, *b, *p),
                            p: *p,
                        }
                    }
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q($q(a, b)),
                    _ => panic!("mixed field arithmetic"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b, p| (a + b) % p, |a: &BigRational, b| a + b);
binop!(Sub, sub, |a, b, p| (a + p - b) % p, |a: &BigRational, b| a
    - b);
binop!(Mul, mul, |a, b, p| (a * b) % p, |a: &BigRational, b| a * b);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: (p - v) % p,
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(-q),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
