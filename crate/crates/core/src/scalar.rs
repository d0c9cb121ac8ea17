//! Exact scalars: arbitrary precision rationals and prime-field residues.
//!
//! A [`Scalar`] always knows which field it lives in. Mixing fields is a
//! programming error for the operator impls (they panic) and a recoverable
//! error for the `try_*` methods.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::MultiIndex;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl Field {
    /// Checked constructor for a prime field.
    pub fn prime(p: u32) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime(Fp::new(v, p)),
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Prime(Fp::new(r.to_i64().expect("residue fits"), p))
            }
        }
    }

    /// `num/den` in this field; fails when `den` vanishes.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num.into(), den.into()))),
            Field::Prime(p) => {
                let d = Fp::new(den, p);
                let inv = d.inverse().ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Prime(Fp::new(num, p) * inv))
            }
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

/// Residue modulo a small prime. The prime travels with the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    pub fn new(v: i64, p: u32) -> Fp {
        Fp { value: v.rem_euclid(p as i64) as u32, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inverse(self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, self.value as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp::new(s0, self.p))
    }

    fn check(self, other: Fp) {
        assert_eq!(self.p, other.p, "prime field mismatch");
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        self.check(o);
        Fp { value: ((self.value as u64 + o.value as u64) % self.p as u64) as u32, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        self.check(o);
        Fp {
            value: ((self.value as u64 + self.p as u64 - o.value as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        self.check(o);
        Fp { value: ((self.value as u64 * o.value as u64) % self.p as u64) as u32, p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: (self.p - self.value) % self.p, p: self.p }
    }
}

/// An exact scalar tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Fp),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime(x) => Field::Prime(x.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime(x) => x.value == 1,
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Prime(_) => None,
        }
    }

    pub fn as_fp(&self) -> Option<Fp> {
        match self {
            Scalar::Prime(x) => Some(*x),
            Scalar::Rational(_) => None,
        }
    }

    fn same_field(&self, o: &Scalar) -> Result<()> {
        if self.field() == o.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field(), o.field()))
        }
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar> {
        self.same_field(o)?;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(*a + *b),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar> {
        self.same_field(o)?;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(*a - *b),
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar> {
        self.same_field(o)?;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(*a * *b),
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar> {
        self.same_field(o)?;
        let inv = o.inverse()?;
        self.try_mul(&inv)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Prime(x) => x.inverse().map(Scalar::Prime).ok_or(Error::DivisionByZero),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
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

    /// Small-integer view, used for printing and tests.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Prime(x) => Some(x.value as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Prime(_) => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime(x) => write!(f, "{}", x.value),
        }
    }
}

macro_rules! scalar_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$try(o).expect("scalar field mismatch")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$try(&o).expect("scalar field mismatch")
            }
        }
    };
}

scalar_op!(Add, add, try_add);
scalar_op!(Sub, sub, try_sub);
scalar_op!(Mul, mul, try_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Prime(x) => Scalar::Prime(-*x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `C(a, b)` for an arbitrary integer top entry.
pub fn binomial_signed(a: i64, b: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= BigInt::from(a - i as i64);
    }
    acc / factorial(b)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `prod_j C(alpha_j + beta_j, alpha_j)` over all `2n` positions.
pub fn multi_binomial(alpha: &MultiIndex, beta: &MultiIndex) -> Result<BigInt> {
    if alpha.rank() != beta.rank() {
        return Err(Error::RankMismatch(alpha.rank(), beta.rank()));
    }
    let mut acc = BigInt::one();
    for (a, b) in alpha.components().iter().zip(beta.components()) {
        if *a < 0 || *b < 0 {
            return Err(Error::InvalidParameters(format!(
                "multi_binomial needs nonnegative indices, got {alpha} and {beta}"
            )));
        }
        acc *= binomial((*a + *b) as u64, *a as u64);
    }
    Ok(acc)
}

/// Residue of a rational modulo `p`.
pub fn reduce_mod_p(r: &Scalar, p: u32) -> Result<Scalar> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = match r {
        Scalar::Rational(q) => q,
        Scalar::Prime(x) if x.p == p => return Ok(r.clone()),
        Scalar::Prime(x) => return Err(Error::FieldMismatch(Field::Prime(x.p), Field::Prime(p))),
    };
    let pb = BigInt::from(p);
    if q.denom().mod_floor(&pb).is_zero() {
        return Err(Error::NotReducible { value: r.to_string(), p });
    }
    let field = Field::Prime(p);
    let num = field.from_bigint(q.numer());
    let den = field.from_bigint(q.denom());
    num.try_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat_inverse(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        for _ in 0..p - 2 {
            acc = acc * a as u64 % p as u64;
        }
        acc as u32
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(2, 1), BigInt::from(2));
        assert_eq!(binomial(1, 3), BigInt::zero());
        assert_eq!(binomial_signed(-2, 3), BigInt::from(-4));
    }

    #[test]
    fn multi_binomial_examples() {
        let e1 = MultiIndex::epsilon(1, 1);
        assert_eq!(multi_binomial(&e1, &e1).unwrap(), BigInt::from(2));
        let a = MultiIndex::new(&[1, 1, 0, 0]);
        let b = MultiIndex::new(&[1, 0, 2, 0]);
        assert_eq!(multi_binomial(&a, &b).unwrap(), BigInt::from(2));
        let z = MultiIndex::zero(2);
        assert_eq!(multi_binomial(&z, &b).unwrap(), BigInt::one());
        let c = MultiIndex::new(&[1, 1]);
        assert!(matches!(multi_binomial(&a, &c), Err(Error::RankMismatch(2, 1))));
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_mod_p(&Scalar::rational(3, 2), 5).unwrap();
        assert_eq!(r.to_i64(), Some(4));
        assert_eq!((3 * fermat_inverse(2, 5)) % 5, 4);
        assert!(reduce_mod_p(&Scalar::rational(0, 1), 7).unwrap().is_zero());
        assert!(matches!(
            reduce_mod_p(&Scalar::rational(1, 3), 3),
            Err(Error::NotReducible { .. })
        ));
        assert!(matches!(reduce_mod_p(&Scalar::rational(1, 2), 9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn inverse_matches_fermat() {
        for p in [3u32, 5, 7, 11, 13] {
            for a in 1..p {
                assert_eq!(Fp::new(a as i64, p).inverse().unwrap().value(), fermat_inverse(a, p));
            }
        }
    }

    #[test]
    fn cross_field_arithmetic_rejected() {
        let a = Scalar::rational(1, 2);
        let b = Field::Prime(3).one();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(..))));
        let c = Field::Prime(5).one();
        assert!(b.try_mul(&c).is_err());
    }

    #[test]
    fn canonical_rational() {
        let a = Scalar::rational(4, -6);
        let r = a.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }
}
