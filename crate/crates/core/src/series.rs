//! Polynomials in the deformation parameter `t`, either cut at order `N`
//! or reduced modulo `t^p − qt`.

use std::fmt;

use crate::algebra::{TensorElement, UElement};
use crate::error::{Error, Result};
use crate::scalar::{binomial, binomial_signed, Field, Scalar};

/// Coefficient space of a [`TPoly`].
pub trait Ring: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    fn field(&self) -> Field;
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn field(&self) -> Field {
        Scalar::field(self)
    }
}

impl Ring for UElement {
    fn zero_like(&self) -> Self {
        self.algebra().zero()
    }
    fn one_like(&self) -> Self {
        self.algebra().one()
    }
    fn add(&self, o: &Self) -> Self {
        UElement::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UElement::mul(self, o)
    }
    fn scale(&self, s: &Scalar) -> Self {
        UElement::scale(self, s)
    }
    fn is_zero(&self) -> bool {
        UElement::is_zero(self)
    }
    fn field(&self) -> Field {
        self.algebra().field()
    }
}

impl Ring for TensorElement {
    fn zero_like(&self) -> Self {
        TensorElement::zero(self.algebra(), self.arity())
    }
    fn one_like(&self) -> Self {
        TensorElement::one(self.algebra(), self.arity())
    }
    fn add(&self, o: &Self) -> Self {
        TensorElement::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TensorElement::mul(self, o)
    }
    fn scale(&self, s: &Scalar) -> Self {
        TensorElement::scale(self, s)
    }
    fn is_zero(&self) -> bool {
        TensorElement::is_zero(self)
    }
    fn field(&self) -> Field {
        self.algebra().field()
    }
}

/// Degree rule for `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TMode {
    /// `K[t]/t^{N+1}`.
    Truncated(usize),
    /// `K[t]/(t^p − qt)` with `q ∈ F_p`.
    PTruncated { p: u32, q: u32 },
}

impl TMode {
    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        match *self {
            TMode::Truncated(n) => n + 1,
            TMode::PTruncated { p, .. } => p as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Highest degree that survives.
    pub fn max_degree(&self) -> usize {
        self.len() - 1
    }

    /// Rewrites `t^d` to `c·t^{d'}`; `None` when it vanishes.
    pub fn reduce(&self, d: usize) -> Option<(usize, u32)> {
        match *self {
            TMode::Truncated(n) => (d <= n).then_some((d, 1)),
            TMode::PTruncated { p, q } => {
                let p = p as usize;
                let mut d = d;
                let mut c: u64 = 1;
                while d >= p {
                    d = d - p + 1;
                    c = c * q as u64 % p as u64;
                }
                (c != 0).then_some((d, c as u32))
            }
        }
    }
}

impl fmt::Display for TMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TMode::Truncated(n) => write!(f, "t^{}=0", n + 1),
            TMode::PTruncated { p, q } => write!(f, "t^{p}={q}t"),
        }
    }
}

/// Polynomial in `t` with coefficients in a [`Ring`].
#[derive(Clone, PartialEq)]
pub struct TPoly<V> {
    mode: TMode,
    coeffs: Vec<V>,
}

impl<V: Ring> TPoly<V> {
    /// Zero series shaped like `proto`.
    pub fn zero(mode: TMode, proto: &V) -> TPoly<V> {
        TPoly { mode, coeffs: vec![proto.zero_like(); mode.len()] }
    }

    pub fn constant(mode: TMode, v: V) -> TPoly<V> {
        let mut out = TPoly::zero(mode, &v);
        out.coeffs[0] = v;
        out
    }

    /// `v·t^d`, reduced by the mode.
    pub fn monomial(mode: TMode, v: V, d: usize) -> TPoly<V> {
        let mut out = TPoly::zero(mode, &v);
        out.add_at(d, &v);
        out
    }

    /// Builds from coefficients; degrees past the mode are reduced.
    pub fn from_coeffs(mode: TMode, coeffs: Vec<V>) -> TPoly<V> {
        let mut out = TPoly::zero(mode, &coeffs[0]);
        for (d, v) in coeffs.iter().enumerate() {
            out.add_at(d, v);
        }
        out
    }

    /// Adds `v·t^d` in place.
    pub fn add_at(&mut self, d: usize, v: &V) {
        if let Some((d2, c)) = self.mode.reduce(d) {
            let term = if c == 1 { v.clone() } else { v.scale(&v.field().from_i64(c as i64)) };
            self.coeffs[d2] = self.coeffs[d2].add(&term);
        }
    }

    pub fn mode(&self) -> TMode {
        self.mode
    }

    pub fn coeff(&self, d: usize) -> &V {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[V] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &TPoly<V>) -> Result<()> {
        if self.mode != o.mode {
            return Err(Error::InvalidParameters(format!("t-modes differ: {} vs {}", self.mode, o.mode)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &TPoly<V>) -> Result<TPoly<V>> {
        self.check(o)?;
        Ok(TPoly {
            mode: self.mode,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn add(&self, o: &TPoly<V>) -> TPoly<V> {
        self.try_add(o).expect("t-mode mismatch")
    }

    pub fn scale(&self, s: &Scalar) -> TPoly<V> {
        TPoly { mode: self.mode, coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    pub fn neg(&self) -> TPoly<V> {
        self.scale(&-self.coeffs[0].field().one())
    }

    pub fn sub(&self, o: &TPoly<V>) -> TPoly<V> {
        self.add(&o.neg())
    }

    /// Convolution with the mode's degree rule.
    pub fn try_mul(&self, o: &TPoly<V>) -> Result<TPoly<V>> {
        self.check(o)?;
        let mut out = TPoly::zero(self.mode, &self.coeffs[0]);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() || self.mode.reduce(i + j).is_none() {
                    continue;
                }
                out.add_at(i + j, &a.mul(b));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &TPoly<V>) -> TPoly<V> {
        self.try_mul(o).expect("t-mode mismatch")
    }

    pub fn pow(&self, k: u32) -> TPoly<V> {
        let mut out = TPoly::constant(self.mode, self.coeffs[0].one_like());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Inverse of a series with constant term `1`, by the geometric series
    /// in `1 − x`. Only the truncated mode makes `1 − x` nilpotent.
    pub fn inverse(&self) -> Result<TPoly<V>> {
        let TMode::Truncated(n) = self.mode else {
            return Err(Error::InvalidParameters("series inversion needs a truncated mode".into()));
        };
        let one = self.coeffs[0].one_like();
        if self.coeffs[0] != one {
            return Err(Error::InvalidParameters("constant term must be 1".into()));
        }
        let y = TPoly::constant(self.mode, one.clone()).sub(self);
        let mut out = TPoly::constant(self.mode, one.clone());
        let mut power = TPoly::constant(self.mode, one);
        for _ in 0..n {
            power = power.mul(&y);
            out = out.add(&power);
        }
        Ok(out)
    }

    /// Degreewise image under a linear map.
    pub fn map<W: Ring>(&self, f: impl Fn(&V) -> W) -> TPoly<W> {
        TPoly { mode: self.mode, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Cuts a truncated series to a lower order.
    pub fn truncate(&self, n: usize) -> Result<TPoly<V>> {
        match self.mode {
            TMode::Truncated(m) if n <= m => {
                Ok(TPoly { mode: TMode::Truncated(n), coeffs: self.coeffs[..=n].to_vec() })
            }
            _ => Err(Error::InvalidParameters(format!("cannot truncate {} to order {n}", self.mode))),
        }
    }

    /// Value at `t = t0`.
    pub fn evaluate(&self, t0: &Scalar) -> V {
        let mut acc = self.coeffs[0].zero_like();
        let mut pw = t0.field().one();
        for c in &self.coeffs {
            acc = acc.add(&c.scale(&pw));
            pw = &pw * t0;
        }
        acc
    }

    /// Lowest degree where the two series differ.
    pub fn first_difference(&self, o: &TPoly<V>) -> Option<usize> {
        self.coeffs.iter().zip(&o.coeffs).position(|(a, b)| a != b)
    }
}

impl<V: Ring + fmt::Display> fmt::Display for TPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<V: Ring + fmt::Display> fmt::Debug for TPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{}]", self.mode)
    }
}

/// `(1 − et)^s` for any integer `s`.
///
/// For `s < 0` this is `Σ_r C(−s+r−1, r) e^r t^r`. In the `p`-truncated mode
/// the sum stops at `r = p − 1`, which is exact only in the restricted
/// algebra where `e^p = 0`.
pub fn one_minus_et_power(e: &UElement, s: i64, mode: TMode) -> Result<TPoly<UElement>> {
    let alg = e.algebra();
    let field = alg.field();
    let top = match mode {
        TMode::Truncated(n) => n,
        TMode::PTruncated { p, .. } => {
            if !alg.is_restricted() {
                return Err(Error::InvalidParameters(
                    "(1-et)^s modulo t^p - qt needs the restricted algebra".into(),
                ));
            }
            p as usize - 1
        }
    };
    let top = if s >= 0 { top.min(s as usize) } else { top };
    let mut out = TPoly::zero(mode, &alg.one());
    let mut epow = alg.one();
    for r in 0..=top {
        let c = if s >= 0 {
            let b = binomial(s as u64, r as u64);
            if r % 2 == 0 {
                field.from_bigint(&b)
            } else {
                -field.from_bigint(&b)
            }
        } else {
            field.from_bigint(&binomial_signed(-s + r as i64 - 1, r as u64))
        };
        out.add_at(r, &epow.scale(&c));
        epow = epow.mul(e);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UAlgebra;
    use crate::index::MultiIndex;
    use crate::lie::LieContext;

    fn q(n: i64) -> Scalar {
        Scalar::rational(n, 1)
    }

    #[test]
    fn p_truncated_reduction() {
        let mode = TMode::PTruncated { p: 3, q: 1 };
        let f = Field::Prime(3);
        let t2 = TPoly::monomial(mode, f.one(), 2);
        let t = TPoly::monomial(mode, f.one(), 1);
        assert_eq!(t2.mul(&t), t);
        let mode0 = TMode::PTruncated { p: 3, q: 0 };
        let t = TPoly::monomial(mode0, f.one(), 1);
        assert!(t.pow(3).is_zero());
    }

    #[test]
    fn truncated_binomials() {
        let mode = TMode::Truncated(2);
        let x = TPoly::from_coeffs(mode, vec![q(1), q(1)]);
        assert_eq!(x.mul(&x), TPoly::from_coeffs(mode, vec![q(1), q(2), q(1)]));
        assert_eq!(x.pow(3), TPoly::from_coeffs(mode, vec![q(1), q(3), q(3)]));
        let one = TPoly::constant(mode, q(1));
        assert_eq!(x.mul(&one), x);
    }

    #[test]
    fn inverse_of_one_plus_t() {
        let mode = TMode::Truncated(4);
        let x = TPoly::from_coeffs(mode, vec![q(1), q(1)]);
        let inv = x.inverse().unwrap();
        assert_eq!(inv, TPoly::from_coeffs(mode, vec![q(1), q(-1), q(1), q(-1), q(1)]));
    }

    #[test]
    fn restricted_geometric_series() {
        let alg = UAlgebra::restricted(LieContext::ModularH { n: 1, p: 3 }).unwrap();
        let e = alg.generator(MultiIndex::new(&[1, 2])).unwrap().scale(&Field::Prime(3).from_i64(2));
        for qq in [0, 1] {
            let mode = TMode::PTruncated { p: 3, q: qq };
            let one = TPoly::constant(mode, alg.one());
            let a = one_minus_et_power(&e, 1, mode).unwrap();
            let f = one_minus_et_power(&e, -1, mode).unwrap();
            assert_eq!(a.mul(&f), one);
            assert_eq!(one_minus_et_power(&e, 3, mode).unwrap(), one);
            assert_eq!(f.pow(3), one);
            assert_eq!(one_minus_et_power(&e, 0, mode).unwrap(), one);
        }
    }

    #[test]
    fn negative_powers_match_inverse() {
        let alg = UAlgebra::new(LieContext::HPlus { n: 1 });
        let e = alg.generator(MultiIndex::new(&[1, 2])).unwrap();
        let mode = TMode::Truncated(5);
        for s in 1..=3 {
            let pos = one_minus_et_power(&e, s, mode).unwrap();
            let neg = one_minus_et_power(&e, -s, mode).unwrap();
            assert_eq!(pos.inverse().unwrap(), neg);
        }
    }
}
