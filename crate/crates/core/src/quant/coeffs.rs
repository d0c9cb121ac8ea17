//! Coefficient families of `d^{(ℓ)} = (1/ℓ!)(ad e)^ℓ` on basis vectors.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::index::MultiIndex;
use crate::lie::sigma;
use crate::scalar::{binomial, binomial_signed, factorial, reduce_mod_p, Field, Scalar};

fn rat(v: BigInt) -> Scalar {
    Scalar::Rational(BigRational::from_integer(v))
}

fn nonneg_binomial(top: i64, bottom: i64) -> BigInt {
    if bottom < 0 || top < 0 {
        return BigInt::from(0);
    }
    binomial(top as u64, bottom as u64)
}

/// `A_ℓ = (1/ℓ!) Π_{j<ℓ} (α_k − 2α_{−k} + j)`, `A_0 = 1`, `A_{−1} = 0`.
pub fn coeff_a_vertical(alpha: &MultiIndex, k: i32, ell: i64) -> Scalar {
    if ell < 0 {
        return Field::Rational.zero();
    }
    let base = alpha.get(k) - 2 * alpha.get(-k);
    let mut num = BigInt::from(1);
    for j in 0..ell {
        num *= BigInt::from(base + j);
    }
    Scalar::Rational(BigRational::new(num, factorial(ell as u64)))
}

/// `Ā_ℓ = ℓ!·C(α_k+ℓ, α_k)·A_ℓ mod p`, zero when `α + ℓε_k` leaves the basis.
pub fn coeff_abar_vertical(alpha: &MultiIndex, k: i32, ell: i64, p: u32) -> Result<Scalar> {
    let field = Field::prime(p)?;
    if ell < 0 {
        return Ok(field.zero());
    }
    let target = alpha.with(k, ell);
    if !crate::modular::in_basis(&target, p) {
        return Ok(field.zero());
    }
    let scale = factorial(ell as u64) * nonneg_binomial(alpha.get(k) + ell, alpha.get(k));
    let v = &coeff_a_vertical(alpha, k, ell) * &rat(scale);
    reduce_mod_p(&v, p)
}

/// Which sign the `A` coefficients carry. The bracket
/// `[e, D_H(x^α)] = σ(m)α_{−m}D_H(..) − α_{−k}D_H(..)` forces `(−1)^j`;
/// `Unsigned` drops it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AForm {
    Signed,
    Unsigned,
}

fn a_sign(form: AForm, j: i64) -> i64 {
    if form == AForm::Signed && j % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `(A_j, B_j)` with `A_j = (−1)^j C(α_{−k}, j)` and `B_j = s^j C(α_{−m}, j)`
/// for a given sign `s`.
pub fn coeff_ab_horizontal_signed(alpha: &MultiIndex, k: i32, m: i32, j: i64, s: i64) -> (Scalar, Scalar) {
    coeff_ab_horizontal_form(alpha, k, m, j, s, AForm::Signed)
}

pub fn coeff_ab_horizontal_form(alpha: &MultiIndex, k: i32, m: i32, j: i64, s: i64, form: AForm) -> (Scalar, Scalar) {
    if j < 0 {
        let z = Field::Rational.zero();
        return (z.clone(), z);
    }
    let a = binomial_signed(alpha.get(-k), j as u64);
    let a = if alpha.get(-k) >= 0 && j > alpha.get(-k) { BigInt::from(0) } else { a };
    let b = binomial_signed(alpha.get(-m), j as u64);
    let b = if alpha.get(-m) >= 0 && j > alpha.get(-m) { BigInt::from(0) } else { b };
    let sign = if s < 0 && j % 2 == 1 { -1 } else { 1 };
    (rat(a * a_sign(form, j)), rat(b * sign))
}

/// `(A_j, B_j)` with the sign `σ(m)`.
pub fn coeff_ab_horizontal(alpha: &MultiIndex, k: i32, m: i32, j: i64) -> Result<(Scalar, Scalar)> {
    Ok(coeff_ab_horizontal_signed(alpha, k, m, j, sigma(m)?))
}

/// Which lower index the reduced `B̄_{ℓ−j}` carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BbarForm {
    /// `C(α_k+ℓ−j, ℓ−j)`, from the factorial ratio.
    Proof,
    /// `C(α_k+ℓ−j, j)`, the refuted variant.
    Statement,
}

/// `(Ā_j, B̄_{ℓ−j})` modulo `p`.
#[allow(clippy::too_many_arguments)]
pub fn coeff_abbar_horizontal_with(
    alpha: &MultiIndex,
    k: i32,
    m: i32,
    j: i64,
    ell: i64,
    p: u32,
    form: BbarForm,
    aform: AForm,
    s: i64,
) -> Result<(Scalar, Scalar)> {
    let field = Field::prime(p)?;
    let r = ell - j;
    let a = if j < 0 || j > alpha.get(-k) {
        BigInt::from(0)
    } else {
        nonneg_binomial(alpha.get(m) + j, j) * a_sign(aform, j)
    };
    let b = if r < 0 || r > alpha.get(-m) {
        BigInt::from(0)
    } else {
        let lower = match form {
            BbarForm::Proof => r,
            BbarForm::Statement => j,
        };
        let sign = if s < 0 && r % 2 == 1 { -1 } else { 1 };
        nonneg_binomial(alpha.get(k) + r, lower) * sign
    };
    Ok((field.from_bigint(&a), field.from_bigint(&b)))
}

pub fn coeff_abbar_horizontal(alpha: &MultiIndex, k: i32, m: i32, j: i64, ell: i64, p: u32) -> Result<(Scalar, Scalar)> {
    coeff_abbar_horizontal_with(alpha, k, m, j, ell, p, BbarForm::Proof, AForm::Signed, sigma(m)?)
}

/// Index `α + (ℓ−j)(ε_k − ε_{−m}) + j(ε_m − ε_{−k})` of the horizontal family.
pub fn horizontal_target(alpha: &MultiIndex, k: i32, m: i32, j: i64, ell: i64) -> MultiIndex {
    alpha.with(k, ell - j).with(-m, -(ell - j)).with(m, j).with(-k, -j)
}

/// `A(i,k) = Π_{j=0}^{i} (jα_k − (j−1)α_{−k})`, `1` for `i < 0`.
pub fn coeff_a_ik(alpha: &MultiIndex, i: i64, k: i32) -> Scalar {
    let mut acc = BigInt::from(1);
    for j in 0..=i {
        acc *= BigInt::from(j * alpha.get(k) - (j - 1) * alpha.get(-k));
    }
    rat(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(c: &[i64]) -> MultiIndex {
        MultiIndex::new(c)
    }

    #[test]
    fn vertical_values() {
        assert_eq!(coeff_a_vertical(&idx(&[1, 2]), 1, 1), Scalar::rational(0, 1));
        assert_eq!(coeff_a_vertical(&idx(&[0, 1]), 1, 2), Scalar::rational(1, 1));
        assert_eq!(coeff_a_vertical(&idx(&[3, 5]), 1, 0), Scalar::rational(1, 1));
        assert_eq!(coeff_a_vertical(&idx(&[3, 5]), 1, -1), Scalar::rational(0, 1));
        let f3 = Field::Prime(3);
        assert_eq!(coeff_abar_vertical(&idx(&[0, 1]), 1, 1, 3).unwrap(), f3.from_i64(2));
        assert_eq!(coeff_abar_vertical(&idx(&[0, 2]), 1, 1, 3).unwrap(), f3.zero());
        assert_eq!(coeff_abar_vertical(&idx(&[1, 1]), 1, 0, 3).unwrap(), f3.one());
    }

    #[test]
    fn horizontal_values() {
        let a = idx(&[2, 0, 1, 0]);
        let (a1, _) = coeff_ab_horizontal(&a, 1, 2, 1).unwrap();
        assert_eq!(a1, Scalar::rational(-2, 1));
        let (a3, _) = coeff_ab_horizontal(&a, 1, 2, 3).unwrap();
        assert!(a3.is_zero());
        let (a0, b0) = coeff_ab_horizontal(&a, 1, 2, 0).unwrap();
        assert!(a0.is_one() && b0.is_one());
        let f5 = Field::Prime(5);
        let b = idx(&[1, 0, 0, 1]);
        let (abar, _) = coeff_abbar_horizontal(&b, 1, 2, 1, 1, 5).unwrap();
        assert_eq!(abar, f5.from_i64(-2));
    }

    #[test]
    fn a_ik_values() {
        let a = idx(&[4, 0, 7, 0]);
        assert_eq!(coeff_a_ik(&a, -1, 1), Scalar::rational(1, 1));
        assert_eq!(coeff_a_ik(&a, 0, 1), Scalar::rational(4, 1));
        assert_eq!(coeff_a_ik(&idx(&[1, 1]), 1, 1), Scalar::rational(1, 1));
    }
}
