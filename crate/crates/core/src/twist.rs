//! Jordanian twists `𝓕_a`, `F_a`, the elements `u_a`, `v_a`, `w`, and the
//! twisted coproduct and antipode obtained by conjugation.

use smallvec::smallvec;

use crate::algebra::{FactorialKind, Monomial, TensorElement, UAlgebra, UElement};
use crate::error::{Error, Result};
use crate::lie::TwistPair;
use crate::par;
use crate::scalar::{factorial, Scalar};
use crate::series::{TMode, TPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistVariant {
    /// `𝓕_a = Σ (−1)^r/r! h_a^{[r]} ⊗ e^r t^r`
    CurlyF,
    /// `F_a = Σ 1/r! h_a^{⟨r⟩} ⊗ e^r t^r`
    F,
}

/// A series in `U ⊗ U` together with how it was built.
#[derive(Clone, Debug)]
pub struct TwistElement {
    pub label: String,
    pub body: TPoly<TensorElement>,
}

impl TwistElement {
    pub fn algebra(&self) -> &UAlgebra {
        self.body.coeff(0).algebra()
    }

    pub fn mode(&self) -> TMode {
        self.body.mode()
    }

    /// Same twist with the degree-`d` coefficient multiplied by `c`.
    pub fn corrupted(&self, d: usize, c: &Scalar) -> TwistElement {
        let mut coeffs = self.body.coeffs().to_vec();
        coeffs[d] = coeffs[d].scale(c);
        TwistElement {
            label: format!("{} (degree {d} scaled by {c})", self.label),
            body: TPoly::from_coeffs(self.mode(), coeffs),
        }
    }

    /// `(ε ⊗ Id)(F) = 1 = (Id ⊗ ε)(F)`.
    pub fn satisfies_counit(&self) -> bool {
        let alg = self.algebra();
        let one = TPoly::constant(self.mode(), alg.one());
        let left = self.body.map(|c| c.counit_slot(0).into_element());
        let right = self.body.map(|c| c.counit_slot(1).into_element());
        left == one && right == one
    }
}

fn inv_factorial(alg: &UAlgebra, r: usize) -> Result<Scalar> {
    alg.field().from_bigint(&factorial(r as u64)).inverse()
}

/// `𝓕_a` or `F_a` for the pair, cut by the mode.
pub fn build_twist(
    alg: &UAlgebra,
    pair: &TwistPair,
    a: &Scalar,
    variant: TwistVariant,
    mode: TMode,
) -> Result<TwistElement> {
    let h = alg.from_lie(&pair.h)?;
    let e = alg.from_lie(&pair.e)?;
    let field = alg.field();
    let mut body = TPoly::zero(mode, &TensorElement::zero(alg, 2));
    let mut epow = alg.one();
    for r in 0..mode.len() {
        let (kind, sign) = match variant {
            TwistVariant::CurlyF => (FactorialKind::Falling, if r % 2 == 0 { 1 } else { -1 }),
            TwistVariant::F => (FactorialKind::Rising, 1),
        };
        let c = &inv_factorial(alg, r)? * &field.from_i64(sign);
        let hr = alg.factorial_poly(&h, a, r as u32, kind);
        body.add_at(r, &TensorElement::pure(&[&hr, &epow]).scale(&c));
        epow = epow.mul(&e);
    }
    let name = match variant {
        TwistVariant::CurlyF => "𝓕",
        TwistVariant::F => "F",
    };
    Ok(TwistElement { label: format!("{name}_{a}({:?})", pair.kind), body })
}

/// `m·(S_0 ⊗ Id)(X)` or `m·(Id ⊗ S_0)(X)` degreewise.
pub fn antipode_contract(x: &TPoly<TensorElement>, slot: usize) -> TPoly<UElement> {
    x.map(|c| {
        let alg = c.algebra().clone();
        c.apply_slot(slot, |m| alg.s0_monomial(m)).multiply_out()
    })
}

/// `(u_a, v_a, w)` from their defining contractions:
/// `u_a = m(S_0⊗Id)(F_a)`, `v_a = m(Id⊗S_0)(𝓕_a)`, `w = m(Id⊗S_0)(𝓕)`.
pub fn build_u_v(
    alg: &UAlgebra,
    pair: &TwistPair,
    a: &Scalar,
    mode: TMode,
) -> Result<(TPoly<UElement>, TPoly<UElement>, TPoly<UElement>)> {
    let f = build_twist(alg, pair, a, TwistVariant::F, mode)?;
    let cf = build_twist(alg, pair, a, TwistVariant::CurlyF, mode)?;
    let cf0 = build_twist(alg, pair, &alg.field().zero(), TwistVariant::CurlyF, mode)?;
    Ok((
        antipode_contract(&f.body, 0),
        antipode_contract(&cf.body, 1),
        antipode_contract(&cf0.body, 1),
    ))
}

/// Closed forms `u_b = Σ (−1)^r/r! h_{−b}^{[r]} e^r t^r`, `v_a = Σ 1/r! h_a^{[r]} e^r t^r`.
pub fn u_v_closed(
    alg: &UAlgebra,
    pair: &TwistPair,
    a: &Scalar,
    mode: TMode,
) -> Result<(TPoly<UElement>, TPoly<UElement>)> {
    let h = alg.from_lie(&pair.h)?;
    let e = alg.from_lie(&pair.e)?;
    let field = alg.field();
    let mut u = TPoly::zero(mode, &alg.one());
    let mut v = TPoly::zero(mode, &alg.one());
    let mut epow = alg.one();
    for r in 0..mode.len() {
        let c = inv_factorial(alg, r)?;
        let sign = field.from_i64(if r % 2 == 0 { 1 } else { -1 });
        let hu = alg.factorial_poly(&h, &-a, r as u32, FactorialKind::Falling);
        let hv = alg.factorial_poly(&h, a, r as u32, FactorialKind::Falling);
        u.add_at(r, &hu.mul(&epow).scale(&(&c * &sign)));
        v.add_at(r, &hv.mul(&epow).scale(&c));
        epow = epow.mul(&e);
    }
    Ok((u, v))
}

fn pad(x: &TensorElement, left: bool) -> TensorElement {
    let mut out = TensorElement::zero(x.algebra(), x.arity() + 1);
    for (k, c) in x.terms() {
        let mut k2 = k.clone();
        if left {
            k2.insert(0, Monomial::new());
        } else {
            k2.push(Monomial::new());
        }
        out.add_term(k2, c.clone());
    }
    out
}

/// Outcome of a series identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub equal: bool,
    pub first_difference: Option<usize>,
    pub order: usize,
}

impl SeriesReport {
    pub fn compare<V: crate::series::Ring>(a: &TPoly<V>, b: &TPoly<V>) -> SeriesReport {
        let first = a.first_difference(b);
        SeriesReport { equal: first.is_none(), first_difference: first, order: a.mode().max_degree() }
    }
}

/// `(𝓕⊗1)(Δ_0⊗Id)(𝓕) = (1⊗𝓕)(Id⊗Δ_0)(𝓕)` in `U^{⊗3}`.
pub fn verify_cocycle(f: &TwistElement) -> SeriesReport {
    let (lhs, rhs) = par::join(
        || {
            let a = f.body.map(|c| pad(c, false));
            let b = f.body.map(|c| c.delta0_slot(0));
            a.mul(&b)
        },
        || {
            let a = f.body.map(|c| pad(c, true));
            let b = f.body.map(|c| c.delta0_slot(1));
            a.mul(&b)
        },
    );
    SeriesReport::compare(&lhs, &rhs)
}

/// A twist with its inverse and `w^{±1}` precomputed (truncated mode only).
#[derive(Clone, Debug)]
pub struct TwistedStructure {
    pub twist: TwistElement,
    pub inverse: TPoly<TensorElement>,
    pub w: TPoly<UElement>,
    pub w_inverse: TPoly<UElement>,
}

impl TwistedStructure {
    pub fn new(twist: &TwistElement) -> Result<TwistedStructure> {
        let inverse = twist.body.inverse()?;
        let w = antipode_contract(&twist.body, 1);
        let w_inverse = w.inverse()?;
        Ok(TwistedStructure { twist: twist.clone(), inverse, w, w_inverse })
    }

    pub fn algebra(&self) -> &UAlgebra {
        self.twist.algebra()
    }

    pub fn mode(&self) -> TMode {
        self.twist.mode()
    }

    /// `Δ(x) = 𝓕 Δ_0(x) 𝓕^{−1}`.
    pub fn coproduct(&self, x: &UElement) -> TPoly<TensorElement> {
        let d0 = TPoly::constant(self.mode(), self.algebra().delta0(x));
        self.twist.body.mul(&d0).mul(&self.inverse)
    }

    /// `S(x) = w S_0(x) w^{−1}`.
    pub fn antipode(&self, x: &UElement) -> TPoly<UElement> {
        let s0 = TPoly::constant(self.mode(), self.algebra().s0(x));
        self.w.mul(&s0).mul(&self.w_inverse)
    }

    /// `S` on a monomial, for contractions.
    fn antipode_monomial(&self, m: &Monomial) -> TPoly<UElement> {
        self.antipode(&self.algebra().monomial(m.clone()))
    }

    /// `(Δ ⊗ Id)(X)` for `X` in `U⊗U[t]`.
    pub fn coproduct_left(&self, x: &TPoly<TensorElement>) -> TPoly<TensorElement> {
        let f = self.twist.body.map(|c| pad(c, false));
        let finv = self.inverse.map(|c| pad(c, false));
        f.mul(&x.map(|c| c.delta0_slot(0))).mul(&finv)
    }

    /// `(Id ⊗ Δ)(X)`.
    pub fn coproduct_right(&self, x: &TPoly<TensorElement>) -> TPoly<TensorElement> {
        let f = self.twist.body.map(|c| pad(c, true));
        let finv = self.inverse.map(|c| pad(c, true));
        f.mul(&x.map(|c| c.delta0_slot(1))).mul(&finv)
    }

    /// `m(S ⊗ Id)(X)`.
    pub fn antipode_contract_left(&self, x: &TPoly<TensorElement>) -> TPoly<UElement> {
        let alg = self.algebra();
        let mode = self.mode();
        let mut out = TPoly::zero(mode, &alg.one());
        for (d, c) in x.coeffs().iter().enumerate() {
            for (k, s) in c.terms() {
                let right = TPoly::monomial(mode, alg.monomial(k[1].clone()).scale(s), d);
                out = out.add(&self.antipode_monomial(&k[0]).mul(&right));
            }
        }
        out
    }
}

/// `F_1 F_2`, after checking that the factors commute.
pub fn product_twist(f1: &TwistElement, f2: &TwistElement) -> Result<TwistElement> {
    let (a, b) = par::join(|| f1.body.mul(&f2.body), || f2.body.mul(&f1.body));
    if a != b {
        return Err(Error::NonCommuting);
    }
    Ok(TwistElement { label: format!("{}·{}", f1.label, f2.label), body: a })
}

/// Whether two twisted coproducts differ on a probe, and where first.
pub fn distinctness_probe(s1: &TwistedStructure, s2: &TwistedStructure, probe: &UElement) -> SeriesReport {
    let (a, b) = par::join(|| s1.coproduct(probe), || s2.coproduct(probe));
    SeriesReport::compare(&a, &b)
}

/// `1 ⊗ y` degreewise.
pub fn one_tensor(y: &TPoly<UElement>) -> TPoly<TensorElement> {
    y.map(|c| TensorElement::pure(&[&c.algebra().one(), c]))
}

/// `x ⊗ 1` degreewise.
pub fn tensor_one(y: &TPoly<UElement>) -> TPoly<TensorElement> {
    y.map(|c| TensorElement::pure(&[c, &c.algebra().one()]))
}

/// `x ⊗ y` for series `x`, `y`.
pub fn tensor_series(x: &TPoly<UElement>, y: &TPoly<UElement>) -> TPoly<TensorElement> {
    tensor_one(x).mul(&one_tensor(y))
}

/// The one-term tensor `m_1 ⊗ m_2`.
pub fn pure_key(alg: &UAlgebra, l: Monomial, r: Monomial) -> TensorElement {
    let mut out = TensorElement::zero(alg, 2);
    out.add_term(smallvec![l, r], alg.field().one());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::MultiIndex;
    use crate::lie::LieContext;
    use crate::series::one_minus_et_power;

    fn setup(n: usize) -> (UAlgebra, TwistPair) {
        let ctx = LieContext::HPlus { n };
        (UAlgebra::new(ctx), TwistPair::vertical(ctx, 1).unwrap())
    }

    #[test]
    fn low_degree_coefficients() {
        let (alg, pair) = setup(1);
        let z = alg.field().zero();
        let f = build_twist(&alg, &pair, &z, TwistVariant::CurlyF, TMode::Truncated(3)).unwrap();
        assert_eq!(f.body.coeff(0), &TensorElement::one(&alg, 2));
        let h = alg.from_lie(&pair.h).unwrap();
        let e = alg.from_lie(&pair.e).unwrap();
        assert_eq!(f.body.coeff(1), &TensorElement::pure(&[&h, &e]).neg());
        assert!(f.satisfies_counit());
    }

    #[test]
    fn cocycle_and_negative_control() {
        let (alg, pair) = setup(1);
        let z = alg.field().zero();
        let f = build_twist(&alg, &pair, &z, TwistVariant::CurlyF, TMode::Truncated(3)).unwrap();
        assert!(verify_cocycle(&f).equal);
        let bad = f.corrupted(1, &alg.field().from_i64(2));
        let rep = verify_cocycle(&bad);
        assert!(!rep.equal);
        assert_eq!(rep.first_difference, Some(2));
    }

    #[test]
    fn twisted_coproduct_of_h_and_e() {
        let (alg, pair) = setup(1);
        let mode = TMode::Truncated(3);
        let z = alg.field().zero();
        let f = build_twist(&alg, &pair, &z, TwistVariant::CurlyF, mode).unwrap();
        let s = TwistedStructure::new(&f).unwrap();
        let h = alg.from_lie(&pair.h).unwrap();
        let e = alg.from_lie(&pair.e).unwrap();
        let one = TPoly::constant(mode, alg.one());
        let fser = one_minus_et_power(&e, -1, mode).unwrap();
        let expect_h = tensor_series(&TPoly::constant(mode, h.clone()), &fser)
            .add(&one_tensor(&TPoly::constant(mode, h.clone())));
        assert_eq!(s.coproduct(&h), expect_h);
        let expect_e = tensor_series(&TPoly::constant(mode, e.clone()), &one_minus_et_power(&e, 1, mode).unwrap())
            .add(&one_tensor(&TPoly::constant(mode, e.clone())));
        assert_eq!(s.coproduct(&e), expect_e);
        assert_eq!(s.coproduct(&alg.one()), tensor_series(&one, &one));
    }

    #[test]
    fn u_v_contractions_match_closed_forms() {
        let (alg, pair) = setup(1);
        let mode = TMode::Truncated(4);
        for a in [-1i64, 0, 1] {
            let a = alg.field().from_i64(a);
            let (u, v, _) = build_u_v(&alg, &pair, &a, mode).unwrap();
            let (uc, vc) = u_v_closed(&alg, &pair, &a, mode).unwrap();
            assert_eq!(u, uc);
            assert_eq!(v, vc);
        }
    }

    #[test]
    fn twisted_antipode_axiom_on_generators() {
        let (alg, pair) = setup(1);
        let mode = TMode::Truncated(3);
        let z = alg.field().zero();
        let s = TwistedStructure::new(&build_twist(&alg, &pair, &z, TwistVariant::CurlyF, mode).unwrap()).unwrap();
        for alpha in [[1, 1], [1, 2], [0, 1], [2, 1]] {
            let x = alg.generator(MultiIndex::new(&alpha)).unwrap();
            let d = s.coproduct(&x);
            assert!(s.antipode_contract_left(&d).is_zero());
            assert_eq!(s.coproduct_left(&d), s.coproduct_right(&d));
        }
    }
}
