//! Closed-form quantizations of `U(H)` and `u(H(2n;1))`: the coproduct,
//! antipode and counit on Lie generators, extended multiplicatively.

pub mod checks;
pub mod coeffs;
pub mod sp2n;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use smallvec::smallvec;

use crate::algebra::{FactorialKind, Monomial, TensorElement, UAlgebra, UElement};
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::lie::{sigma, LieContext, LieElement, TwistPair};
use crate::scalar::{factorial, is_prime, Scalar};
use crate::series::{one_minus_et_power, TMode, TPoly};

use coeffs::{AForm, BbarForm};

/// The quantizations that have closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Char0Vertical { k: i32 },
    Char0Horizontal { k: i32, m: i32 },
    ModularUtVertical { k: i32, p: u32 },
    ModularUtqVertical { k: i32, p: u32, q: u32 },
    ModularUtHorizontal { k: i32, m: i32, p: u32 },
    ModularUtqHorizontal { k: i32, m: i32, p: u32, q: u32 },
    JordanianSp2n { k: i32, m: i32, p: u32, q: u32 },
}

impl Variant {
    pub fn k(&self) -> i32 {
        match *self {
            Variant::Char0Vertical { k }
            | Variant::Char0Horizontal { k, .. }
            | Variant::ModularUtVertical { k, .. }
            | Variant::ModularUtqVertical { k, .. }
            | Variant::ModularUtHorizontal { k, .. }
            | Variant::ModularUtqHorizontal { k, .. }
            | Variant::JordanianSp2n { k, .. } => k,
        }
    }

    pub fn m(&self) -> Option<i32> {
        match *self {
            Variant::Char0Horizontal { m, .. }
            | Variant::ModularUtHorizontal { m, .. }
            | Variant::ModularUtqHorizontal { m, .. }
            | Variant::JordanianSp2n { m, .. } => Some(m),
            _ => None,
        }
    }

    pub fn prime(&self) -> Option<u32> {
        match *self {
            Variant::ModularUtVertical { p, .. }
            | Variant::ModularUtqVertical { p, .. }
            | Variant::ModularUtHorizontal { p, .. }
            | Variant::ModularUtqHorizontal { p, .. }
            | Variant::JordanianSp2n { p, .. } => Some(p),
            _ => None,
        }
    }

    pub fn q(&self) -> Option<u32> {
        match *self {
            Variant::ModularUtqVertical { q, .. }
            | Variant::ModularUtqHorizontal { q, .. }
            | Variant::JordanianSp2n { q, .. } => Some(q),
            _ => None,
        }
    }

    pub fn is_horizontal(&self) -> bool {
        self.m().is_some()
    }

    /// Lives in the restricted algebra over `K[t]/(t^p − qt)`.
    pub fn is_restricted(&self) -> bool {
        self.q().is_some()
    }

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Char0Vertical { .. } => "char0-vertical",
            Variant::Char0Horizontal { .. } => "char0-horizontal",
            Variant::ModularUtVertical { .. } => "ut-vertical",
            Variant::ModularUtqVertical { .. } => "utq-vertical",
            Variant::ModularUtHorizontal { .. } => "ut-horizontal",
            Variant::ModularUtqHorizontal { .. } => "utq-horizontal",
            Variant::JordanianSp2n { .. } => "jordanian",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(k={}", self.name(), self.k())?;
        if let Some(m) = self.m() {
            write!(f, ", m={m}")?;
        }
        if let Some(p) = self.prime() {
            write!(f, ", p={p}")?;
        }
        if let Some(q) = self.q() {
            write!(f, ", q={q}")?;
        }
        write!(f, ")")
    }
}

#[derive(Default)]
struct Caches {
    powers: DashMap<i64, TPoly<UElement>>,
    deltas: DashMap<MultiIndex, TPoly<TensorElement>>,
    antipodes: DashMap<MultiIndex, TPoly<UElement>>,
}

/// A quantization together with its algebra, twist pair and `t`-ring.
#[derive(Clone)]
pub struct QuantizationContext {
    variant: Variant,
    alg: UAlgebra,
    pair: TwistPair,
    h: UElement,
    e: UElement,
    mode: TMode,
    sign: Option<i64>,
    bbar: BbarForm,
    aform: AForm,
    caches: Arc<Caches>,
}

impl fmt::Debug for QuantizationContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuantizationContext({} on {}, {})", self.variant, self.alg.context(), self.mode)
    }
}

impl QuantizationContext {
    /// `order` is the truncation `N` for the truncated variants and is
    /// ignored by the `u_{t,q}` ones.
    pub fn new(variant: Variant, n: usize, order: usize) -> Result<QuantizationContext> {
        let lie = match variant.prime() {
            Some(p) => LieContext::ModularH { n, p },
            None => LieContext::HPlus { n },
        };
        QuantizationContext::on(variant, lie, order)
    }

    /// Same, on an explicitly chosen Lie algebra (e.g. the Laurent one).
    pub fn on(variant: Variant, lie: LieContext, order: usize) -> Result<QuantizationContext> {
        let n = lie.rank();
        let k = variant.k();
        if k < 1 || k as usize > n {
            return Err(Error::InvalidParameters(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        if let Some(p) = variant.prime() {
            if p < 3 || !is_prime(p) {
                return Err(Error::InvalidParameters(format!("modular variants need a prime p >= 3, got {p}")));
            }
            if lie != (LieContext::ModularH { n, p }) {
                return Err(Error::ContextMismatch(format!("{variant} needs H(2n;1) over F_{p}, got {lie}")));
            }
            if let Some(q) = variant.q() {
                if q >= p {
                    return Err(Error::InvalidParameters(format!("q must lie in F_{p}, got {q}")));
                }
            }
        } else if lie.is_modular() {
            return Err(Error::ContextMismatch(format!("{variant} needs a characteristic-zero algebra")));
        }
        if matches!(variant, Variant::JordanianSp2n { .. }) && n != 2 {
            return Err(Error::InvalidParameters("the sp4 quantization lives in rank 2".into()));
        }
        let pair = match variant.m() {
            Some(m) => TwistPair::horizontal(lie, k, m)?,
            None => TwistPair::vertical(lie, k)?,
        };
        let (alg, mode) = if variant.is_restricted() {
            let p = variant.prime().expect("restricted variants are modular");
            (UAlgebra::restricted(lie)?, TMode::PTruncated { p, q: variant.q().unwrap_or(0) })
        } else {
            if order == 0 {
                return Err(Error::InvalidParameters("truncation order must be positive".into()));
            }
            (UAlgebra::new(lie), TMode::Truncated(order))
        };
        let h = alg.from_lie(&pair.h)?;
        let e = alg.from_lie(&pair.e)?;
        Ok(QuantizationContext {
            variant,
            alg,
            pair,
            h,
            e,
            mode,
            sign: None,
            bbar: BbarForm::Proof,
            aform: AForm::Signed,
            caches: Arc::new(Caches::default()),
        })
    }

    /// A copy whose horizontal family uses sign `s` in place of `σ(m)`.
    pub fn with_sign(&self, s: i64) -> QuantizationContext {
        QuantizationContext { sign: Some(s), caches: Arc::new(Caches::default()), ..self.clone() }
    }

    /// A copy whose reduced horizontal family uses the given `B̄` form.
    pub fn with_bbar(&self, form: BbarForm) -> QuantizationContext {
        QuantizationContext { bbar: form, caches: Arc::new(Caches::default()), ..self.clone() }
    }

    /// A copy whose horizontal `A` coefficients use the given sign convention.
    pub fn with_aform(&self, form: AForm) -> QuantizationContext {
        QuantizationContext { aform: form, caches: Arc::new(Caches::default()), ..self.clone() }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn lie(&self) -> LieContext {
        self.alg.context()
    }

    pub fn rank(&self) -> usize {
        self.lie().rank()
    }

    pub fn algebra(&self) -> &UAlgebra {
        &self.alg
    }

    pub fn mode(&self) -> TMode {
        self.mode
    }

    pub fn pair(&self) -> &TwistPair {
        &self.pair
    }

    pub fn h(&self) -> &UElement {
        &self.h
    }

    pub fn e(&self) -> &UElement {
        &self.e
    }

    fn sign(&self) -> i64 {
        self.sign.unwrap_or_else(|| self.variant.m().map(|m| sigma(m).expect("m validated")).unwrap_or(1))
    }

    /// Largest `ℓ` in the coproduct sums.
    pub fn max_ell(&self) -> usize {
        let top = self.mode.max_degree();
        match self.variant.prime() {
            Some(p) => top.min(p as usize - 1),
            None => top,
        }
    }

    /// `α_k − α_{−k}`.
    pub fn weight(&self, alpha: &MultiIndex) -> i64 {
        let k = self.variant.k();
        alpha.get(k) - alpha.get(-k)
    }

    /// `(1 − et)^s`, cached.
    pub fn power(&self, s: i64) -> TPoly<UElement> {
        if let Some(v) = self.caches.powers.get(&s) {
            return v.clone();
        }
        let v = one_minus_et_power(&self.e, s, self.mode).expect("mode and algebra validated");
        self.caches.powers.insert(s, v.clone());
        v
    }

    /// `f = (1 − et)^{−1}`.
    pub fn f(&self) -> TPoly<UElement> {
        self.power(-1)
    }

    /// `d^{(ℓ)}` on a basis vector through the coefficient family.
    pub fn d_ell_basis(&self, alpha: &MultiIndex, ell: usize) -> Result<LieElement> {
        let lie = self.lie();
        if !lie.admits(alpha) {
            return Err(Error::Inadmissible(format!("{alpha} is not a basis index of {lie}")));
        }
        if ell == 0 {
            return lie.basis(*alpha);
        }
        let k = self.variant.k();
        let l = ell as i64;
        let mut terms: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        let mut push = |t: MultiIndex, c: Scalar| {
            if c.is_zero() || !lie.admits(&t) {
                return;
            }
            let slot = terms.entry(t).or_insert_with(|| lie.field().zero());
            *slot = &*slot + &c;
        };
        match (self.variant.m(), self.variant.prime()) {
            (None, None) => push(alpha.with(k, l), coeffs::coeff_a_vertical(alpha, k, l)),
            (None, Some(p)) => {
                if ell >= p as usize {
                    return Err(Error::InvalidParameters(format!("d^(l) needs l < p, got l={ell}")));
                }
                push(alpha.with(k, l), coeffs::coeff_abar_vertical(alpha, k, l, p)?)
            }
            (Some(m), None) => {
                for j in 0..=l {
                    let (a, _) = coeffs::coeff_ab_horizontal_form(alpha, k, m, j, self.sign(), self.aform);
                    let (_, b) = coeffs::coeff_ab_horizontal_form(alpha, k, m, l - j, self.sign(), self.aform);
                    push(coeffs::horizontal_target(alpha, k, m, j, l), &a * &b);
                }
            }
            (Some(m), Some(p)) => {
                if ell >= p as usize {
                    return Err(Error::InvalidParameters(format!("d^(l) needs l < p, got l={ell}")));
                }
                for j in 0..=l {
                    let (a, b) =
                        coeffs::coeff_abbar_horizontal_with(alpha, k, m, j, l, p, self.bbar, self.aform, self.sign())?;
                    push(coeffs::horizontal_target(alpha, k, m, j, l), &a * &b);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LieElement::from_terms(lie, terms)
    }

    /// `d^{(ℓ)}` extended linearly.
    pub fn d_ell(&self, x: &LieElement, ell: usize) -> Result<LieElement> {
        let mut out = self.lie().zero();
        for (alpha, c) in x.terms() {
            out = out.add(&self.d_ell_basis(alpha, ell)?.scale(c))?;
        }
        Ok(out)
    }

    /// `(1/ℓ!)(ad e)^ℓ x` by repeated brackets.
    pub fn d_ell_bracket(&self, x: &LieElement, ell: usize) -> Result<LieElement> {
        let inv = self.lie().field().from_bigint(&factorial(ell as u64)).inverse()?;
        Ok(self.pair.e.ad_pow(x, ell as u32)?.scale(&inv))
    }

    /// Coefficient `c` in `d^{(1)}(x) = c·e` for a toral `x`, or in
    /// `d^{(1)}(x^p) = c·e` when `pth_power` is set.
    pub fn special_coefficient(&self, alpha: &MultiIndex, pth_power: bool) -> Result<i64> {
        if self.variant.prime().is_none() {
            return Err(Error::InvalidParameters("special values are stated in characteristic p".into()));
        }
        let n = self.rank();
        let k = self.variant.k();
        let toral = |i: i32| *alpha == crate::lie::toral_index(n, i);
        let delta = |b: bool| if b { 1 } else { 0 };
        if !pth_power && !crate::modular::is_toral(alpha) {
            return Err(Error::InvalidParameters(format!("{alpha} is not toral")));
        }
        Ok(match (self.variant.m(), pth_power) {
            (None, _) => -delta(toral(k)),
            (Some(m), false) => {
                let i = (1..=n as i32).find(|&i| toral(i)).expect("checked toral");
                delta(i == -m) - delta(i == m) - delta(i == k)
            }
            (Some(m), true) => -(delta(toral(k)) - sigma(m)? * delta(toral(m.abs()))),
        })
    }

    /// `d^{(ℓ)}` of a toral vector (or of `x^p`) from the special closed values.
    pub fn d_ell_special(&self, alpha: &MultiIndex, ell: usize, pth_power: bool) -> Result<UElement> {
        let c = self.special_coefficient(alpha, pth_power)?;
        let x = self.alg.generator(*alpha)?;
        match ell {
            0 if pth_power => Ok(x.pow(self.variant.prime().expect("modular"))),
            0 => Ok(x),
            1 => Ok(self.e.scale(&self.alg.field().from_i64(c))),
            _ => Ok(self.alg.zero()),
        }
    }

    fn t_shift<V: crate::series::Ring>(&self, x: &TPoly<V>, d: usize) -> TPoly<V> {
        x.mul(&TPoly::monomial(self.mode, x.coeff(0).one_like(), d))
    }

    /// `Δ` of one basis vector from the closed formula.
    pub fn delta_basis(&self, alpha: &MultiIndex) -> Result<TPoly<TensorElement>> {
        if let Some(v) = self.caches.deltas.get(alpha) {
            return Ok(v.clone());
        }
        let x = self.alg.generator(*alpha)?;
        let mode = self.mode;
        let zero = self.alg.field().zero();
        let mut out = crate::twist::tensor_series(&TPoly::constant(mode, x), &self.power(self.weight(alpha)));
        for ell in 0..=self.max_ell() {
            let d = self.alg.from_lie(&self.d_ell_basis(alpha, ell)?)?;
            if d.is_zero() {
                continue;
            }
            let left = self.alg.factorial_poly(&self.h, &zero, ell as u32, FactorialKind::Rising);
            let right = self.power(-(ell as i64)).mul(&TPoly::constant(mode, d));
            let mut term = crate::twist::tensor_series(&TPoly::constant(mode, left), &right);
            if ell % 2 == 1 {
                term = term.neg();
            }
            out = out.add(&self.t_shift(&term, ell));
        }
        self.caches.deltas.insert(*alpha, out.clone());
        Ok(out)
    }

    /// `S` of one basis vector from the closed formula.
    pub fn antipode_basis(&self, alpha: &MultiIndex) -> Result<TPoly<UElement>> {
        if let Some(v) = self.caches.antipodes.get(alpha) {
            return Ok(v.clone());
        }
        let mode = self.mode;
        let one = self.alg.field().one();
        let mut sum = TPoly::zero(mode, &self.alg.one());
        for ell in 0..=self.max_ell() {
            let d = self.alg.from_lie(&self.d_ell_basis(alpha, ell)?)?;
            if d.is_zero() {
                continue;
            }
            let hl = self.alg.factorial_poly(&self.h, &one, ell as u32, FactorialKind::Rising);
            sum = sum.add(&TPoly::monomial(mode, d.mul(&hl), ell));
        }
        let out = self.power(-self.weight(alpha)).mul(&sum).neg();
        self.caches.antipodes.insert(*alpha, out.clone());
        Ok(out)
    }

    /// `Δ` on a Lie element.
    pub fn delta_closed(&self, x: &LieElement) -> Result<TPoly<TensorElement>> {
        let mut out = TPoly::zero(self.mode, &TensorElement::zero(&self.alg, 2));
        for (alpha, c) in x.terms() {
            out = out.add(&self.delta_basis(alpha)?.scale(c));
        }
        Ok(out)
    }

    /// `S` on a Lie element.
    pub fn antipode_closed(&self, x: &LieElement) -> Result<TPoly<UElement>> {
        let mut out = TPoly::zero(self.mode, &self.alg.one());
        for (alpha, c) in x.terms() {
            out = out.add(&self.antipode_basis(alpha)?.scale(c));
        }
        Ok(out)
    }

    /// `ε` on a Lie element: zero.
    pub fn counit_closed(&self, x: &LieElement) -> Result<Scalar> {
        if x.context() != self.lie() {
            return Err(Error::ContextMismatch(format!("{} vs {}", x.context(), self.lie())));
        }
        Ok(self.alg.field().zero())
    }

    /// `Δ` of a PBW monomial as an algebra map.
    pub fn delta_monomial(&self, m: &Monomial) -> Result<TPoly<TensorElement>> {
        let mut out = TPoly::constant(self.mode, TensorElement::one(&self.alg, 2));
        for (alpha, e) in m {
            out = out.mul(&self.delta_basis(alpha)?.pow(*e));
        }
        Ok(out)
    }

    /// `Δ` extended to all of `U` as an algebra map.
    pub fn delta_element(&self, u: &UElement) -> Result<TPoly<TensorElement>> {
        let mut out = TPoly::zero(self.mode, &TensorElement::zero(&self.alg, 2));
        for (m, c) in u.terms() {
            out = out.add(&self.delta_monomial(m)?.scale(c));
        }
        Ok(out)
    }

    /// `S` of a PBW monomial as an anti-algebra map.
    pub fn antipode_monomial(&self, m: &Monomial) -> Result<TPoly<UElement>> {
        let mut out = TPoly::constant(self.mode, self.alg.one());
        for (alpha, e) in m.iter().rev() {
            out = out.mul(&self.antipode_basis(alpha)?.pow(*e));
        }
        Ok(out)
    }

    pub fn antipode_element(&self, u: &UElement) -> Result<TPoly<UElement>> {
        let mut out = TPoly::zero(self.mode, &self.alg.one());
        for (m, c) in u.terms() {
            out = out.add(&self.antipode_monomial(m)?.scale(c));
        }
        Ok(out)
    }

    /// `Δ` applied to one tensor slot of a series.
    pub fn delta_slot(&self, x: &TPoly<TensorElement>, slot: usize) -> Result<TPoly<TensorElement>> {
        let arity = x.coeff(0).arity();
        let mut out = TPoly::zero(self.mode, &TensorElement::zero(&self.alg, arity + 1));
        for (d, coeff) in x.coeffs().iter().enumerate() {
            for (key, c) in coeff.terms() {
                let dm = self.delta_monomial(&key[slot])?;
                let lifted = dm.map(|t| {
                    let mut acc = TensorElement::zero(&self.alg, arity + 1);
                    for (k2, c2) in t.terms() {
                        let mut nk = key.clone();
                        nk.remove(slot);
                        nk.insert(slot, k2[1].clone());
                        nk.insert(slot, k2[0].clone());
                        acc.add_term(nk, c2 * c);
                    }
                    acc
                });
                out = out.add(&self.t_shift(&lifted, d));
            }
        }
        Ok(out)
    }

    /// `m(S ⊗ Id)` (slot 0) or `m(Id ⊗ S)` (slot 1) of an arity-2 series.
    pub fn antipode_contract(&self, x: &TPoly<TensorElement>, slot: usize) -> Result<TPoly<UElement>> {
        let mut out = TPoly::zero(self.mode, &self.alg.one());
        for (d, coeff) in x.coeffs().iter().enumerate() {
            for (key, c) in coeff.terms() {
                let s = self.antipode_monomial(&key[slot])?;
                let other = TPoly::constant(self.mode, self.alg.monomial(key[1 - slot].clone()).scale(c));
                let prod = if slot == 0 { s.mul(&other) } else { other.mul(&s) };
                out = out.add(&self.t_shift(&prod, d));
            }
        }
        Ok(out)
    }

    /// `(ε ⊗ Id)` (slot 0) or `(Id ⊗ ε)` (slot 1) of an arity-2 series.
    pub fn counit_contract(&self, x: &TPoly<TensorElement>, slot: usize) -> TPoly<UElement> {
        x.map(|c| c.counit_slot(slot).into_element())
    }

    /// `x ⊗ y` as a one-term tensor of monomials.
    pub fn pure(&self, l: Monomial, r: Monomial) -> TensorElement {
        let mut out = TensorElement::zero(&self.alg, 2);
        out.add_term(smallvec![l, r], self.alg.field().one());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(c: &[i64]) -> MultiIndex {
        MultiIndex::new(c)
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(QuantizationContext::new(Variant::Char0Horizontal { k: 1, m: 2 }, 1, 3).is_err());
        assert!(QuantizationContext::new(Variant::Char0Horizontal { k: 1, m: -1 }, 2, 3).is_err());
        assert!(QuantizationContext::new(Variant::ModularUtqVertical { k: 1, p: 4, q: 0 }, 1, 0).is_err());
        assert!(QuantizationContext::new(Variant::ModularUtqVertical { k: 1, p: 3, q: 3 }, 1, 0).is_err());
        assert!(QuantizationContext::new(Variant::ModularUtqVertical { k: 1, p: 3, q: 1 }, 1, 0).is_ok());
    }

    #[test]
    fn delta_of_e_char0() {
        let ctx = QuantizationContext::new(Variant::Char0Vertical { k: 1 }, 1, 3).unwrap();
        let e = ctx.e().clone();
        let mode = ctx.mode();
        let expect = crate::twist::tensor_series(&TPoly::constant(mode, e.clone()), &ctx.power(1))
            .add(&crate::twist::one_tensor(&TPoly::constant(mode, e.clone())));
        assert_eq!(ctx.delta_basis(&idx(&[1, 2])).unwrap(), expect);
    }

    #[test]
    fn radford_coproduct_of_h() {
        let ctx = QuantizationContext::new(Variant::ModularUtqVertical { k: 1, p: 3, q: 1 }, 1, 0).unwrap();
        let mode = ctx.mode();
        let h = ctx.h().clone();
        let expect = crate::twist::tensor_series(&TPoly::constant(mode, h.clone()), &ctx.f())
            .add(&crate::twist::one_tensor(&TPoly::constant(mode, h)));
        assert_eq!(ctx.delta_basis(&idx(&[1, 1])).unwrap(), expect);
    }

    #[test]
    fn special_values_match_family() {
        let ctx = QuantizationContext::new(Variant::ModularUtqVertical { k: 1, p: 3, q: 0 }, 1, 0).unwrap();
        let toral = idx(&[1, 1]);
        let fam = ctx.algebra().from_lie(&ctx.d_ell_basis(&toral, 1).unwrap()).unwrap();
        assert_eq!(fam, ctx.d_ell_special(&toral, 1, false).unwrap());
        assert_eq!(fam, ctx.e().neg());
    }
}
