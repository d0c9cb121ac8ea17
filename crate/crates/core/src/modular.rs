//! The restricted divided power algebra `O(2n;1)` and the Hamiltonian
//! algebra `H(2n;1)` built on it, plus reduction from characteristic zero.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::lie::{BasisTerms, LieContext, LieElement};
use crate::scalar::{reduce_mod_p, Field, Fp, Scalar};

/// `τ = (p−1, .., p−1)`.
pub fn tau(n: usize, p: u32) -> MultiIndex {
    MultiIndex::new(&vec![p as i64 - 1; 2 * n])
}

/// Basis index set of `H(2n;1)`: `0 ≤ α ≤ τ`, `α ∉ {0, τ}`.
pub fn in_basis(alpha: &MultiIndex, p: u32) -> bool {
    alpha.below(p as i64) && !alpha.is_zero() && *alpha != tau(alpha.rank(), p)
}

/// All basis indices of `H(2n;1)` in canonical order.
pub fn basis_indices(n: usize, p: u32) -> Vec<MultiIndex> {
    MultiIndex::all_below(n, p as i64 - 1)
        .into_iter()
        .filter(|a| in_basis(a, p))
        .collect()
}

/// `α = ε_i + ε_{-i}` for some `i`: the toral basis vectors.
pub fn is_toral(alpha: &MultiIndex) -> bool {
    let n = alpha.rank();
    (1..=n as i32).any(|i| *alpha == crate::lie::toral_index(n, i))
}

/// Value of the `p`-map on a basis vector: toral vectors are fixed,
/// every other basis vector maps to zero.
pub fn restriction(alpha: &MultiIndex) -> Option<MultiIndex> {
    is_toral(alpha).then_some(*alpha)
}

/// `C(γ; β) = Π_j C(γ_j, β_j) mod p`, all entries below `p`.
fn small_multi_binomial(gamma: &MultiIndex, beta: &MultiIndex, p: u32) -> Fp {
    let mut acc = Fp::new(1, p);
    for (&g, &b) in gamma.components().iter().zip(beta.components()) {
        acc = acc * Fp::new(small_binomial(g as u64, b as u64), p);
    }
    acc
}

fn small_binomial(a: u64, b: u64) -> i64 {
    if b > a {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..b.min(a - b) {
        acc = acc * (a - i) / (i + 1);
    }
    acc as i64
}

/// Bracket of two basis vectors of `H(2n;1)` through the divided-power
/// Poisson bracket. `τ`-indexed results are discarded.
pub fn bracket_basis(a: &MultiIndex, b: &MultiIndex, p: u32) -> BasisTerms {
    let n = a.rank();
    let mut out = BasisTerms::new();
    let bound = p as i64;
    for i in 1..=n as i32 {
        let gamma = (*a + *b).with(i, -1).with(-i, -1);
        if !gamma.below(bound) {
            continue;
        }
        let mut c = Fp::new(0, p);
        if a.get(-i) > 0 && b.get(i) > 0 {
            c = c + small_multi_binomial(&gamma, &a.with(-i, -1), p);
        }
        if a.get(i) > 0 && b.get(-i) > 0 {
            c = c - small_multi_binomial(&gamma, &a.with(i, -1), p);
        }
        if c.value() == 0 || gamma.is_zero() {
            continue;
        }
        if gamma == tau(n, p) {
            debug_assert!(false, "bracket of H(2n;1) basis vectors produced x^(τ)");
            continue;
        }
        out.push((gamma, Scalar::Prime(c)));
    }
    out
}

/// Element of the restricted divided power algebra `O(2n;1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedElement {
    n: usize,
    p: u32,
    terms: BTreeMap<MultiIndex, Fp>,
}

impl DividedElement {
    pub fn zero(n: usize, p: u32) -> DividedElement {
        DividedElement { n, p, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, p: u32) -> DividedElement {
        DividedElement::monomial(MultiIndex::zero(n), p)
    }

    /// `x^{(α)}`; zero when a component is negative or `≥ p`.
    pub fn monomial(alpha: MultiIndex, p: u32) -> DividedElement {
        let mut out = DividedElement::zero(alpha.rank(), p);
        out.add_term(alpha, Fp::new(1, p));
        out
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Fp> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Fp) {
        if c.value() == 0 || !alpha.below(self.p as i64) {
            return;
        }
        let slot = self.terms.entry(alpha).or_insert(Fp::new(0, self.p));
        *slot = *slot + c;
        if slot.value() == 0 {
            self.terms.remove(&alpha);
        }
    }

    fn check(&self, o: &DividedElement) -> Result<()> {
        if self.n != o.n {
            return Err(Error::RankMismatch(self.n, o.n));
        }
        if self.p != o.p {
            return Err(Error::FieldMismatch(Field::Prime(self.p), Field::Prime(o.p)));
        }
        Ok(())
    }

    pub fn add(&self, o: &DividedElement) -> Result<DividedElement> {
        self.check(o)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &DividedElement) -> Result<DividedElement> {
        self.add(&o.scale(Fp::new(-1, self.p)))
    }

    pub fn scale(&self, s: Fp) -> DividedElement {
        let mut out = DividedElement::zero(self.n, self.p);
        for (k, c) in &self.terms {
            out.add_term(*k, *c * s);
        }
        out
    }

    /// `x^{(α)} x^{(β)} = C(α+β; α) x^{(α+β)}`, extended bilinearly.
    pub fn multiply(&self, o: &DividedElement) -> Result<DividedElement> {
        self.check(o)?;
        let mut out = DividedElement::zero(self.n, self.p);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let s = *a + *b;
                if !s.below(self.p as i64) {
                    continue;
                }
                out.add_term(s, *ca * *cb * small_multi_binomial(&s, a, self.p));
            }
        }
        Ok(out)
    }

    /// Partial derivative `D_j x^{(α)} = x^{(α−ε_j)}`.
    pub fn derivative(&self, j: i32) -> DividedElement {
        let mut out = DividedElement::zero(self.n, self.p);
        for (a, c) in &self.terms {
            if a.get(j) > 0 {
                out.add_term(a.with(j, -1), *c);
            }
        }
        out
    }

    /// `{u, v} = Σ_i (D_{-i}u · D_i v − D_i u · D_{-i}v)`.
    pub fn poisson(&self, o: &DividedElement) -> Result<DividedElement> {
        self.check(o)?;
        let mut out = DividedElement::zero(self.n, self.p);
        for i in 1..=self.n as i32 {
            let left = self.derivative(-i).multiply(&o.derivative(i))?;
            let right = self.derivative(i).multiply(&o.derivative(-i))?;
            out = out.add(&left)?.sub(&right)?;
        }
        Ok(out)
    }
}

impl fmt::Display for DividedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (j, (k, c)) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*x{}", c.value(), k)?;
        }
        Ok(())
    }
}

pub fn divided_multiply(a: &DividedElement, b: &DividedElement) -> Result<DividedElement> {
    a.multiply(b)
}

pub fn poisson_divided(u: &DividedElement, v: &DividedElement) -> Result<DividedElement> {
    u.poisson(v)
}

/// The generating function `Σ c_α x^{(α)}` of a modular Lie element.
pub fn generating_function(x: &LieElement) -> Result<DividedElement> {
    let LieContext::ModularH { n, p } = x.context() else {
        return Err(Error::ContextMismatch(format!("{} is not modular", x.context())));
    };
    let mut out = DividedElement::zero(n, p);
    for (k, c) in x.terms() {
        out.add_term(*k, c.as_fp().expect("modular coefficient"));
    }
    Ok(out)
}

/// `D_H(u)` as an element of `H(2n;1)`; constant and `τ` parts are dropped.
pub fn hamiltonian(u: &DividedElement) -> LieElement {
    let ctx = LieContext::ModularH { n: u.n, p: u.p };
    let mut terms = vec![];
    for (k, c) in &u.terms {
        if in_basis(k, u.p) {
            terms.push((*k, Scalar::Prime(*c)));
        }
    }
    LieElement::from_terms(ctx, terms).expect("indices filtered to the basis")
}

/// `[D_H u, D_H v] = D_H {u, v}`.
pub fn modular_bracket(a: &LieElement, b: &LieElement) -> Result<LieElement> {
    if a.context() != b.context() {
        return Err(Error::ContextMismatch(format!("{} vs {}", a.context(), b.context())));
    }
    let u = generating_function(a)?;
    let v = generating_function(b)?;
    Ok(hamiltonian(&u.poisson(&v)?))
}

/// `D_H(x^α) ↦ α!·D_H(x^{(α)})` mod `p`; indices with a component `≥ p`
/// (the ideal `J_1`) and `α = τ` go to zero.
pub fn reduce_to_modular(x: &LieElement, p: u32) -> Result<LieElement> {
    let LieContext::HPlus { n } = x.context() else {
        return Err(Error::ContextMismatch(format!(
            "reduction needs an element of H+, got {}",
            x.context()
        )));
    };
    let field = Field::prime(p)?;
    let ctx = LieContext::ModularH { n, p };
    let mut terms = vec![];
    for (alpha, c) in x.terms() {
        if !in_basis(alpha, p) {
            continue;
        }
        let fact = Scalar::Rational(num_rational::BigRational::from_integer(alpha.factorial()));
        let r = reduce_mod_p(&(c * &fact), p)?;
        debug_assert_eq!(r.field(), field);
        terms.push((*alpha, r));
    }
    LieElement::from_terms(ctx, terms)
}

/// `dim H(2n;1)` by enumeration.
pub fn dimension(n: usize, p: u32) -> usize {
    basis_indices(n, p).len()
}

/// `p^{2n} − 2`.
pub fn dimension_formula(n: usize, p: u32) -> BigInt {
    BigInt::from(p).pow(2 * n as u32) - 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(c: &[i64]) -> MultiIndex {
        MultiIndex::new(c)
    }

    #[test]
    fn divided_products() {
        let e1 = DividedElement::monomial(idx(&[0, 1]), 3);
        let sq = e1.multiply(&e1).unwrap();
        assert_eq!(sq, DividedElement::monomial(idx(&[0, 2]), 3).scale(Fp::new(2, 3)));
        let x2 = DividedElement::monomial(idx(&[0, 2]), 3);
        assert!(x2.multiply(&x2).unwrap().is_zero());
        let one = DividedElement::one(1, 3);
        assert_eq!(one.multiply(&x2).unwrap(), x2);
    }

    #[test]
    fn poisson_examples() {
        let h = DividedElement::monomial(idx(&[1, 1]), 3);
        let e = DividedElement::monomial(idx(&[1, 2]), 3);
        assert_eq!(h.poisson(&e).unwrap(), e);
        assert!(e.poisson(&e).unwrap().is_zero());
        let a = DividedElement::monomial(idx(&[0, 2]), 3);
        let b = DividedElement::monomial(idx(&[2, 0]), 3);
        assert_eq!(a.poisson(&b).unwrap(), h.scale(Fp::new(2, 3)));
    }

    #[test]
    fn fast_bracket_matches_poisson_on_all_pairs() {
        for (n, p) in [(1usize, 3u32), (1, 5), (2, 3)] {
            let ctx = LieContext::ModularH { n, p };
            let basis = basis_indices(n, p);
            for a in &basis {
                for b in &basis {
                    let x = ctx.basis(*a).unwrap();
                    let y = ctx.basis(*b).unwrap();
                    assert_eq!(x.bracket(&y).unwrap(), modular_bracket(&x, &y).unwrap(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn dimensions() {
        for (n, p) in [(1usize, 3u32), (1, 5), (2, 3)] {
            assert_eq!(BigInt::from(dimension(n, p)), dimension_formula(n, p));
        }
        assert_eq!(dimension(1, 3), 7);
    }

    #[test]
    fn reduction_examples() {
        let ctx = LieContext::HPlus { n: 1 };
        let e = ctx.basis(idx(&[1, 2])).unwrap();
        let r = reduce_to_modular(&e, 3).unwrap();
        let m = LieContext::ModularH { n: 1, p: 3 };
        assert_eq!(r, m.basis(idx(&[1, 2])).unwrap().scale(&Field::Prime(3).from_i64(2)));
        assert!(reduce_to_modular(&ctx.basis(idx(&[0, 3])).unwrap(), 3).unwrap().is_zero());
        let h = ctx.basis(idx(&[1, 1])).unwrap();
        assert_eq!(reduce_to_modular(&h, 3).unwrap(), m.basis(idx(&[1, 1])).unwrap());
        let bad = ctx.basis(idx(&[1, 1])).unwrap().scale(&Scalar::rational(1, 3));
        assert!(matches!(reduce_to_modular(&bad, 3), Err(Error::NotReducible { .. })));
    }

    #[test]
    fn restriction_table() {
        assert_eq!(restriction(&idx(&[1, 0, 1, 0])), Some(idx(&[1, 0, 1, 0])));
        assert_eq!(restriction(&idx(&[0, 1, 0, 1])), Some(idx(&[0, 1, 0, 1])));
        assert_eq!(restriction(&idx(&[1, 0, 0, 1])), None);
        assert_eq!(restriction(&idx(&[0, 2])), None);
    }
}
