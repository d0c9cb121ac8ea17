//! PBW-normal universal enveloping algebras `U(L)`, the restricted quotient
//! `u(H(2n;1))`, tensor powers, and the standard Hopf structure.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::lie::{basis_name, write_term, LieContext, LieElement};
use crate::modular;
use crate::scalar::{binomial, Field, Scalar};

/// Ordered product `b_1^{e_1} ⋯ b_k^{e_k}` with strictly increasing keys.
pub type Monomial = SmallVec<[(MultiIndex, u32); 4]>;
pub type TensorKey = SmallVec<[Monomial; 3]>;

type Expansion = Arc<Vec<(Monomial, Scalar)>>;

struct Inner {
    ctx: LieContext,
    restricted: bool,
    swaps: DashMap<(MultiIndex, u32, MultiIndex, u32), Expansion>,
    products: DashMap<(Monomial, Monomial), Expansion>,
}

/// Handle to an enveloping algebra. Cloning shares the rewrite caches.
#[derive(Clone)]
pub struct UAlgebra {
    inner: Arc<Inner>,
}

impl PartialEq for UAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.inner.ctx == o.inner.ctx && self.inner.restricted == o.inner.restricted
    }
}

impl Eq for UAlgebra {}

impl fmt::Debug for UAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.restricted {
            write!(f, "u({})", self.inner.ctx)
        } else {
            write!(f, "U({})", self.inner.ctx)
        }
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl UAlgebra {
    pub fn new(ctx: LieContext) -> UAlgebra {
        UAlgebra::build(ctx, false)
    }

    /// `u(H(2n;1)) = U/I`; only for the modular context.
    pub fn restricted(ctx: LieContext) -> Result<UAlgebra> {
        if !ctx.is_modular() {
            return Err(Error::ContextMismatch(format!("{ctx} has no restricted structure")));
        }
        Ok(UAlgebra::build(ctx, true))
    }

    fn build(ctx: LieContext, restricted: bool) -> UAlgebra {
        UAlgebra {
            inner: Arc::new(Inner {
                ctx,
                restricted,
                swaps: DashMap::new(),
                products: DashMap::new(),
            }),
        }
    }

    pub fn context(&self) -> LieContext {
        self.inner.ctx
    }

    pub fn is_restricted(&self) -> bool {
        self.inner.restricted
    }

    pub fn field(&self) -> Field {
        self.inner.ctx.field()
    }

    fn prime(&self) -> u32 {
        self.field().characteristic()
    }

    /// Number of cached swaps and products.
    pub fn cache_sizes(&self) -> (usize, usize) {
        (self.inner.swaps.len(), self.inner.products.len())
    }

    pub fn zero(&self) -> UElement {
        UElement { alg: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> UElement {
        self.scalar(self.field().one())
    }

    pub fn scalar(&self, c: Scalar) -> UElement {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, Monomial::new(), c);
        UElement { alg: self.clone(), terms }
    }

    /// A single basis vector as a degree-one element.
    pub fn generator(&self, alpha: MultiIndex) -> Result<UElement> {
        if !self.inner.ctx.admits(&alpha) {
            return Err(Error::Inadmissible(format!("{alpha} is not a basis index of {}", self.inner.ctx)));
        }
        Ok(self.monomial(smallvec![(alpha, 1)]))
    }

    pub fn monomial(&self, m: Monomial) -> UElement {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, m, self.field().one());
        UElement { alg: self.clone(), terms }
    }

    pub fn from_lie(&self, x: &LieElement) -> Result<UElement> {
        if x.context() != self.inner.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", x.context(), self.inner.ctx)));
        }
        let mut terms = BTreeMap::new();
        for (k, c) in x.terms() {
            accumulate(&mut terms, smallvec![(*k, 1)], c.clone());
        }
        Ok(UElement { alg: self.clone(), terms })
    }

    /// A monomial is valid when keys strictly increase, exponents are
    /// positive, and (restricted) every exponent is below `p`.
    pub fn is_normal(&self, m: &[(MultiIndex, u32)]) -> bool {
        let bound = if self.inner.restricted { self.prime() } else { u32::MAX };
        m.windows(2).all(|w| w[0].0 < w[1].0)
            && m.iter().all(|(k, e)| *e >= 1 && *e < bound && self.inner.ctx.admits(k))
    }

    /// PBW normal form of the product of two normal monomials.
    pub fn mono_mul(&self, p: &[(MultiIndex, u32)], q: &[(MultiIndex, u32)]) -> Expansion {
        let one = self.field().one();
        if p.is_empty() {
            return Arc::new(vec![(Monomial::from(q), one)]);
        }
        if q.is_empty() {
            return Arc::new(vec![(Monomial::from(p), one)]);
        }
        let (x, a) = p[p.len() - 1];
        let (y, b) = q[0];
        if x < y {
            let mut m = Monomial::from(p);
            m.extend_from_slice(q);
            return Arc::new(vec![(m, one)]);
        }
        if x == y {
            let mut c = a + b;
            if self.inner.restricted {
                let pp = self.prime();
                if c >= pp {
                    if !modular::is_toral(&x) {
                        return Arc::new(vec![]);
                    }
                    c = c - pp + 1;
                }
            }
            let mut m = Monomial::from(&p[..p.len() - 1]);
            m.push((x, c));
            m.extend_from_slice(&q[1..]);
            return Arc::new(vec![(m, one)]);
        }
        let key = (Monomial::from(p), Monomial::from(q));
        if let Some(v) = self.inner.products.get(&key) {
            return v.clone();
        }
        let swapped = self.swap(x, a, y, b);
        let head = &p[..p.len() - 1];
        let tail = &q[1..];
        let mut acc = BTreeMap::new();
        for (s, cs) in swapped.iter() {
            for (l, cl) in self.mono_mul(head, s).iter() {
                let c = cs * cl;
                for (m, cm) in self.mono_mul(l, tail).iter() {
                    accumulate(&mut acc, m.clone(), &c * cm);
                }
            }
        }
        let out: Expansion = Arc::new(acc.into_iter().collect());
        self.inner.products.insert(key, out.clone());
        out
    }

    /// `x^a y^b` in normal form, for keys `x > y`.
    fn swap(&self, x: MultiIndex, a: u32, y: MultiIndex, b: u32) -> Expansion {
        let key = (x, a, y, b);
        if let Some(v) = self.inner.swaps.get(&key) {
            return v.clone();
        }
        let mut acc = BTreeMap::new();
        if b > 1 {
            let first = self.swap(x, a, y, 1);
            for (s, cs) in first.iter() {
                for (m, cm) in self.mono_mul(s, &[(y, b - 1)]).iter() {
                    accumulate(&mut acc, m.clone(), cs * cm);
                }
            }
        } else {
            // x^a y = Σ_j C(a,j) (ad x)^j(y) x^{a-j}
            let ctx = self.inner.ctx;
            let field = self.field();
            let xe = ctx.basis(x).expect("admissible key");
            let mut cur = ctx.basis(y).expect("admissible key");
            for j in 0..=a {
                if cur.is_zero() {
                    break;
                }
                let binom = field.from_bigint(&binomial(a as u64, j as u64));
                let right: Monomial = if a > j { smallvec![(x, a - j)] } else { Monomial::new() };
                for (z, cz) in cur.terms() {
                    let c = &binom * cz;
                    for (m, cm) in self.mono_mul(&[(*z, 1)], &right).iter() {
                        accumulate(&mut acc, m.clone(), &c * cm);
                    }
                }
                cur = xe.bracket(&cur).expect("same context");
            }
        }
        let out: Expansion = Arc::new(acc.into_iter().collect());
        self.inner.swaps.insert(key, out.clone());
        out
    }

    /// Basis keys of a finite-dimensional context, in PBW order.
    pub fn lie_basis(&self) -> Option<Vec<MultiIndex>> {
        match self.inner.ctx {
            LieContext::ModularH { n, p } => Some(modular::basis_indices(n, p)),
            _ => None,
        }
    }

    /// Enumerates the restricted PBW basis (exponents `0..p` on every
    /// generator) and returns its size.
    pub fn restricted_basis_count(&self) -> Result<usize> {
        if !self.inner.restricted {
            return Err(Error::ContextMismatch("basis count needs the restricted algebra".into()));
        }
        let keys = self.lie_basis().expect("modular");
        let p = self.prime();
        let mut exps = vec![0u32; keys.len()];
        let mut count = 0usize;
        loop {
            let m: Monomial =
                keys.iter().zip(&exps).filter(|(_, e)| **e > 0).map(|(k, e)| (*k, *e)).collect();
            if self.is_normal(&m) {
                count += 1;
            }
            let mut pos = 0;
            loop {
                if pos == exps.len() {
                    return Ok(count);
                }
                if exps[pos] + 1 < p {
                    exps[pos] += 1;
                    break;
                }
                exps[pos] = 0;
                pos += 1;
            }
        }
    }

    /// `h_a^{⟨m⟩}` or `h_a^{[m]}`.
    pub fn factorial_poly(&self, h: &UElement, a: &Scalar, m: u32, kind: FactorialKind) -> UElement {
        let field = self.field();
        let mut out = self.one();
        for i in 0..m {
            let shift = match kind {
                FactorialKind::Rising => a + &field.from_i64(i as i64),
                FactorialKind::Falling => a - &field.from_i64(i as i64),
            };
            out = out.mul(&h.add(&self.scalar(shift)));
        }
        out
    }

    /// `Δ_0` on a monomial: `Σ_{j ≤ a} C(a; j) x^j ⊗ x^{a-j}`.
    fn delta0_monomial(&self, m: &Monomial) -> Vec<(Monomial, Monomial, Scalar)> {
        let field = self.field();
        let mut out = vec![(Monomial::new(), Monomial::new(), field.one())];
        for (k, e) in m {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for (l, r, c) in &out {
                for j in 0..=*e {
                    let bc = &field.from_bigint(&binomial(*e as u64, j as u64)) * c;
                    if bc.is_zero() {
                        continue;
                    }
                    let mut l2 = l.clone();
                    let mut r2 = r.clone();
                    if j > 0 {
                        l2.push((*k, j));
                    }
                    if *e > j {
                        r2.push((*k, e - j));
                    }
                    next.push((l2, r2, bc));
                }
            }
            out = next;
        }
        out
    }

    pub fn delta0(&self, x: &UElement) -> TensorElement {
        let mut out = TensorElement::zero(self, 2);
        for (m, c) in &x.terms {
            for (l, r, bc) in self.delta0_monomial(m) {
                out.add_term(smallvec![l, r], c * &bc);
            }
        }
        out
    }

    /// `S_0(x_1^{a_1} ⋯ x_k^{a_k}) = (-1)^{Σa} x_k^{a_k} ⋯ x_1^{a_1}`.
    pub fn s0_monomial(&self, m: &Monomial) -> UElement {
        let field = self.field();
        let deg: u32 = m.iter().map(|(_, e)| e).sum();
        let mut out = self.scalar(if deg.is_multiple_of(2) { field.one() } else { -field.one() });
        for (k, e) in m.iter().rev() {
            out = out.mul(&self.monomial(smallvec![(*k, *e)]));
        }
        out
    }

    pub fn s0(&self, x: &UElement) -> UElement {
        let mut out = self.zero();
        for (m, c) in &x.terms {
            out = out.add(&self.s0_monomial(m).scale(c));
        }
        out
    }

    pub fn epsilon0(&self, x: &UElement) -> Scalar {
        x.terms.get(&Monomial::new()).cloned().unwrap_or_else(|| self.field().zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorialKind {
    /// `(x+a)(x+a+1)⋯(x+a+m-1)`
    Rising,
    /// `(x+a)(x+a-1)⋯(x+a-m+1)`
    Falling,
}

/// Element of `U(L)` or `u(L)` as a sparse table of PBW monomials.
#[derive(Clone)]
pub struct UElement {
    alg: UAlgebra,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for UElement {
    fn eq(&self, o: &Self) -> bool {
        self.alg == o.alg && self.terms == o.terms
    }
}

impl Eq for UElement {}

impl UElement {
    pub fn algebra(&self) -> &UAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.alg.field().zero())
    }

    /// Largest total exponent of a monomial (`-1` for zero).
    pub fn filtration_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|(_, e)| *e as i64).sum::<i64>())
            .max()
            .unwrap_or(-1)
    }

    fn check(&self, o: &UElement) -> Result<()> {
        if self.alg != o.alg {
            return Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.alg, o.alg)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &UElement) -> Result<UElement> {
        self.check(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            accumulate(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, o: &UElement) -> UElement {
        self.try_add(o).expect("enveloping algebra mismatch")
    }

    pub fn sub(&self, o: &UElement) -> UElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> UElement {
        self.scale(&-self.alg.field().one())
    }

    pub fn scale(&self, s: &Scalar) -> UElement {
        let mut out = self.alg.zero();
        for (m, c) in &self.terms {
            accumulate(&mut out.terms, m.clone(), c * s);
        }
        out
    }

    pub fn try_mul(&self, o: &UElement) -> Result<UElement> {
        self.check(o)?;
        let mut out = self.alg.zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let c = ca * cb;
                for (m, cm) in self.alg.mono_mul(a, b).iter() {
                    accumulate(&mut out.terms, m.clone(), &c * cm);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &UElement) -> UElement {
        self.try_mul(o).expect("enveloping algebra mismatch")
    }

    pub fn pow(&self, k: u32) -> UElement {
        let mut out = self.alg.one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, o: &UElement) -> UElement {
        self.mul(o).sub(&o.mul(self))
    }

    /// `(1/ℓ!)(ad e)^ℓ (self)`.
    pub fn divided_ad(&self, e: &UElement, ell: u32) -> Result<UElement> {
        let mut cur = self.clone();
        for _ in 0..ell {
            cur = e.commutator(&cur);
        }
        let fact = self.alg.field().from_bigint(&crate::scalar::factorial(ell as u64));
        Ok(cur.scale(&fact.inverse()?))
    }
}

fn write_monomial(f: &mut impl fmt::Write, ctx: &LieContext, m: &Monomial) -> fmt::Result {
    if m.is_empty() {
        return write!(f, "1");
    }
    for (j, (k, e)) in m.iter().enumerate() {
        if j > 0 {
            write!(f, "*")?;
        }
        write!(f, "{}", basis_name(ctx, k))?;
        if *e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

pub fn monomial_name(ctx: &LieContext, m: &Monomial) -> String {
    let mut s = String::new();
    write_monomial(&mut s, ctx, m).expect("string write");
    s
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ctx = self.alg.context();
        for (j, (m, c)) in self.terms.iter().enumerate() {
            let body = if m.is_empty() { String::new() } else { monomial_name(&ctx, m) };
            write_term(f, j == 0, c, &body)?;
        }
        Ok(())
    }
}

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of `U^{⊗k}`.
#[derive(Clone)]
pub struct TensorElement {
    alg: UAlgebra,
    arity: usize,
    terms: BTreeMap<TensorKey, Scalar>,
}

impl PartialEq for TensorElement {
    fn eq(&self, o: &Self) -> bool {
        self.alg == o.alg && self.arity == o.arity && self.terms == o.terms
    }
}

impl Eq for TensorElement {}

impl TensorElement {
    pub fn zero(alg: &UAlgebra, arity: usize) -> TensorElement {
        TensorElement { alg: alg.clone(), arity, terms: BTreeMap::new() }
    }

    pub fn one(alg: &UAlgebra, arity: usize) -> TensorElement {
        let mut out = TensorElement::zero(alg, arity);
        out.add_term(smallvec![Monomial::new(); arity], alg.field().one());
        out
    }

    /// `x_1 ⊗ ⋯ ⊗ x_k`.
    pub fn pure(factors: &[&UElement]) -> TensorElement {
        let alg = factors[0].alg.clone();
        let mut keys: Vec<(TensorKey, Scalar)> = vec![(TensorKey::new(), alg.field().one())];
        for x in factors {
            assert!(x.alg == alg, "tensor factors from different algebras");
            let mut next = vec![];
            for (k, c) in &keys {
                for (m, cm) in &x.terms {
                    let mut k2 = k.clone();
                    k2.push(m.clone());
                    next.push((k2, c * cm));
                }
            }
            keys = next;
        }
        let mut out = TensorElement::zero(&alg, factors.len());
        for (k, c) in keys {
            out.add_term(k, c);
        }
        out
    }

    pub fn algebra(&self) -> &UAlgebra {
        &self.alg
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<TensorKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: TensorKey, c: Scalar) {
        debug_assert_eq!(k.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, o: &TensorElement) -> Result<()> {
        if self.alg != o.alg || self.arity != o.arity {
            return Err(Error::ContextMismatch(format!(
                "{:?}^{} vs {:?}^{}",
                self.alg, self.arity, o.alg, o.arity
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &TensorElement) -> Result<TensorElement> {
        self.check(o)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        self.try_add(o).expect("tensor mismatch")
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(&-self.alg.field().one())
    }

    pub fn scale(&self, s: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(&self.alg, self.arity);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn try_mul(&self, o: &TensorElement) -> Result<TensorElement> {
        self.check(o)?;
        let mut out = TensorElement::zero(&self.alg, self.arity);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut partial: Vec<(TensorKey, Scalar)> = vec![(TensorKey::new(), ca * cb)];
                for slot in 0..self.arity {
                    let prod = self.alg.mono_mul(&a[slot], &b[slot]);
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (k, c) in &partial {
                        for (m, cm) in prod.iter() {
                            let mut k2 = k.clone();
                            k2.push(m.clone());
                            next.push((k2, c * cm));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_term(k, c);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &TensorElement) -> TensorElement {
        self.try_mul(o).expect("tensor mismatch")
    }

    /// Applies a linear map `U → U^{⊗r}` to one slot, yielding arity `k + r − 1`.
    pub fn map_slot(
        &self,
        slot: usize,
        out_arity: usize,
        f: impl Fn(&Monomial) -> Vec<(TensorKey, Scalar)>,
    ) -> TensorElement {
        let mut out = TensorElement::zero(&self.alg, out_arity);
        let mut cache: BTreeMap<Monomial, Vec<(TensorKey, Scalar)>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let img = cache.entry(k[slot].clone()).or_insert_with(|| f(&k[slot]));
            for (piece, cp) in img.iter() {
                let mut k2 = TensorKey::new();
                k2.extend(k[..slot].iter().cloned());
                k2.extend(piece.iter().cloned());
                k2.extend(k[slot + 1..].iter().cloned());
                out.add_term(k2, c * cp);
            }
        }
        out
    }

    /// `Δ_0` applied to one slot.
    pub fn delta0_slot(&self, slot: usize) -> TensorElement {
        let alg = self.alg.clone();
        self.map_slot(slot, self.arity + 1, |m| {
            alg.delta0_monomial(m).into_iter().map(|(l, r, c)| (smallvec![l, r], c)).collect()
        })
    }

    /// Any `U → U` linear map applied to one slot.
    pub fn apply_slot(&self, slot: usize, f: impl Fn(&Monomial) -> UElement) -> TensorElement {
        self.map_slot(slot, self.arity, |m| {
            f(m).terms.into_iter().map(|(mm, c)| (smallvec![mm], c)).collect()
        })
    }

    /// `ε_0` applied to one slot.
    pub fn counit_slot(&self, slot: usize) -> TensorElement {
        let one = self.alg.field().one();
        self.map_slot(slot, self.arity - 1, |m| {
            if m.is_empty() {
                vec![(TensorKey::new(), one.clone())]
            } else {
                vec![]
            }
        })
    }

    /// Multiplication `m: U ⊗ U → U`.
    pub fn multiply_out(&self) -> UElement {
        assert_eq!(self.arity, 2, "multiply_out needs a two-fold tensor");
        let mut out = self.alg.zero();
        for (k, c) in &self.terms {
            for (m, cm) in self.alg.mono_mul(&k[0], &k[1]).iter() {
                accumulate(&mut out.terms, m.clone(), c * cm);
            }
        }
        out
    }

    /// Identifies a one-fold tensor with an element of `U`.
    pub fn into_element(self) -> UElement {
        assert_eq!(self.arity, 1);
        let mut out = self.alg.zero();
        for (k, c) in self.terms {
            accumulate(&mut out.terms, k[0].clone(), c);
        }
        out
    }

    /// Swap of the two factors of a two-fold tensor.
    pub fn flip(&self) -> TensorElement {
        assert_eq!(self.arity, 2);
        let mut out = TensorElement::zero(&self.alg, 2);
        for (k, c) in &self.terms {
            out.add_term(smallvec![k[1].clone(), k[0].clone()], c.clone());
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ctx = self.alg.context();
        for (j, (k, c)) in self.terms.iter().enumerate() {
            let body = k.iter().map(|m| monomial_name(&ctx, m)).collect::<Vec<_>>().join("⊗");
            write_term(f, j == 0, c, &body)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(c: &[i64]) -> MultiIndex {
        MultiIndex::new(c)
    }

    fn he(alg: &UAlgebra) -> (UElement, UElement) {
        (alg.generator(idx(&[1, 1])).unwrap(), alg.generator(idx(&[1, 2])).unwrap())
    }

    #[test]
    fn one_step_rewrite() {
        let alg = UAlgebra::new(LieContext::HPlus { n: 1 });
        let (h, e) = he(&alg);
        assert_eq!(e.mul(&h), h.mul(&e).sub(&e));
        assert_eq!(alg.one().mul(&h), h);
    }

    #[test]
    fn restricted_toral_cube() {
        let alg = UAlgebra::restricted(LieContext::ModularH { n: 1, p: 3 }).unwrap();
        let h = alg.generator(idx(&[1, 1])).unwrap();
        assert_eq!(h.pow(3), h);
        let x = alg.generator(idx(&[0, 2])).unwrap();
        assert!(x.pow(3).is_zero());
    }

    #[test]
    fn falling_factorial() {
        let alg = UAlgebra::new(LieContext::HPlus { n: 1 });
        let (h, _) = he(&alg);
        let f = alg.field();
        let h2 = alg.factorial_poly(&h, &f.zero(), 2, FactorialKind::Falling);
        assert_eq!(h2, h.mul(&h).sub(&h));
        assert_eq!(alg.factorial_poly(&h, &f.zero(), 0, FactorialKind::Rising), alg.one());
        let r = alg.factorial_poly(&h, &f.one(), 1, FactorialKind::Rising);
        assert_eq!(r, h.add(&alg.one()));
    }

    #[test]
    fn delta0_of_falling_factorial() {
        let alg = UAlgebra::new(LieContext::HPlus { n: 1 });
        let (h, _) = he(&alg);
        let f = alg.field();
        let hf = |m| alg.factorial_poly(&h, &f.zero(), m, FactorialKind::Falling);
        let lhs = alg.delta0(&hf(2));
        let rhs = TensorElement::pure(&[&hf(2), &alg.one()])
            .add(&TensorElement::pure(&[&h, &h]).scale(&f.from_i64(2)))
            .add(&TensorElement::pure(&[&alg.one(), &hf(2)]));
        assert_eq!(lhs, rhs);
        assert_eq!(alg.delta0(&alg.one()), TensorElement::one(&alg, 2));
    }

    #[test]
    fn antipode_of_rising_factorial() {
        let alg = UAlgebra::new(LieContext::HPlus { n: 1 });
        let (h, _) = he(&alg);
        let f = alg.field();
        for a in [-1i64, 0, 1] {
            for r in 0..=4u32 {
                let lhs = alg.s0(&alg.factorial_poly(&h, &f.from_i64(a), r, FactorialKind::Rising));
                let rhs = alg
                    .factorial_poly(&h, &f.from_i64(-a), r, FactorialKind::Falling)
                    .scale(&f.from_i64(if r % 2 == 0 { 1 } else { -1 }));
                assert_eq!(lhs, rhs, "a={a} r={r}");
            }
        }
    }

    #[test]
    fn transport_through_powers_of_e() {
        let alg = UAlgebra::new(LieContext::HPlus { n: 1 });
        let (h, e) = he(&alg);
        let f = alg.field();
        for s in 0..=4u32 {
            for m in 0..=4u32 {
                for kind in [FactorialKind::Rising, FactorialKind::Falling] {
                    let a = f.from_i64(1);
                    let lhs = e.pow(s).mul(&alg.factorial_poly(&h, &a, m, kind));
                    let shifted = &a - &f.from_i64(s as i64);
                    let rhs = alg.factorial_poly(&h, &shifted, m, kind).mul(&e.pow(s));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn basis_count_n1_p3() {
        let alg = UAlgebra::restricted(LieContext::ModularH { n: 1, p: 3 }).unwrap();
        assert_eq!(alg.restricted_basis_count().unwrap(), 2187);
    }

    #[test]
    fn display() {
        let alg = UAlgebra::new(LieContext::HPlus { n: 1 });
        let (h, e) = he(&alg);
        assert_eq!(e.mul(&h).to_string(), "DH[1;1]*DH[1;2] - DH[1;2]");
        assert_eq!(TensorElement::pure(&[&h, &e]).to_string(), "DH[1;1]⊗DH[1;2]");
    }
}
