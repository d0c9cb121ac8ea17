//! The Lie algebras spanned by Hamiltonian basis vectors `D_H(x^α)`.
//!
//! One [`LieContext`] covers the three algebras in use: the generalized
//! algebra on Laurent monomials, its positive part, and the modular
//! algebra `H(2n;1)` on divided powers (bracket delegated to [`crate::modular`]).

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::modular;
use crate::scalar::{Field, Scalar};

pub type BasisTerms = SmallVec<[(MultiIndex, Scalar); 4]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieContext {
    /// Basis `D_H(x^α)`, `α ∈ Z^{2n} ∖ {0}`.
    FullH { n: usize },
    /// Basis `D_H(x^α)`, `α ∈ N^{2n} ∖ {0}`.
    HPlus { n: usize },
    /// Basis `D_H(x^{(α)})`, `0 ≤ α ≤ τ`, `α ∉ {0, τ}`, over `F_p`.
    ModularH { n: usize, p: u32 },
}

impl LieContext {
    pub fn rank(&self) -> usize {
        match *self {
            LieContext::FullH { n } | LieContext::HPlus { n } | LieContext::ModularH { n, .. } => n,
        }
    }

    pub fn field(&self) -> Field {
        match *self {
            LieContext::ModularH { p, .. } => Field::Prime(p),
            _ => Field::Rational,
        }
    }

    pub fn is_modular(&self) -> bool {
        matches!(self, LieContext::ModularH { .. })
    }

    /// Whether `α` indexes a basis vector of this algebra.
    pub fn admits(&self, alpha: &MultiIndex) -> bool {
        if alpha.rank() != self.rank() || alpha.is_zero() {
            return false;
        }
        match *self {
            LieContext::FullH { .. } => true,
            LieContext::HPlus { .. } => alpha.is_nonnegative(),
            LieContext::ModularH { p, .. } => modular::in_basis(alpha, p),
        }
    }

    /// Bracket of two basis vectors.
    pub fn bracket_basis(&self, a: &MultiIndex, b: &MultiIndex) -> BasisTerms {
        match *self {
            LieContext::ModularH { p, .. } => modular::bracket_basis(a, b, p),
            _ => bracket_char0(a, b),
        }
    }

    pub fn zero(&self) -> LieElement {
        LieElement { ctx: *self, terms: BTreeMap::new() }
    }

    /// `D_H(x^α)` (or `D_H(x^{(α)})`), checked for admissibility.
    pub fn basis(&self, alpha: MultiIndex) -> Result<LieElement> {
        if !self.admits(&alpha) {
            return Err(Error::Inadmissible(format!("{alpha} is not a basis index of {self}")));
        }
        let mut terms = BTreeMap::new();
        terms.insert(alpha, self.field().one());
        Ok(LieElement { ctx: *self, terms })
    }
}

impl fmt::Display for LieContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieContext::FullH { n } => write!(f, "H(n={n})"),
            LieContext::HPlus { n } => write!(f, "H+(n={n})"),
            LieContext::ModularH { n, p } => write!(f, "H(2n;1)(n={n},p={p})"),
        }
    }
}

/// `[D_H(x^α), D_H(x^β)] = Σ_i (α_{-i}β_i − α_iβ_{-i}) D_H(x^{α+β−ε_i−ε_{-i}})`,
/// dropping terms that land on the kernel index `0`.
pub fn bracket_char0(a: &MultiIndex, b: &MultiIndex) -> BasisTerms {
    let n = a.rank();
    let mut out = BasisTerms::new();
    for i in 1..=n as i32 {
        let c = a.get(-i) * b.get(i) - a.get(i) * b.get(-i);
        if c == 0 {
            continue;
        }
        let idx = (*a + *b).with(i, -1).with(-i, -1);
        if idx.is_zero() {
            continue;
        }
        out.push((idx, Field::Rational.from_i64(c)));
    }
    out
}

/// `σ(m)`: `+1` for `m < 0`, `−1` for `m > 0`.
pub fn sigma(m: i32) -> Result<i64> {
    match m.signum() {
        -1 => Ok(1),
        1 => Ok(-1),
        _ => Err(Error::InvalidParameters("sigma(0) is undefined".into())),
    }
}

/// Sparse linear combination of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    ctx: LieContext,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl LieElement {
    pub fn context(&self) -> LieContext {
        self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_terms(
        ctx: LieContext,
        terms: impl IntoIterator<Item = (MultiIndex, Scalar)>,
    ) -> Result<LieElement> {
        let mut out = ctx.zero();
        for (k, c) in terms {
            if !ctx.admits(&k) {
                return Err(Error::Inadmissible(format!("{k} is not a basis index of {ctx}")));
            }
            if c.field() != ctx.field() {
                return Err(Error::FieldMismatch(c.field(), ctx.field()));
            }
            out.add_term(k, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, k: MultiIndex, c: Scalar) {
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

    fn check(&self, other: &LieElement) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> LieElement {
        let mut out = self.ctx.zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c * s);
        }
        out
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-self.ctx.field().one())
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.add(&other.neg())
    }

    /// Coefficient of a basis vector (zero if absent).
    pub fn coeff(&self, k: &MultiIndex) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(|| self.ctx.field().zero())
    }

    /// Lie bracket, bilinear in both arguments.
    pub fn bracket(&self, other: &LieElement) -> Result<LieElement> {
        self.check(other)?;
        let mut out = self.ctx.zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let cab = ca * cb;
                for (k, c) in self.ctx.bracket_basis(a, b) {
                    out.add_term(k, &c * &cab);
                }
            }
        }
        Ok(out)
    }

    /// `(ad self)^ℓ (x)`.
    pub fn ad_pow(&self, x: &LieElement, ell: u32) -> Result<LieElement> {
        let mut cur = x.clone();
        for _ in 0..ell {
            cur = self.bracket(&cur)?;
        }
        Ok(cur)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (j, (k, c)) in self.terms.iter().enumerate() {
            let name = basis_name(&self.ctx, k);
            write_term(f, j == 0, c, &name)?;
        }
        Ok(())
    }
}

/// Text name of a basis vector: `DH[..]` or `DHp[..]@p`.
pub fn basis_name(ctx: &LieContext, k: &MultiIndex) -> String {
    match ctx {
        LieContext::ModularH { p, .. } => format!("DHp{k}@{p}"),
        _ => format!("DH{k}"),
    }
}

pub(crate) fn write_term(
    f: &mut impl fmt::Write,
    first: bool,
    c: &Scalar,
    body: &str,
) -> fmt::Result {
    let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if body.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{mag}*{body}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistKind {
    Vertical { k: i32 },
    Horizontal { k: i32, m: i32 },
    Generic,
}

/// A pair `(h, e)` with `[h, e] = e`, checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistPair {
    pub kind: TwistKind,
    pub h: LieElement,
    pub e: LieElement,
}

impl TwistPair {
    pub fn generic(h: LieElement, e: LieElement) -> Result<TwistPair> {
        let he = h.bracket(&e)?;
        if he != e {
            return Err(Error::InvalidParameters(format!("[h,e] = {he}, expected e = {e}")));
        }
        Ok(TwistPair { kind: TwistKind::Generic, h, e })
    }

    /// `h = D_H(x^{ε_k+ε_{-k}})`, `e = D_H(x^{2ε_k+ε_{-k}})`.
    pub fn vertical(ctx: LieContext, k: i32) -> Result<TwistPair> {
        let n = ctx.rank();
        if k < 1 || k as usize > n {
            return Err(Error::InvalidParameters(format!("vertical twist needs 1 <= k <= {n}")));
        }
        let h = ctx.basis(toral_index(n, k))?;
        let e_idx = MultiIndex::epsilon(n, k).with(k, 1).with(-k, 1);
        let mut e = ctx.basis(e_idx)?;
        if ctx.is_modular() {
            // D_H(x^{(2ε_k+ε_{-k})}) carries 1/2! relative to the char-0 vector
            e = e.scale(&ctx.field().from_i64(2));
        }
        let mut pair = TwistPair::generic(h, e)?;
        pair.kind = TwistKind::Vertical { k };
        Ok(pair)
    }

    /// `h = D_H(x^{ε_k+ε_{-k}})`, `e = D_H(x^{ε_k+ε_m})`, `m ≠ ±k`, `n ≥ 2`.
    pub fn horizontal(ctx: LieContext, k: i32, m: i32) -> Result<TwistPair> {
        let n = ctx.rank();
        if n < 2 {
            return Err(Error::InvalidParameters("horizontal twists need n >= 2".into()));
        }
        if k < 1 || k as usize > n || m == 0 || m.unsigned_abs() as usize > n || m.abs() == k {
            return Err(Error::InvalidParameters(format!(
                "horizontal twist needs 1 <= k, |m| <= {n} and m != ±k (k={k}, m={m})"
            )));
        }
        let h = ctx.basis(toral_index(n, k))?;
        let e = ctx.basis(MultiIndex::epsilon(n, k).with(m, 1))?;
        let mut pair = TwistPair::generic(h, e)?;
        pair.kind = TwistKind::Horizontal { k, m };
        Ok(pair)
    }

    /// The classical r-matrix `h⊗e − e⊗h`.
    pub fn r_matrix(&self) -> RMatrix {
        let mut terms: BTreeMap<(MultiIndex, MultiIndex), Scalar> = BTreeMap::new();
        let mut push = |k: (MultiIndex, MultiIndex), c: Scalar| {
            let slot = terms.entry(k).or_insert_with(|| c.field().zero());
            *slot = &*slot + &c;
        };
        for (a, ca) in self.h.terms() {
            for (b, cb) in self.e.terms() {
                let c = ca * cb;
                push((*a, *b), c.clone());
                push((*b, *a), -c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        RMatrix { ctx: self.h.context(), terms }
    }
}

/// `ε_k + ε_{-k}`.
pub fn toral_index(n: usize, k: i32) -> MultiIndex {
    MultiIndex::epsilon(n, k).with(-k, 1)
}

/// Formal 2-tensor over the Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub ctx: LieContext,
    pub terms: BTreeMap<(MultiIndex, MultiIndex), Scalar>,
}

impl RMatrix {
    pub fn flip(&self) -> RMatrix {
        RMatrix { ctx: self.ctx, terms: self.terms.iter().map(|((a, b), c)| ((*b, *a), c.clone())).collect() }
    }

    pub fn add(&self, other: &RMatrix) -> RMatrix {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let cur = terms.get(k).cloned().unwrap_or_else(|| c.field().zero());
            terms.insert(*k, cur + c.clone());
        }
        terms.retain(|_, c| !c.is_zero());
        RMatrix { ctx: self.ctx, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (j, ((a, b), c)) in self.terms.iter().enumerate() {
            let body = format!("{}⊗{}", basis_name(&self.ctx, a), basis_name(&self.ctx, b));
            write_term(f, j == 0, c, &body)?;
        }
        Ok(())
    }
}
