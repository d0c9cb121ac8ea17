//! The identification of the degree-zero part of `H` with `sp_{2n}` and the
//! stored coproduct table of the Jordanian `sp_4` quantization.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::algebra::{FactorialKind, TensorElement, UElement};
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::lie::{sigma, LieContext, LieElement};
use crate::scalar::{Field, Scalar};
use crate::series::TPoly;
use crate::twist::tensor_series;

use super::QuantizationContext;

/// A `2n × 2n` matrix indexed by signed positions `±1, .., ±n`.
#[derive(Clone, PartialEq, Eq)]
pub struct SpMatrix {
    n: usize,
    field: Field,
    entries: BTreeMap<(i32, i32), Scalar>,
}

impl SpMatrix {
    pub fn zero(n: usize, field: Field) -> SpMatrix {
        SpMatrix { n, field, entries: BTreeMap::new() }
    }

    /// `Σ c·E_{i,j}` from integer triples.
    pub fn from_units(n: usize, field: Field, units: &[(i32, i32, i64)]) -> SpMatrix {
        let mut out = SpMatrix::zero(n, field);
        for &(i, j, c) in units {
            out.add_entry(i, j, field.from_i64(c));
        }
        out
    }

    pub fn entries(&self) -> &BTreeMap<(i32, i32), Scalar> {
        &self.entries
    }

    fn add_entry(&mut self, i: i32, j: i32, c: Scalar) {
        let slot = self.entries.entry((i, j)).or_insert_with(|| self.field.zero());
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn add(&self, o: &SpMatrix) -> SpMatrix {
        let mut out = self.clone();
        for (&(i, j), c) in &o.entries {
            out.add_entry(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> SpMatrix {
        let mut out = SpMatrix::zero(self.n, self.field);
        for (&(i, j), c) in &self.entries {
            out.add_entry(i, j, c * s);
        }
        out
    }

    pub fn mul(&self, o: &SpMatrix) -> SpMatrix {
        let mut out = SpMatrix::zero(self.n, self.field);
        for (&(i, j), a) in &self.entries {
            for (&(j2, l), b) in &o.entries {
                if j == j2 {
                    out.add_entry(i, l, a * b);
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &SpMatrix) -> SpMatrix {
        self.mul(o).add(&o.mul(self).scale(&-self.field.one()))
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (n, ((i, j), c)) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})E[{i},{j}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Signed positions of a degree-zero index: `ε_r + ε_s` with `r ≤ s`.
fn degree_zero_positions(alpha: &MultiIndex) -> Option<(i32, i32)> {
    let n = alpha.rank() as i32;
    let mut pos = vec![];
    for i in (-n..=n).filter(|&i| i != 0) {
        let c = alpha.get(i);
        if c < 0 {
            return None;
        }
        for _ in 0..c {
            pos.push(i);
        }
    }
    (pos.len() == 2).then(|| (pos[0], pos[1]))
}

/// Scale from `D_H(x^α)` to the divided vector `D_H(x^{(α)})` of the context.
fn divided_scale(ctx: LieContext, alpha: &MultiIndex) -> Scalar {
    match ctx {
        LieContext::ModularH { .. } => ctx.field().one(),
        _ => Scalar::Rational(BigRational::from_integer(alpha.factorial())),
    }
}

/// Image of a divided basis vector: `D_H(x^{(ε_r+ε_s)}) ↦ σ(s)E_{r,−s} + σ(r)E_{s,−r}`
/// and `D_H(x^{(2ε_r)}) ↦ σ(r)E_{r,−r}`.
fn basis_image(n: usize, field: Field, r: i32, s: i32) -> SpMatrix {
    let sg = |i: i32| sigma(i).expect("nonzero position");
    if r == s {
        SpMatrix::from_units(n, field, &[(r, -r, sg(r))])
    } else {
        SpMatrix::from_units(n, field, &[(r, -s, sg(s)), (s, -r, sg(r))])
    }
}

/// `sp2n_map` on an element of the degree-zero part.
pub fn sp2n_map(x: &LieElement) -> Result<SpMatrix> {
    let ctx = x.context();
    let n = ctx.rank();
    let field = ctx.field();
    let mut out = SpMatrix::zero(n, field);
    for (alpha, c) in x.terms() {
        let Some((r, s)) = degree_zero_positions(alpha) else {
            return Err(Error::InvalidParameters(format!("{alpha} is not in the degree-zero part")));
        };
        let scale = &divided_scale(ctx, alpha) * c;
        out = out.add(&basis_image(n, field, r, s).scale(&scale));
    }
    Ok(out)
}

/// Indices of the degree-zero part, `2n(2n+1)/2` of them.
pub fn degree_zero_basis(n: usize) -> Vec<MultiIndex> {
    let n32 = n as i32;
    let pos: Vec<i32> = (-n32..=n32).filter(|&i| i != 0).collect();
    let mut out = vec![];
    for (a, &r) in pos.iter().enumerate() {
        for &s in &pos[a..] {
            out.push(MultiIndex::epsilon(n, r).with(s, 1));
        }
    }
    out.sort();
    out
}

/// The Lie element whose image is `m`, or an error when `m ∉ sp_{2n}`.
pub fn sp2n_preimage(ctx: LieContext, m: &SpMatrix) -> Result<LieElement> {
    let n = ctx.rank();
    let field = ctx.field();
    let mut terms = vec![];
    for alpha in degree_zero_basis(n) {
        let (r, s) = degree_zero_positions(&alpha).expect("degree zero");
        let probe = (r, -s);
        let Some(c) = m.entries.get(&probe) else { continue };
        let img = basis_image(n, field, r, s);
        let unit = &img.entries[&probe] * &divided_scale(ctx, &alpha);
        terms.push((alpha, c.try_div(&unit)?));
    }
    let x = LieElement::from_terms(ctx, terms)?;
    if sp2n_map(&x)? != *m {
        return Err(Error::InvalidParameters(format!("{m} is not in the image of sp2n_map")));
    }
    Ok(x)
}

/// Whether `sp2n_map` is a bracket homomorphism on all basis pairs; the
/// first failing pair otherwise.
pub fn check_homomorphism(ctx: LieContext) -> Result<Option<(MultiIndex, MultiIndex)>> {
    let basis = degree_zero_basis(ctx.rank());
    for a in &basis {
        for b in &basis {
            let x = ctx.basis(*a)?;
            let y = ctx.basis(*b)?;
            let lhs = sp2n_map(&x.bracket(&y)?)?;
            let rhs = sp2n_map(&x)?.commutator(&sp2n_map(&y)?);
            if lhs != rhs {
                return Ok(Some((*a, *b)));
            }
        }
    }
    Ok(None)
}

/// Symbols used in the stored table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sym {
    One,
    /// `h^{⟨2⟩}`
    H2,
    M(&'static [(i32, i32, i64)]),
}

/// One summand `c · left ⊗ f^j·right · t^d`.
#[derive(Clone, Copy, Debug)]
pub struct TableTerm {
    pub c: i64,
    pub left: Sym,
    pub fpow: i64,
    pub right: Sym,
    pub t: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub label: &'static str,
    pub lhs: &'static [(i32, i32, i64)],
    pub rhs: &'static [TableTerm],
}

const H: &[(i32, i32, i64)] = &[(1, 1, 1), (-1, -1, -1)];
const HP: &[(i32, i32, i64)] = &[(2, 2, 1), (-2, -2, -1)];
const E: &[(i32, i32, i64)] = &[(1, 2, 1), (-2, -1, -1)];
const X4: &[(i32, i32, i64)] = &[(1, -2, 1), (2, -1, 1)];
const X5: &[(i32, i32, i64)] = &[(-1, 2, 1), (-2, 1, 1)];
const X6: &[(i32, i32, i64)] = &[(-1, -2, 1), (2, 1, 1)];
const X6_SP: &[(i32, i32, i64)] = &[(2, 1, 1), (-1, -2, -1)];
const H_MINUS_HP: &[(i32, i32, i64)] = &[(1, 1, 1), (-1, -1, -1), (2, 2, -1), (-2, -2, 1)];
const E1M1: &[(i32, i32, i64)] = &[(1, -1, 1)];
const E2M2: &[(i32, i32, i64)] = &[(2, -2, 1)];
const EM11: &[(i32, i32, i64)] = &[(-1, 1, 1)];
const EM22: &[(i32, i32, i64)] = &[(-2, 2, 1)];

const fn tt(c: i64, left: Sym, fpow: i64, right: Sym, t: usize) -> TableTerm {
    TableTerm { c, left, fpow, right, t }
}

use Sym::{One, H2};

/// The displayed coproduct table for `n = 2`, `h = E_{11} − E_{−1,−1}`,
/// `e = E_{12} − E_{−2,−1}`, `h' = E_{22} − E_{−2,−2}`, `f = (1 − et)^{−1}`.
pub const SP4_TABLE: &[TableRow] = &[
    TableRow {
        label: "Δ(h)",
        lhs: H,
        rhs: &[tt(1, One, 0, Sym::M(H), 0), tt(1, Sym::M(H), 0, One, 0), tt(-1, Sym::M(H), 1, One, 0)],
    },
    TableRow {
        label: "Δ(h')",
        lhs: HP,
        rhs: &[tt(1, Sym::M(HP), 0, One, 0), tt(1, One, 0, Sym::M(HP), 0), tt(-1, Sym::M(H), 1, One, 0)],
    },
    TableRow {
        label: "Δ(e)",
        lhs: E,
        rhs: &[tt(1, One, 0, Sym::M(E), 0), tt(1, Sym::M(E), -1, One, 0), tt(-1, Sym::M(H), 1, One, 0)],
    },
    TableRow {
        label: "Δ(E_{1,-2}+E_{2,-1})",
        lhs: X4,
        rhs: &[tt(1, Sym::M(X4), -1, One, 0), tt(1, One, 0, Sym::M(X4), 0), tt(-2, Sym::M(H), 1, Sym::M(E1M1), 1)],
    },
    TableRow {
        label: "Δ(E_{-1,2}+E_{-2,1})",
        lhs: X5,
        rhs: &[tt(1, Sym::M(X5), 1, One, 0), tt(1, One, 0, Sym::M(X5), 0), tt(-2, Sym::M(H), 1, Sym::M(EM22), 1)],
    },
    TableRow {
        label: "Δ(E_{-1,-2}+E_{2,1})",
        lhs: X6,
        rhs: &[
            tt(1, Sym::M(X6), 1, One, 0),
            tt(1, One, 0, Sym::M(X6), 0),
            tt(-1, Sym::M(H), 1, Sym::M(H_MINUS_HP), 1),
            tt(-1, H2, 2, Sym::M(E), 2),
        ],
    },
    TableRow {
        label: "Δ(E_{1,-1})",
        lhs: E1M1,
        rhs: &[tt(1, Sym::M(E1M1), -2, One, 0), tt(1, One, 0, Sym::M(E1M1), 0)],
    },
    TableRow {
        label: "Δ(E_{2,-2})",
        lhs: E2M2,
        rhs: &[
            tt(1, Sym::M(E2M2), 0, One, 0),
            tt(1, One, 0, Sym::M(E2M2), 0),
            tt(-1, Sym::M(H), 1, Sym::M(X4), 1),
            tt(1, H2, 2, Sym::M(E1M1), 2),
        ],
    },
    TableRow {
        label: "Δ(E_{-1,1})",
        lhs: EM11,
        rhs: &[
            tt(1, Sym::M(EM11), 2, One, 0),
            tt(1, One, 0, Sym::M(EM11), 0),
            tt(1, Sym::M(H), 1, Sym::M(X5), 1),
            tt(1, H2, 2, Sym::M(EM22), 2),
        ],
    },
    TableRow {
        label: "Δ(E_{-2,2})",
        lhs: EM22,
        rhs: &[tt(1, Sym::M(EM22), 0, One, 0), tt(1, One, 0, Sym::M(EM22), 0)],
    },
];

/// The table with the rows that disagree with the computation replaced:
/// `Δ(h)`, `Δ(h')` and `Δ(e)` lose or fix the stray `h ⊗ f` term, the sign
/// of the `t` term of `Δ(E_{-1,2}+E_{-2,1})` flips, and the sixth row uses
/// `E_{2,1} − E_{−1,−2}`, which lies in `sp_4`.
pub const SP4_TABLE_CORRECTED: &[TableRow] = &[
    TableRow { label: "Δ(h)", lhs: H, rhs: &[tt(1, One, 0, Sym::M(H), 0), tt(1, Sym::M(H), 1, One, 0)] },
    TableRow {
        label: "Δ(h')",
        lhs: HP,
        rhs: &[tt(1, Sym::M(HP), 0, One, 0), tt(1, One, 0, Sym::M(HP), 0), tt(-1, Sym::M(H), 1, Sym::M(E), 1)],
    },
    TableRow { label: "Δ(e)", lhs: E, rhs: &[tt(1, One, 0, Sym::M(E), 0), tt(1, Sym::M(E), -1, One, 0)] },
    SP4_TABLE[3],
    TableRow {
        label: "Δ(E_{-1,2}+E_{-2,1})",
        lhs: X5,
        rhs: &[tt(1, Sym::M(X5), 1, One, 0), tt(1, One, 0, Sym::M(X5), 0), tt(2, Sym::M(H), 1, Sym::M(EM22), 1)],
    },
    TableRow {
        label: "Δ(E_{2,1}-E_{-1,-2})",
        lhs: X6_SP,
        rhs: &[
            tt(1, Sym::M(X6_SP), 1, One, 0),
            tt(1, One, 0, Sym::M(X6_SP), 0),
            tt(-1, Sym::M(H), 1, Sym::M(H_MINUS_HP), 1),
            tt(-1, H2, 2, Sym::M(E), 2),
        ],
    },
    SP4_TABLE[6],
    SP4_TABLE[7],
    SP4_TABLE[8],
    SP4_TABLE[9],
];

fn sym_element(ctx: &QuantizationContext, s: Sym) -> Result<UElement> {
    let alg = ctx.algebra();
    match s {
        Sym::One => Ok(alg.one()),
        Sym::H2 => Ok(alg.factorial_poly(ctx.h(), &alg.field().zero(), 2, FactorialKind::Rising)),
        Sym::M(units) => {
            let m = SpMatrix::from_units(2, alg.field(), units);
            alg.from_lie(&sp2n_preimage(ctx.lie(), &m)?)
        }
    }
}

/// The stored right-hand side of a row as a series in `u ⊗ u`.
pub fn row_expected(ctx: &QuantizationContext, row: &TableRow) -> Result<TPoly<TensorElement>> {
    let mode = ctx.mode();
    let field = ctx.algebra().field();
    let mut out = TPoly::zero(mode, &TensorElement::zero(ctx.algebra(), 2));
    for term in row.rhs {
        let left = TPoly::constant(mode, sym_element(ctx, term.left)?);
        let right = ctx.power(-term.fpow).mul(&TPoly::constant(mode, sym_element(ctx, term.right)?));
        let shift = TPoly::monomial(mode, TensorElement::one(ctx.algebra(), 2), term.t);
        out = out.add(&tensor_series(&left, &right).mul(&shift).scale(&field.from_i64(term.c)));
    }
    Ok(out)
}

/// Outcome of one table row.
#[derive(Clone, Debug)]
pub struct RowReport {
    pub label: &'static str,
    pub matches: bool,
    pub detail: Option<String>,
}

/// Compares every displayed row against the closed-form coproduct in `ctx`,
/// which must be the horizontal quantization with `(k, m) = (1, −2)`, `n = 2`.
pub fn jordanian_sp4_table(ctx: &QuantizationContext) -> Result<Vec<RowReport>> {
    jordanian_table(ctx, SP4_TABLE)
}

pub fn jordanian_table(ctx: &QuantizationContext, table: &[TableRow]) -> Result<Vec<RowReport>> {
    if ctx.rank() != 2 || ctx.variant().k() != 1 || ctx.variant().m() != Some(-2) {
        return Err(Error::InvalidParameters("the sp4 table uses n = 2, (k, m) = (1, -2)".into()));
    }
    let mut out = vec![];
    for row in table {
        let lhs = SpMatrix::from_units(2, ctx.algebra().field(), row.lhs);
        let x = match sp2n_preimage(ctx.lie(), &lhs) {
            Ok(x) => x,
            Err(err) => {
                out.push(RowReport { label: row.label, matches: false, detail: Some(err.to_string()) });
                continue;
            }
        };
        let got = ctx.delta_closed(&x)?;
        let want = match row_expected(ctx, row) {
            Ok(w) => w,
            Err(err) => {
                out.push(RowReport { label: row.label, matches: false, detail: Some(err.to_string()) });
                continue;
            }
        };
        let diff = got.first_difference(&want);
        out.push(RowReport {
            label: row.label,
            matches: diff.is_none(),
            detail: diff.map(|d| {
                format!("t^{d}: computed {} | displayed {}", got.coeff(d), want.coeff(d))
            }),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homomorphism_in_both_characteristics() {
        assert_eq!(check_homomorphism(LieContext::ModularH { n: 2, p: 5 }).unwrap(), None);
        assert_eq!(check_homomorphism(LieContext::HPlus { n: 2 }).unwrap(), None);
        assert_eq!(degree_zero_basis(2).len(), 10);
    }

    #[test]
    fn preimage_round_trip() {
        let ctx = LieContext::ModularH { n: 2, p: 5 };
        for a in degree_zero_basis(2) {
            let x = ctx.basis(a).unwrap();
            assert_eq!(sp2n_preimage(ctx, &sp2n_map(&x).unwrap()).unwrap(), x);
        }
        let bad = SpMatrix::from_units(2, ctx.field(), X6);
        assert!(sp2n_preimage(ctx, &bad).is_err());
        assert!(sp2n_preimage(ctx, &SpMatrix::from_units(2, ctx.field(), X6_SP)).is_ok());
    }
}
