//! Identity checks tying the closed forms to independent computations.
//! Every check returns `None` on success and a witness string otherwise.

use crate::algebra::{FactorialKind, TensorElement, UAlgebra, UElement};
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::lie::{sigma, LieContext, LieElement};
use crate::modular::{is_toral, modular_bracket};
use crate::scalar::{binomial, factorial, Scalar};
use crate::series::{Ring, TPoly};
use crate::twist::{build_twist, one_tensor, tensor_series, u_v_closed, TwistVariant, TwistedStructure};

use super::coeffs::coeff_a_ik;
use super::QuantizationContext;

pub type Witness = Option<String>;

fn compare<V: Ring + std::fmt::Display>(what: &str, got: &TPoly<V>, want: &TPoly<V>) -> Witness {
    got.first_difference(want)
        .map(|d| format!("{what}: first difference at t^{d}: {} vs {}", got.coeff(d), want.coeff(d)))
}

fn constant<V: Ring>(ctx: &QuantizationContext, v: V) -> TPoly<V> {
    TPoly::constant(ctx.mode(), v)
}

/// `(1/ℓ!)(ad e)^ℓ x` with the bracket computed independently of the
/// fast basis formula: through generating functions in characteristic `p`.
pub fn d_ell_oracle(ctx: &QuantizationContext, x: &LieElement, ell: usize) -> Result<LieElement> {
    if !ctx.lie().is_modular() {
        return ctx.d_ell_bracket(x, ell);
    }
    let mut cur = x.clone();
    for _ in 0..ell {
        cur = modular_bracket(&ctx.pair().e, &cur)?;
    }
    let inv = ctx.lie().field().from_bigint(&factorial(ell as u64)).inverse()?;
    Ok(cur.scale(&inv))
}

/// Coefficient family against the bracket oracle for one `(α, ℓ)`.
pub fn coefficient_oracle(ctx: &QuantizationContext, alpha: &MultiIndex, ell: usize) -> Result<Witness> {
    let x = ctx.lie().basis(*alpha)?;
    let fam = ctx.d_ell_basis(alpha, ell)?;
    let orc = d_ell_oracle(ctx, &x, ell)?;
    Ok((fam != orc).then(|| format!("d^({ell}) of D_H[{alpha}]: family {fam}, brackets {orc}")))
}

/// Closed forms against conjugation by the twist and by `w`.
pub fn closed_vs_conjugation(
    ctx: &QuantizationContext,
    s: &TwistedStructure,
    alpha: &MultiIndex,
) -> Result<Witness> {
    let x = ctx.algebra().generator(*alpha)?;
    if let Some(w) = compare("coproduct", &ctx.delta_basis(alpha)?, &s.coproduct(&x)) {
        return Ok(Some(w));
    }
    Ok(compare("antipode", &ctx.antipode_basis(alpha)?, &s.antipode(&x)))
}

/// `[Δx, Δy] = Δ[x, y]`.
pub fn well_definedness(ctx: &QuantizationContext, a: &MultiIndex, b: &MultiIndex) -> Result<Witness> {
    let lie = ctx.lie();
    let da = ctx.delta_basis(a)?;
    let db = ctx.delta_basis(b)?;
    let lhs = da.mul(&db).sub(&db.mul(&da));
    let rhs = ctx.delta_closed(&lie.basis(*a)?.bracket(&lie.basis(*b)?)?)?;
    Ok(compare("[Δx,Δy] vs Δ[x,y]", &lhs, &rhs))
}

/// `(Δ ⊗ Id)Δ(x) = (Id ⊗ Δ)Δ(x)`.
pub fn coassociativity(ctx: &QuantizationContext, alpha: &MultiIndex) -> Result<Witness> {
    let d = ctx.delta_basis(alpha)?;
    let (l, r) = crate::par::join(|| ctx.delta_slot(&d, 0), || ctx.delta_slot(&d, 1));
    Ok(compare("coassociativity", &l?, &r?))
}

/// `m(S ⊗ Id)Δ(x) = ε(x) = m(Id ⊗ S)Δ(x)` with `ε(x) = 0`.
pub fn antipode_axiom(ctx: &QuantizationContext, alpha: &MultiIndex) -> Result<Witness> {
    let d = ctx.delta_basis(alpha)?;
    let zero = TPoly::zero(ctx.mode(), &ctx.algebra().one());
    for slot in [0, 1] {
        if let Some(w) = compare(&format!("antipode axiom, slot {slot}"), &ctx.antipode_contract(&d, slot)?, &zero) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `(ε ⊗ Id)Δ(x) = x = (Id ⊗ ε)Δ(x)`.
pub fn counit_axiom(ctx: &QuantizationContext, alpha: &MultiIndex) -> Result<Witness> {
    let d = ctx.delta_basis(alpha)?;
    let x = constant(ctx, ctx.algebra().generator(*alpha)?);
    for slot in [0, 1] {
        if let Some(w) = compare(&format!("counit axiom, slot {slot}"), &ctx.counit_contract(&d, slot), &x) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `Δ(x)^p = Δ(x^{[p]})` and `S(x)^p = S(x^{[p]})` in the restricted algebra.
pub fn hopf_ideal_stability(ctx: &QuantizationContext, alpha: &MultiIndex) -> Result<Witness> {
    let Some(p) = ctx.variant().prime().filter(|_| ctx.algebra().is_restricted()) else {
        return Err(Error::InvalidParameters("Hopf-ideal stability needs a u_{t,q} variant".into()));
    };
    let toral = is_toral(alpha);
    let d = ctx.delta_basis(alpha)?;
    let s = ctx.antipode_basis(alpha)?;
    let (dp, sp) = crate::par::join(|| d.pow(p), || s.pow(p));
    let dwant = if toral { d } else { TPoly::zero(ctx.mode(), &TensorElement::zero(ctx.algebra(), 2)) };
    let swant = if toral { s } else { TPoly::zero(ctx.mode(), &ctx.algebra().one()) };
    if let Some(w) = compare("Δ(x)^p vs Δ(x^[p])", &dp, &dwant) {
        return Ok(Some(w));
    }
    Ok(compare("S(x)^p vs S(x^[p])", &sp, &swant))
}

/// Radford relations for `h` and `f = (1 − et)^{−1}`.
pub fn radford(ctx: &QuantizationContext) -> Result<Witness> {
    let Some(p) = ctx.variant().prime().filter(|_| ctx.algebra().is_restricted()) else {
        return Err(Error::InvalidParameters("Radford relations live in u_{t,q}".into()));
    };
    let h = constant(ctx, ctx.h().clone());
    let f = ctx.f();
    let one = constant(ctx, ctx.algebra().one());
    let hf = h.mul(&f).sub(&f.mul(&h));
    if let Some(w) = compare("[h,f] vs f^2-f", &hf, &f.mul(&f).sub(&f)) {
        return Ok(Some(w));
    }
    if ctx.h().pow(p) != *ctx.h() {
        return Ok(Some(format!("h^{p} = {} != h", ctx.h().pow(p))));
    }
    if let Some(w) = compare("f^p vs 1", &f.pow(p), &one) {
        return Ok(Some(w));
    }
    let alpha = crate::lie::toral_index(ctx.rank(), ctx.variant().k());
    let dh = tensor_series(&h, &f).add(&one_tensor(&h));
    if let Some(w) = compare("Δ(h) vs h⊗f+1⊗h", &ctx.delta_basis(&alpha)?, &dh) {
        return Ok(Some(w));
    }
    let sh = h.mul(&ctx.power(1)).neg();
    Ok(compare("S(h) vs -hf^-1", &ctx.antipode_basis(&alpha)?, &sh))
}

/// At `t = 0` the structure is the standard one.
pub fn specialization_zero(ctx: &QuantizationContext, alpha: &MultiIndex) -> Result<Witness> {
    let alg = ctx.algebra();
    let x = alg.generator(*alpha)?;
    let d0 = ctx.delta_basis(alpha)?.evaluate(&alg.field().zero());
    if d0 != alg.delta0(&x) {
        return Ok(Some(format!("Δ at t=0 is {d0}")));
    }
    let s0 = ctx.antipode_basis(alpha)?.evaluate(&alg.field().zero());
    Ok((s0 != alg.s0(&x)).then(|| format!("S at t=0 is {s0}")))
}

/// After specializing `t` to a root `t0` of `t^p − qt`, the coproduct still
/// respects the bracket of `a` and `b`.
pub fn specialized_bracket(ctx: &QuantizationContext, t0: &Scalar, a: &MultiIndex, b: &MultiIndex) -> Result<Witness> {
    let lie = ctx.lie();
    let da = ctx.delta_basis(a)?.evaluate(t0);
    let db = ctx.delta_basis(b)?.evaluate(t0);
    let lhs = da.mul(&db).sub(&db.mul(&da));
    let rhs = ctx.delta_closed(&lie.basis(*a)?.bracket(&lie.basis(*b)?)?)?.evaluate(t0);
    Ok((lhs != rhs).then(|| format!("at t={t0}: [Δx,Δy] = {lhs}, Δ[x,y] = {rhs}")))
}

/// `d^{(1)}` of a toral vector: family, bracket oracle and special value agree.
pub fn toral_special(ctx: &QuantizationContext, i: i32) -> Result<Witness> {
    let alpha = crate::lie::toral_index(ctx.rank(), i);
    let alg = ctx.algebra();
    let fam = alg.from_lie(&ctx.d_ell_basis(&alpha, 1)?)?;
    let orc = alg.from_lie(&d_ell_oracle(ctx, &ctx.lie().basis(alpha)?, 1)?)?;
    let special = ctx.d_ell_special(&alpha, 1, false)?;
    Ok((fam != special || orc != special)
        .then(|| format!("toral {i}: family {fam}, brackets {orc}, special value {special}")))
}

/// `[e, x^p]` in the unrestricted enveloping algebra against the special
/// value of `d^{(1)}(x^p)`.
pub fn pth_power_special(ctx: &QuantizationContext, alpha: &MultiIndex) -> Result<Witness> {
    let Some(p) = ctx.variant().prime() else {
        return Err(Error::InvalidParameters("p-th powers need a modular variant".into()));
    };
    let free = UAlgebra::new(ctx.lie());
    let e = free.from_lie(&ctx.pair().e)?;
    let xp = free.generator(*alpha)?.pow(p);
    let got = e.commutator(&xp);
    let c = ctx.special_coefficient(alpha, true)?;
    let want = e.scale(&free.field().from_i64(c));
    Ok((got != want).then(|| format!("[e, x^{p}] for {alpha}: {got}, expected {want}")))
}

/// `(ad D_H(x^α))^s e` against the closed sum with `A(i,k)`.
pub fn lemma_ad_power(ctx: &QuantizationContext, alpha: &MultiIndex, s: u32) -> Result<Witness> {
    let (k, Some(m)) = (ctx.variant().k(), ctx.variant().m()) else {
        return Err(Error::InvalidParameters("needs a horizontal variant".into()));
    };
    let lie = ctx.lie();
    let x = lie.basis(*alpha)?;
    let lhs = x.ad_pow(&ctx.pair().e, s)?;
    let field = lie.field();
    let n = lie.rank();
    let sg = -sigma(m)?;
    let toral_k = crate::lie::toral_index(n, k);
    let toral_m = crate::lie::toral_index(n, m.abs());
    let base = MultiIndex::epsilon(n, k).with(m, 1);
    let mut rhs = lie.zero();
    for i in 0..=s as i64 {
        let sign = if sg < 0 && i % 2 == 1 { -1 } else { 1 };
        let c = &field.from_i64(sign)
            * &(&field.from_bigint(&binomial(s as u64, i as u64))
                * &(&coeff_a_ik(alpha, s as i64 - i - 1, k) * &coeff_a_ik(alpha, i - 1, m)));
        let idx = (s as i64) * *alpha - i * toral_m - (s as i64 - i) * toral_k + base;
        if c.is_zero() || idx.is_zero() {
            continue;
        }
        if !lie.admits(&idx) {
            return Ok(Some(format!("closed sum leaves the algebra at {idx}")));
        }
        rhs = rhs.add(&lie.basis(idx)?.scale(&c))?;
    }
    Ok((lhs != rhs).then(|| format!("(ad D_H[{alpha}])^{s} e: brackets {lhs}, closed sum {rhs}")))
}

fn twist_f(ctx: &QuantizationContext, a: i64) -> Result<TPoly<TensorElement>> {
    let a = ctx.algebra().field().from_i64(a);
    Ok(build_twist(ctx.algebra(), ctx.pair(), &a, TwistVariant::F, ctx.mode())?.body)
}

/// `Σ_ℓ d^{(ℓ)}(y) h_b^{⟨ℓ⟩} t^ℓ` for `y ∈ U`.
fn d_series(ctx: &QuantizationContext, y: &UElement, b: i64) -> Result<TPoly<UElement>> {
    let alg = ctx.algebra();
    let bb = alg.field().from_i64(b);
    let mut out = TPoly::zero(ctx.mode(), &alg.one());
    for ell in 0..=ctx.mode().max_degree() {
        let d = y.divided_ad(ctx.e(), ell as u32)?;
        let hl = alg.factorial_poly(ctx.h(), &bb, ell as u32, FactorialKind::Rising);
        out = out.add(&TPoly::monomial(ctx.mode(), d.mul(&hl), ell));
    }
    Ok(out)
}

/// The three twist-transport identities for `D = D_H(x^α)`, power `s`, shift `a`:
/// `(D^s⊗1)F_a = F_{a+s(α_{−k}−α_k)}(D^s⊗1)`,
/// `D^s u_a = u_{a+s(α_k−α_{−k})} Σ d^{(ℓ)}(D^s) h_{1−a}^{⟨ℓ⟩} t^ℓ`,
/// `(1⊗D^s)F_a = Σ (−1)^ℓ F_{a+ℓ}(h_a^{⟨ℓ⟩} ⊗ d^{(ℓ)}(D^s)) t^ℓ`.
pub fn lemma_transport(ctx: &QuantizationContext, alpha: &MultiIndex, s: u32, a: i64) -> Result<Witness> {
    let alg = ctx.algebra();
    let mode = ctx.mode();
    let w = ctx.weight(alpha);
    let ds = alg.generator(*alpha)?.pow(s);
    let one = alg.one();
    let s64 = s as i64;

    let left = constant(ctx, TensorElement::pure(&[&ds, &one]));
    let lhs = left.mul(&twist_f(ctx, a)?);
    let rhs = twist_f(ctx, a - s64 * w)?.mul(&left);
    if let Some(wit) = compare("(D^s⊗1)F_a", &lhs, &rhs) {
        return Ok(Some(wit));
    }

    let field = alg.field();
    let (ua, _) = u_v_closed(alg, ctx.pair(), &field.from_i64(a), mode)?;
    let (ua2, _) = u_v_closed(alg, ctx.pair(), &field.from_i64(a + s64 * w), mode)?;
    let lhs = constant(ctx, ds.clone()).mul(&ua);
    let rhs = ua2.mul(&d_series(ctx, &ds, 1 - a)?);
    if let Some(wit) = compare("D^s u_a", &lhs, &rhs) {
        return Ok(Some(wit));
    }

    let right = constant(ctx, TensorElement::pure(&[&one, &ds]));
    let lhs = right.mul(&twist_f(ctx, a)?);
    let mut rhs = TPoly::zero(mode, &TensorElement::zero(alg, 2));
    for ell in 0..=mode.max_degree() {
        let d = ds.divided_ad(ctx.e(), ell as u32)?;
        if d.is_zero() {
            continue;
        }
        let hl = alg.factorial_poly(ctx.h(), &field.from_i64(a), ell as u32, FactorialKind::Rising);
        let mut term = twist_f(ctx, a + ell as i64)?
            .mul(&TPoly::monomial(mode, TensorElement::pure(&[&hl, &d]), ell));
        if ell % 2 == 1 {
            term = term.neg();
        }
        rhs = rhs.add(&term);
    }
    Ok(compare("(1⊗D^s)F_a", &lhs, &rhs))
}

/// `Δ(D^s)` as an algebra map against the double sum, and `S(D^s)`
/// as an anti-algebra map against its closed form.
pub fn power_lemma(ctx: &QuantizationContext, alpha: &MultiIndex, s: u32) -> Result<Witness> {
    let alg = ctx.algebra();
    let mode = ctx.mode();
    let field = alg.field();
    let w = ctx.weight(alpha);
    let x = alg.generator(*alpha)?;
    let ds = x.pow(s);
    let lhs = ctx.delta_element(&ds)?;
    let mut rhs = TPoly::zero(mode, &TensorElement::zero(alg, 2));
    for j in 0..=s {
        let dj = x.pow(j);
        let rest = x.pow(s - j);
        for ell in 0..=mode.max_degree() {
            let d = rest.divided_ad(ctx.e(), ell as u32)?;
            if d.is_zero() {
                continue;
            }
            let hl = alg.factorial_poly(ctx.h(), &field.zero(), ell as u32, FactorialKind::Rising);
            let right = ctx.power(j as i64 * w - ell as i64).mul(&constant(ctx, d));
            let c = field.from_bigint(&binomial(s as u64, j as u64));
            let c = if ell % 2 == 1 { -c } else { c };
            let term = tensor_series(&constant(ctx, dj.mul(&hl)), &right)
                .mul(&TPoly::monomial(mode, TensorElement::one(alg, 2), ell))
                .scale(&c);
            rhs = rhs.add(&term);
        }
    }
    if let Some(wit) = compare(&format!("Δ(D^{s})"), &lhs, &rhs) {
        return Ok(Some(wit));
    }
    let sign = field.from_i64(if s.is_multiple_of(2) { 1 } else { -1 });
    let srhs = ctx.power(-(s as i64) * w).mul(&d_series(ctx, &ds, 1)?).scale(&sign);
    Ok(compare(&format!("S(D^{s})"), &ctx.antipode_element(&ds)?, &srhs))
}

/// `𝓕_a F_b = 1 ⊗ (1−et)^{a−b}` and `v_a u_b = (1−et)^{−(a+b)}`.
pub fn twist_inverse_grid(ctx: &QuantizationContext, a: i64, b: i64) -> Result<Witness> {
    let alg = ctx.algebra();
    let field = alg.field();
    let mode = ctx.mode();
    let cf = build_twist(alg, ctx.pair(), &field.from_i64(a), TwistVariant::CurlyF, mode)?;
    let f = build_twist(alg, ctx.pair(), &field.from_i64(b), TwistVariant::F, mode)?;
    let want = one_tensor(&ctx.power(a - b));
    if let Some(w) = compare("𝓕_a F_b", &cf.body.mul(&f.body), &want) {
        return Ok(Some(w));
    }
    let (_, va) = u_v_closed(alg, ctx.pair(), &field.from_i64(a), mode)?;
    let (ub, _) = u_v_closed(alg, ctx.pair(), &field.from_i64(b), mode)?;
    Ok(compare("v_a u_b", &va.mul(&ub), &ctx.power(-(a + b))))
}

/// Basis indices of a context with `Σ|α_j| ≤ bound` (characteristic 0)
/// or all of `H(2n;1)`.
pub fn generators(lie: LieContext, bound: i64) -> Vec<MultiIndex> {
    match lie {
        LieContext::ModularH { n, p } => crate::modular::basis_indices(n, p),
        LieContext::FullH { n } => MultiIndex::all_with_abs_degree(n, bound, false),
        LieContext::HPlus { n } => MultiIndex::all_with_abs_degree(n, bound, true),
    }
    .into_iter()
    .filter(|a| lie.admits(a))
    .collect()
}
