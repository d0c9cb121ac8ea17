//! Verification suites assembled from independent cells.

use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::UAlgebra;
use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::lie::{toral_index, LieContext, TwistPair};
use crate::modular;
use crate::params;
use crate::quant::checks::{self, generators};
use crate::quant::coeffs::{AForm, BbarForm};
use crate::quant::sp2n;
use crate::quant::{QuantizationContext, Variant};
use crate::report::Cell;
use crate::scalar::Field;
use crate::series::TMode;
use crate::twist::{build_twist, distinctness_probe, product_twist, verify_cocycle, TwistVariant, TwistedStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Cocycle,
    Char0ClosedForms,
    ModularReduction,
    UtqHopf,
    Horizontal,
    Jordanian,
    Dims,
}

impl Suite {
    pub const NAMES: [&'static str; 8] =
        ["all", "cocycle", "char0-closed-forms", "modular-reduction", "utq-hopf", "horizontal", "jordanian", "dims"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "all" => Suite::All,
            "cocycle" => Suite::Cocycle,
            "char0-closed-forms" => Suite::Char0ClosedForms,
            "modular-reduction" => Suite::ModularReduction,
            "utq-hopf" => Suite::UtqHopf,
            "horizontal" => Suite::Horizontal,
            "jordanian" => Suite::Jordanian,
            "dims" => Suite::Dims,
            _ => return Err(Error::InvalidParameters(format!("unknown suite {s}"))),
        })
    }
}

/// Overrides for the default parameter grids; `None` keeps the defaults.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n: Option<usize>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub order: Option<usize>,
    pub k: Option<i32>,
    pub m: Option<i32>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n: None, p: None, q: None, order: None, k: None, m: None, seed: 0x5eed, samples: 200 }
    }
}

impl SuiteConfig {
    fn validate(&self) -> Result<()> {
        if let Some(p) = self.p {
            if p < 3 || !crate::scalar::is_prime(p) {
                return Err(Error::InvalidParameters(format!("p must be a prime >= 3, got {p}")));
            }
            if let Some(q) = self.q {
                if q >= p {
                    return Err(Error::InvalidParameters(format!("q must be below p, got q={q}")));
                }
            }
        }
        if self.n == Some(0) || self.n.is_some_and(|n| n > crate::index::MAX_RANK) {
            return Err(Error::InvalidParameters("n out of range".into()));
        }
        if let (Some(n), Some(k)) = (self.n, self.k) {
            if k < 1 || k as usize > n {
                return Err(Error::InvalidParameters(format!("need 1 <= k <= n, got k={k}")));
            }
        }
        if let Some(m) = self.m {
            let k = self.k.unwrap_or(1);
            if m == 0 || m.abs() == k {
                return Err(Error::InvalidParameters(format!("m must avoid 0 and ±k, got m={m}")));
            }
            if self.n.is_some_and(|n| n < 2 || m.unsigned_abs() as usize > n) {
                return Err(Error::InvalidParameters("horizontal twists need n >= 2 and |m| <= n".into()));
            }
        }
        Ok(())
    }
}

/// All cells of a suite.
pub fn cells(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Cell>> {
    cfg.validate()?;
    Ok(match suite {
        Suite::All => {
            let mut out = vec![];
            for s in [
                Suite::Cocycle,
                Suite::Char0ClosedForms,
                Suite::ModularReduction,
                Suite::UtqHopf,
                Suite::Horizontal,
                Suite::Jordanian,
                Suite::Dims,
            ] {
                out.extend(cells(s, cfg)?);
            }
            out
        }
        Suite::Cocycle => cocycle(cfg)?,
        Suite::Char0ClosedForms => char0_closed_forms(cfg)?,
        Suite::ModularReduction => modular_reduction(cfg)?,
        Suite::UtqHopf => utq_hopf(cfg)?,
        Suite::Horizontal => horizontal(cfg)?,
        Suite::Jordanian => jordanian(cfg)?,
        Suite::Dims => dims(cfg)?,
    })
}

fn curly_f(alg: &UAlgebra, pair: &TwistPair, mode: TMode) -> Result<crate::twist::TwistElement> {
    build_twist(alg, pair, &alg.field().zero(), TwistVariant::CurlyF, mode)
}

/// Cocycle identity, the `𝓕_a F_b` / `v_a u_b` grid, distinctness of
/// product twists, and the corrupted-twist control.
pub fn cocycle(cfg: &SuiteConfig) -> Result<Vec<Cell>> {
    let mut out = vec![];
    let mut plan: Vec<(usize, i32, Option<i32>, usize)> = vec![];
    match cfg.n {
        Some(n) => {
            let k = cfg.k.unwrap_or(1);
            plan.push((n, k, None, cfg.order.unwrap_or(5)));
            if n >= 2 {
                let m = cfg.m.unwrap_or(if k == 2 { 1 } else { 2 });
                plan.push((n, k, Some(m), cfg.order.unwrap_or(4)));
            }
        }
        None => {
            let o = cfg.order;
            plan.extend([(1, 1, None, o.unwrap_or(5)), (2, 1, None, o.unwrap_or(5)), (2, 1, Some(2), o.unwrap_or(4))]);
        }
    }
    for (n, k, m, order) in plan {
        let ctx = LieContext::HPlus { n };
        let pair = match m {
            Some(m) => TwistPair::horizontal(ctx, k, m)?,
            None => TwistPair::vertical(ctx, k)?,
        };
        let kind = if m.is_some() { "horizontal" } else { "vertical" };
        let p = params! {"n" => n, "k" => k, "m" => m, "N" => order};
        out.push(Cell::new("cocycle", format!("{kind} twist on U(H+)"), p.clone(), move || {
            let alg = UAlgebra::new(ctx);
            let f = curly_f(&alg, &pair, TMode::Truncated(order))?;
            if !f.satisfies_counit() {
                return Ok(Some("counit condition fails".into()));
            }
            let rep = verify_cocycle(&f);
            Ok(rep.first_difference.map(|d| format!("cocycle sides differ at t^{d}")))
        }));
    }

    out.push(Cell::new(
        "cocycle-negative-control",
        "vertical twist on U(H+), degree-1 coefficient doubled",
        params! {"n" => 1, "k" => 1, "N" => 3},
        || {
            let alg = UAlgebra::new(LieContext::HPlus { n: 1 });
            let pair = TwistPair::vertical(alg.context(), 1)?;
            let f = curly_f(&alg, &pair, TMode::Truncated(3))?;
            let bad = f.corrupted(1, &alg.field().from_i64(2));
            Ok(match verify_cocycle(&bad).first_difference {
                Some(2) => None,
                Some(d) => Some(format!("corruption detected at t^{d}, expected t^2")),
                None => Some("corrupted twist passed the cocycle check".into()),
            })
        },
    ));

    if cfg.n.is_none_or(|n| n == 1) {
        let order = cfg.order.unwrap_or(6);
        let qc = QuantizationContext::new(Variant::Char0Vertical { k: 1 }, 1, order)?;
        for a in -1..=2i64 {
            for b in -1..=2i64 {
                let qc = qc.clone();
                out.push(Cell::new(
                    "twist-inverse-grid",
                    "vertical twist on U(H+)",
                    params! {"n" => 1, "k" => 1, "N" => order, "a" => a, "b" => b},
                    move || checks::twist_inverse_grid(&qc, a, b),
                ));
            }
        }
    }

    if cfg.n.is_none_or(|n| n == 2) {
        out.push(Cell::new(
            "distinctness",
            "F(1) vs F(1)F(2) on U(H+)",
            params! {"n" => 2, "probe" => "DH[0,1;0,1]", "N" => 2},
            || {
                let alg = UAlgebra::new(LieContext::HPlus { n: 2 });
                let mode = TMode::Truncated(2);
                let f1 = curly_f(&alg, &TwistPair::vertical(alg.context(), 1)?, mode)?;
                let f2 = curly_f(&alg, &TwistPair::vertical(alg.context(), 2)?, mode)?;
                let s1 = TwistedStructure::new(&f1)?;
                let s12 = TwistedStructure::new(&product_twist(&f1, &f2)?)?;
                let probe = alg.generator(toral_index(2, 2))?;
                let rep = distinctness_probe(&s1, &s12, &probe);
                Ok(match rep.first_difference {
                    Some(1) => None,
                    Some(d) => Some(format!("first difference at t^{d}, expected t^1")),
                    None => Some("coproducts agree".into()),
                })
            },
        ));
    }
    Ok(out)
}

/// Closed forms against twisting, on the Laurent algebra in rank 1 and
/// the positive part in rank 2.
pub fn char0_closed_forms(cfg: &SuiteConfig) -> Result<Vec<Cell>> {
    let mut out = vec![];
    let order = cfg.order.unwrap_or(4);
    let plan: Vec<(LieContext, i64)> = match cfg.n {
        Some(n) => vec![(LieContext::FullH { n }, if n == 1 { 4 } else { 2 })],
        None => vec![(LieContext::FullH { n: 1 }, 4), (LieContext::HPlus { n: 2 }, 3)],
    };
    for (lie, bound) in plan {
        let k = cfg.k.unwrap_or(1);
        let qc = QuantizationContext::on(Variant::Char0Vertical { k }, lie, order)?;
        let f = curly_f(qc.algebra(), qc.pair(), qc.mode())?;
        let s = Arc::new(TwistedStructure::new(&f)?);
        for alpha in generators(lie, bound) {
            let (qc, s) = (qc.clone(), s.clone());
            let p = params! {"n" => lie.rank(), "k" => k, "N" => order, "alpha" => alpha.to_string()};
            let qc2 = qc.clone();
            out.push(Cell::new("closed-vs-twist", format!("vertical on {lie}"), p.clone(), move || {
                checks::closed_vs_conjugation(&qc, &s, &alpha)
            }));
            out.push(Cell::new("t0-specialization", format!("vertical on {lie}"), p, move || {
                checks::specialization_zero(&qc2, &alpha)
            }));
        }
    }
    Ok(out)
}

/// Characteristic-zero coefficients pushed through the reduction against
/// the modular family, plus the modular family against brackets.
pub fn modular_reduction(cfg: &SuiteConfig) -> Result<Vec<Cell>> {
    let mut out = vec![];
    let n = cfg.n.unwrap_or(1);
    let k = cfg.k.unwrap_or(1);
    let primes: Vec<u32> = cfg.p.map(|p| vec![p]).unwrap_or_else(|| vec![3, 5]);
    let char0 = QuantizationContext::new(Variant::Char0Vertical { k }, n, 1)?;
    for p in primes {
        let modq = QuantizationContext::new(Variant::ModularUtVertical { k, p }, n, p as usize - 1)?;
        for alpha in modular::basis_indices(n, p) {
            let (char0, modq) = (char0.clone(), modq.clone());
            out.push(Cell::new(
                "reduction-commutes",
                format!("vertical, H+ to H(2n;1) over F_{p}"),
                params! {"n" => n, "k" => k, "p" => p, "alpha" => alpha.to_string()},
                move || {
                    for ell in 0..p as usize {
                        let y = char0.d_ell_basis(&alpha, ell)?;
                        let inv = Field::Rational.from_bigint(&alpha.factorial()).inverse()?;
                        let reduced = modular::reduce_to_modular(&y.scale(&inv), p)?;
                        let direct = modq.d_ell_basis(&alpha, ell)?;
                        if reduced != direct {
                            return Ok(Some(format!("l={ell}: reduced {reduced}, modular family {direct}")));
                        }
                        if let Some(w) = checks::coefficient_oracle(&modq, &alpha, ell)? {
                            return Ok(Some(w));
                        }
                    }
                    Ok(None)
                },
            ));
        }
        let modq2 = modq.clone();
        out.push(Cell::new(
            "toral-special-value",
            format!("vertical, H(2n;1) over F_{p}"),
            params! {"n" => n, "k" => k, "p" => p},
            move || {
                for i in 1..=n as i32 {
                    if let Some(w) = checks::toral_special(&modq2, i)? {
                        return Ok(Some(w));
                    }
                }
                Ok(None)
            },
        ));
        if n == 1 {
            let ut = QuantizationContext::new(Variant::ModularUtVertical { k, p }, n, 3)?;
            for alpha in modular::basis_indices(n, p) {
                let ut = ut.clone();
                out.push(Cell::new(
                    "ut-coassociativity",
                    format!("vertical U_t over F_{p}, truncated"),
                    params! {"n" => n, "k" => k, "p" => p, "N" => 3, "alpha" => alpha.to_string()},
                    move || checks::coassociativity(&ut, &alpha),
                ));
            }
        }
    }
    Ok(out)
}

fn utq_cells(qc: &QuantizationContext, label: &str, with_pairs: bool) -> Vec<Cell> {
    let mut out = vec![];
    let v = qc.variant();
    let n = qc.rank();
    let (p, q) = (v.prime().unwrap_or(0), v.q().unwrap_or(0));
    let base = || params! {"n" => n, "k" => v.k(), "m" => v.m(), "p" => p, "q" => q};
    let gens = generators(qc.lie(), 0);
    for alpha in &gens {
        let alpha = *alpha;
        let mut prm = base();
        prm.insert("alpha".into(), serde_json::json!(alpha.to_string()));
        type Check = fn(&QuantizationContext, &MultiIndex) -> Result<Option<String>>;
        let list: [(&str, Check); 5] = [
            ("hopf-ideal-stability", checks::hopf_ideal_stability),
            ("coassociativity", checks::coassociativity),
            ("antipode-axiom", checks::antipode_axiom),
            ("counit-axiom", checks::counit_axiom),
            ("t0-specialization", checks::specialization_zero),
        ];
        for (id, f) in list {
            let qc = qc.clone();
            out.push(Cell::new(id, label.to_string(), prm.clone(), move || f(&qc, &alpha)));
        }
    }
    if with_pairs {
        for a in &gens {
            for b in &gens {
                let (a, b, qc) = (*a, *b, qc.clone());
                let mut prm = base();
                prm.insert("alpha".into(), serde_json::json!(a.to_string()));
                prm.insert("beta".into(), serde_json::json!(b.to_string()));
                out.push(Cell::new("bracket-compatibility", label.to_string(), prm, move || {
                    checks::well_definedness(&qc, &a, &b)
                }));
            }
        }
        if q == 1 {
            for t0 in 0..p as i64 {
                let qc = qc.clone();
                let gens = gens.clone();
                let mut prm = base();
                prm.insert("t0".into(), serde_json::json!(t0));
                out.push(Cell::new("specialized-bracket", label.to_string(), prm, move || {
                    let t = qc.algebra().field().from_i64(t0);
                    for a in &gens {
                        for b in &gens {
                            if let Some(w) = checks::specialized_bracket(&qc, &t, a, b)? {
                                return Ok(Some(w));
                            }
                        }
                    }
                    Ok(None)
                }));
            }
        }
    }
    let qc2 = qc.clone();
    out.push(Cell::new("radford", label.to_string(), base(), move || checks::radford(&qc2)));
    out
}

/// Hopf axioms of the vertical `u_{t,q}` on every generator.
pub fn utq_hopf(cfg: &SuiteConfig) -> Result<Vec<Cell>> {
    let n = cfg.n.unwrap_or(1);
    let p = cfg.p.unwrap_or(3);
    let k = cfg.k.unwrap_or(1);
    let qs: Vec<u32> = cfg.q.map(|q| vec![q]).unwrap_or_else(|| vec![0, 1]);
    let mut out = vec![];
    for q in qs {
        let qc = QuantizationContext::new(Variant::ModularUtqVertical { k, p, q }, n, 0)?;
        out.extend(utq_cells(&qc, &format!("vertical u_tq over F_{p}[t]/(t^{p}-{q}t)"), true));
    }
    if (n, p) == (1, 3) {
        out.push(Cell::new("basis-count", "u(H(2;1)) over F_3", params! {"n" => 1, "p" => 3}, || {
            let alg = UAlgebra::restricted(LieContext::ModularH { n: 1, p: 3 })?;
            let count = alg.restricted_basis_count()?;
            Ok((count != 2187).then(|| format!("counted {count} monomials, expected 3^7 = 2187")))
        }));
    }
    Ok(out)
}

fn sample_basis(n: usize, p: u32, seed: u64, samples: usize) -> Vec<MultiIndex> {
    let basis = modular::basis_indices(n, p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| *basis.choose(&mut rng).expect("nonempty basis")).collect()
}

/// Horizontal coefficient families, the transport lemmas, the special
/// values and the Hopf-ideal property of the horizontal `u_{t,q}`.
pub fn horizontal(cfg: &SuiteConfig) -> Result<Vec<Cell>> {
    let n = cfg.n.unwrap_or(2);
    if n < 2 {
        return Err(Error::InvalidParameters("horizontal twists need n >= 2".into()));
    }
    let p = cfg.p.unwrap_or(3);
    let k = cfg.k.unwrap_or(1);
    let m = cfg.m.unwrap_or(2);
    let order = cfg.order.unwrap_or(3);
    let mut out = vec![];
    let ut = QuantizationContext::new(Variant::ModularUtHorizontal { k, m, p }, n, p as usize - 1)?;
    let char0 = QuantizationContext::new(Variant::Char0Horizontal { k, m }, n, order)?;
    let laurent = QuantizationContext::on(Variant::Char0Horizontal { k, m }, LieContext::FullH { n }, order)?;
    let hp = || params! {"n" => n, "k" => k, "m" => m, "p" => p};

    // reduced families against generating-function brackets
    let mut sampled = sample_basis(n, p, cfg.seed, cfg.samples);
    let embeddable: Vec<MultiIndex> = modular::basis_indices(n, p)
        .into_iter()
        .filter(|a| (2..=n as i32).all(|i| a.get(i) == 0 && a.get(-i) == 0))
        .collect();
    sampled.extend(embeddable.iter().copied());
    let all_ell = move |qc: &QuantizationContext, alpha: &MultiIndex| -> Result<Option<String>> {
        for ell in 0..=qc.max_ell() {
            if let Some(w) = checks::coefficient_oracle(qc, alpha, ell)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    };
    for (i, alpha) in sampled.iter().enumerate() {
        let (alpha, ut) = (*alpha, ut.clone());
        let mut prm = hp();
        prm.insert("alpha".into(), serde_json::json!(alpha.to_string()));
        prm.insert("sample".into(), serde_json::json!(i));
        out.push(Cell::new("horizontal-family-mod-p", "H(2n;1), generating-function brackets", prm, move || {
            all_ell(&ut, &alpha)
        }));
    }
    let gens0 = generators(LieContext::HPlus { n }, 3);
    for alpha in gens0.clone() {
        let char0 = char0.clone();
        let mut prm = params! {"n" => n, "k" => k, "m" => m, "N" => order};
        prm.insert("alpha".into(), serde_json::json!(alpha.to_string()));
        out.push(Cell::new("horizontal-family-char0", "H+, repeated brackets", prm, move || {
            all_ell(&char0, &alpha)
        }));
    }

    // the two readings of the reduced B coefficient
    let all_basis = modular::basis_indices(n, p);
    {
        let (ut_p, basis) = (ut.clone(), all_basis.clone());
        out.push(Cell::new("bbar-proof-form", "H(2n;1), all basis vectors", hp(), move || {
            for a in &basis {
                if let Some(w) = all_ell(&ut_p, a)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }));
        let (stmt, basis) = (ut.with_bbar(BbarForm::Statement), all_basis.clone());
        out.push(Cell::expect_failure("bbar-statement-form-refuted", "H(2n;1), all basis vectors", hp(), move || {
            for a in &basis {
                if let Some(w) = all_ell(&stmt, a)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }));
    }

    // A coefficients without the alternating sign
    for (label, qc, pool) in [
        ("mod p", ut.with_aform(AForm::Unsigned), all_basis.clone()),
        ("char 0", char0.with_aform(AForm::Unsigned), gens0.clone()),
    ] {
        out.push(Cell::expect_failure("unsigned-a-refuted", format!("horizontal family, {label}"), hp(), move || {
            for a in &pool {
                if let Some(w) = all_ell(&qc, a)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }));
    }

    // wrong sign in place of σ(m)
    for (label, qc, pool) in [
        ("mod p", ut.clone(), all_basis.clone()),
        ("char 0", char0.clone(), gens0.clone()),
    ] {
        let s = crate::lie::sigma(m)?;
        let bad = qc.with_sign(-s);
        out.push(Cell::expect_failure(
            "sigma-negative-control",
            format!("horizontal family with sign -σ(m), {label}"),
            hp(),
            move || {
                for a in &pool {
                    if let Some(w) = all_ell(&bad, a)? {
                        return Ok(Some(w));
                    }
                }
                Ok(None)
            },
        ));
    }

    // (ad D)^s e on the Laurent algebra
    for alpha in generators(LieContext::FullH { n }, 3) {
        let laurent = laurent.clone();
        let prm = params! {"n" => n, "k" => k, "m" => m, "alpha" => alpha.to_string()};
        out.push(Cell::new("ad-power-of-e", "H (Laurent)", prm, move || {
            for s in 1..=3 {
                if let Some(w) = checks::lemma_ad_power(&laurent, &alpha, s)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }));
    }

    // transport identities, coproduct of powers and closed form vs twist
    let transport_set: Vec<MultiIndex> = generators(LieContext::HPlus { n }, 2);
    for alpha in transport_set.clone() {
        for a in [0i64, 1] {
            let char0 = char0.clone();
            let prm = params! {"n" => n, "k" => k, "m" => m, "N" => order, "a" => a, "alpha" => alpha.to_string()};
            out.push(Cell::new("transport-identities", "U(H+)", prm, move || {
                for s in 1..=3 {
                    if let Some(w) = checks::lemma_transport(&char0, &alpha, s, a)? {
                        return Ok(Some(format!("s={s}: {w}")));
                    }
                }
                Ok(None)
            }));
        }
        let char0b = char0.clone();
        let prm = params! {"n" => n, "k" => k, "m" => m, "N" => order, "alpha" => alpha.to_string()};
        out.push(Cell::new("coproduct-of-powers", "U(H+)", prm, move || {
            for s in 1..=3 {
                if let Some(w) = checks::power_lemma(&char0b, &alpha, s)? {
                    return Ok(Some(format!("s={s}: {w}")));
                }
            }
            Ok(None)
        }));
    }
    let conj_order = cfg.order.unwrap_or(4);
    let conj = QuantizationContext::new(Variant::Char0Horizontal { k, m }, n, conj_order)?;
    let s = Arc::new(TwistedStructure::new(&curly_f(conj.algebra(), conj.pair(), conj.mode())?)?);
    for alpha in transport_set {
        let (conj, s) = (conj.clone(), s.clone());
        let prm = params! {"n" => n, "k" => k, "m" => m, "N" => conj_order, "alpha" => alpha.to_string()};
        out.push(Cell::new("closed-vs-twist", "horizontal on U(H+)", prm, move || {
            checks::closed_vs_conjugation(&conj, &s, &alpha)
        }));
    }

    // special values: toral vectors and p-th powers, both signs of m
    for mm in [m, -m] {
        let qc = QuantizationContext::new(Variant::ModularUtHorizontal { k, m: mm, p }, n, p as usize - 1)?;
        let qc2 = qc.clone();
        let prm = params! {"n" => n, "k" => k, "m" => mm, "p" => p};
        out.push(Cell::new("toral-special-value", "H(2n;1)", prm.clone(), move || {
            for i in 1..=n as i32 {
                if let Some(w) = checks::toral_special(&qc2, i)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }));
        let basis = all_basis.clone();
        out.push(Cell::new("pth-power-special-value", "unrestricted U(H(2n;1))", prm, move || {
            for a in &basis {
                if let Some(w) = checks::pth_power_special(&qc, a)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }));
    }

    // Hopf ideal in the restricted quotient
    let qs: Vec<u32> = cfg.q.map(|q| vec![q]).unwrap_or_else(|| vec![0, 1]);
    for q in qs {
        let qc = QuantizationContext::new(Variant::ModularUtqHorizontal { k, m, p, q }, n, 0)?;
        out.extend(utq_cells(&qc, &format!("horizontal u_tq over F_{p}[t]/(t^{p}-{q}t)"), false));
        let sign_case = QuantizationContext::new(Variant::ModularUtqHorizontal { k, m: -m, p, q }, n, 0)?;
        let alpha = toral_index(n, m.abs());
        out.push(Cell::new(
            "hopf-ideal-stability",
            format!("horizontal u_tq, sign case m={}", -m),
            params! {"n" => n, "k" => k, "m" => -m, "p" => p, "q" => q, "alpha" => alpha.to_string()},
            move || checks::hopf_ideal_stability(&sign_case, &alpha),
        ));
    }
    Ok(out)
}

/// `sp2n_map` and the stored `sp_4` coproduct table.
pub fn jordanian(cfg: &SuiteConfig) -> Result<Vec<Cell>> {
    let mut out = vec![];
    let p = cfg.p.unwrap_or(5);
    for lie in [LieContext::HPlus { n: 2 }, LieContext::ModularH { n: 2, p }] {
        out.push(Cell::new("sp2n-homomorphism", format!("degree-zero part of {lie}"), params! {"n" => 2}, move || {
            Ok(sp2n::check_homomorphism(lie)?.map(|(a, b)| format!("fails on {a}, {b}")))
        }));
    }
    let mut ctxs = vec![QuantizationContext::new(Variant::Char0Horizontal { k: 1, m: -2 }, 2, 4)?];
    let qs: Vec<u32> = cfg.q.map(|q| vec![q]).unwrap_or_else(|| vec![0, 1]);
    for q in qs {
        ctxs.push(QuantizationContext::new(Variant::JordanianSp2n { k: 1, m: -2, p, q }, 2, 0)?);
    }
    for qc in ctxs {
        for (id, table) in [("sp4-table-row", sp2n::SP4_TABLE), ("sp4-table-row-corrected", sp2n::SP4_TABLE_CORRECTED)] {
            for (i, row) in table.iter().enumerate() {
                let qc = qc.clone();
                let v = qc.variant();
                out.push(Cell::new(
                    id,
                    format!("{v}, {}", qc.mode()),
                    params! {"row" => i + 1, "label" => row.label, "p" => v.prime(), "q" => v.q()},
                    move || {
                        let reports = sp2n::jordanian_table(&qc, table)?;
                        let r = &reports[i];
                        Ok((!r.matches).then(|| r.detail.clone().unwrap_or_default()))
                    },
                ));
            }
        }
    }
    Ok(out)
}

/// Dimension of `H(2n;1)` and of the restricted enveloping algebra.
pub fn dims(cfg: &SuiteConfig) -> Result<Vec<Cell>> {
    let plan: Vec<(usize, u32)> = match (cfg.n, cfg.p) {
        (None, None) => vec![(1, 3), (1, 5), (2, 3)],
        (n, p) => vec![(n.unwrap_or(1), p.unwrap_or(3))],
    };
    let mut out = vec![];
    for (n, p) in plan {
        let dim = modular::dimension(n, p);
        let formula = modular::dimension_formula(n, p);
        out.push(Cell::new(
            "dim-H",
            format!("H({};1) over F_{p}", 2 * n),
            params! {"n" => n, "p" => p, "enumerated" => dim, "formula" => formula.to_string()},
            move || Ok((num_bigint::BigInt::from(dim) != formula).then(|| format!("enumerated {dim}, formula {formula}"))),
        ));
        let counted = (n, p) == (1, 3);
        out.push(Cell::new(
            "dim-u",
            format!("u(H({};1)) over F_{p}", 2 * n),
            params! {
                "n" => n,
                "p" => p,
                "method" => if counted { "count" } else { "formula" },
                "monomial_basis" => format!("{p}^{dim}"),
                "t_ring_factor" => p,
                "u_tq_over_K" => format!("{p}^{}", dim + 1),
            },
            move || {
                if !counted {
                    return Ok(None);
                }
                let alg = UAlgebra::restricted(LieContext::ModularH { n, p })?;
                let c = alg.restricted_basis_count()?;
                let want = (p as usize).pow(dim as u32);
                Ok((c != want).then(|| format!("counted {c}, expected {want}")))
            },
        ));
    }
    Ok(out)
}
