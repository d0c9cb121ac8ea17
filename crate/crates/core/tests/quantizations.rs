use hquant::index::MultiIndex;
use hquant::lie::LieContext;
use hquant::twist::{one_tensor, tensor_series, TwistVariant};
use hquant::{build_twist, QuantizationContext, TPoly, TensorElement, UElement, Variant};
use proptest::prelude::*;

fn contexts() -> Vec<QuantizationContext> {
    vec![
        QuantizationContext::on(Variant::Char0Vertical { k: 1 }, LieContext::FullH { n: 1 }, 3).unwrap(),
        QuantizationContext::new(Variant::ModularUtqVertical { k: 1, p: 3, q: 0 }, 1, 0).unwrap(),
        QuantizationContext::new(Variant::ModularUtqVertical { k: 1, p: 3, q: 1 }, 1, 0).unwrap(),
        QuantizationContext::new(Variant::ModularUtqVertical { k: 1, p: 5, q: 2 }, 1, 0).unwrap(),
    ]
}

fn gens(qc: &QuantizationContext) -> Vec<MultiIndex> {
    match qc.lie() {
        LieContext::ModularH { n, p } => hquant::modular::basis_indices(n, p),
        lie => MultiIndex::all_with_abs_degree(lie.rank(), 2, false).into_iter().filter(|a| !a.is_zero()).collect(),
    }
}

fn word(qc: &QuantizationContext, picks: &[usize]) -> UElement {
    let g = gens(qc);
    let alg = qc.algebra();
    picks.iter().fold(alg.one(), |x, &i| x.mul(&alg.generator(g[i % g.len()]).unwrap()))
}

fn constant_tensor(qc: &QuantizationContext, x: TensorElement) -> TPoly<TensorElement> {
    TPoly::constant(qc.mode(), x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coproduct_is_an_algebra_map(
        c in 0usize..4,
        a in prop::collection::vec(0usize..128, 1..=2),
        b in prop::collection::vec(0usize..128, 1..=2),
    ) {
        let qc = &contexts()[c];
        let (x, y) = (word(qc, &a), word(qc, &b));
        let lhs = qc.delta_element(&x.mul(&y)).unwrap();
        let rhs = qc.delta_element(&x).unwrap().mul(&qc.delta_element(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_reverses_products(
        c in 0usize..4,
        a in prop::collection::vec(0usize..128, 1..=2),
        b in prop::collection::vec(0usize..128, 1..=2),
    ) {
        let qc = &contexts()[c];
        let (x, y) = (word(qc, &a), word(qc, &b));
        let lhs = qc.antipode_element(&x.mul(&y)).unwrap();
        let rhs = qc.antipode_element(&y).unwrap().mul(&qc.antipode_element(&x).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_and_antipode_axioms(c in 0usize..4, a in prop::collection::vec(0usize..128, 1..=2)) {
        let qc = &contexts()[c];
        let x = word(qc, &a);
        let d = qc.delta_element(&x).unwrap();
        let eps = qc.algebra().epsilon0(&x);
        prop_assert_eq!(qc.counit_contract(&d, 0), TPoly::constant(qc.mode(), x.clone()));
        prop_assert_eq!(qc.counit_contract(&d, 1), TPoly::constant(qc.mode(), x.clone()));
        let unit = TPoly::constant(qc.mode(), qc.algebra().scalar(eps));
        prop_assert_eq!(qc.antipode_contract(&d, 0).unwrap(), unit.clone());
        prop_assert_eq!(qc.antipode_contract(&d, 1).unwrap(), unit);
    }
}

#[test]
fn radford_coproduct_and_antipode_of_h() {
    // f^{-1} = 1 − et
    for qc in contexts() {
        let h = TPoly::constant(qc.mode(), qc.h().clone());
        let f = qc.f();
        let delta = tensor_series(&h, &f).add(&one_tensor(&h));
        assert_eq!(qc.delta_element(qc.h()).unwrap(), delta, "{qc:?}");
        let s = h.mul(&qc.power(1)).neg();
        assert_eq!(qc.antipode_element(qc.h()).unwrap(), s, "{qc:?}");
    }
}

#[test]
fn coproduct_is_conjugation_by_the_twist() {
    // Δ(x) = 𝓕 Δ_0(x) 𝓕^{-1}, computed here from the raw twist series
    let qc = &contexts()[0];
    let alg = qc.algebra();
    let twist = build_twist(alg, qc.pair(), &alg.field().zero(), TwistVariant::CurlyF, qc.mode()).unwrap();
    let inv = twist.body.inverse().unwrap();
    for a in gens(qc) {
        let x = alg.generator(a).unwrap();
        let conj = twist.body.mul(&constant_tensor(qc, alg.delta0(&x))).mul(&inv);
        assert_eq!(qc.delta_element(&x).unwrap(), conj, "{a}");
    }
}

#[test]
fn specialization_at_zero_is_the_standard_structure() {
    for qc in contexts() {
        for a in gens(&qc).into_iter().take(20) {
            let x = qc.algebra().generator(a).unwrap();
            let zero = qc.algebra().field().zero();
            assert_eq!(qc.delta_element(&x).unwrap().evaluate(&zero), qc.algebra().delta0(&x));
            assert_eq!(qc.antipode_element(&x).unwrap().evaluate(&zero), qc.algebra().s0(&x));
        }
    }
}
