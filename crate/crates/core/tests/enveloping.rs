use hquant::index::MultiIndex;
use hquant::lie::LieContext;
use hquant::modular;
use hquant::{Scalar, TensorElement, UAlgebra, UElement};
use proptest::prelude::*;

fn plus_indices() -> Vec<MultiIndex> {
    MultiIndex::all_with_abs_degree(1, 3, true).into_iter().filter(|a| !a.is_zero()).collect()
}

fn algebra(restricted: bool) -> (UAlgebra, Vec<MultiIndex>) {
    if restricted {
        let alg = UAlgebra::restricted(LieContext::ModularH { n: 1, p: 3 }).unwrap();
        (alg, modular::basis_indices(1, 3))
    } else {
        (UAlgebra::new(LieContext::HPlus { n: 1 }), plus_indices())
    }
}

/// A short word in the generators with a small coefficient.
fn word(alg: &UAlgebra, gens: &[MultiIndex], picks: &[usize], c: i64) -> UElement {
    let mut x = alg.scalar(alg.field().from_i64(c));
    for &i in picks {
        x = x.mul(&alg.generator(gens[i % gens.len()]).unwrap());
    }
    x
}

fn words() -> impl Strategy<Value = (bool, Vec<(Vec<usize>, i64)>)> {
    (any::<bool>(), prop::collection::vec((prop::collection::vec(0usize..64, 0..=3), -3i64..=3), 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pbw_product_is_associative((restricted, ws) in words()) {
        let (alg, gens) = algebra(restricted);
        let [x, y, z] = [0, 1, 2].map(|i| word(&alg, &gens, &ws[i].0, ws[i].1));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }

    #[test]
    fn commutator_of_generators_is_the_bracket(restricted in any::<bool>(), i in 0usize..64, j in 0usize..64) {
        let (alg, gens) = algebra(restricted);
        let (a, b) = (gens[i % gens.len()], gens[j % gens.len()]);
        let lie = alg.context();
        let bracket = lie.basis(a).unwrap().bracket(&lie.basis(b).unwrap()).unwrap();
        let (x, y) = (alg.generator(a).unwrap(), alg.generator(b).unwrap());
        prop_assert_eq!(x.commutator(&y), alg.from_lie(&bracket).unwrap());
    }

    #[test]
    fn standard_hopf_structure((restricted, ws) in words()) {
        let (alg, gens) = algebra(restricted);
        let [x, y] = [0, 1].map(|i| word(&alg, &gens, &ws[i].0, ws[i].1));
        let xy = x.mul(&y);
        prop_assert_eq!(alg.delta0(&xy), alg.delta0(&x).mul(&alg.delta0(&y)));
        prop_assert_eq!(alg.s0(&xy), alg.s0(&y).mul(&alg.s0(&x)));
        prop_assert_eq!(alg.epsilon0(&xy), &alg.epsilon0(&x) * &alg.epsilon0(&y));
        // m(S_0 ⊗ Id)Δ_0 = ε_0
        let d = alg.delta0(&x);
        let contracted = d.apply_slot(0, |m| alg.s0_monomial(m)).multiply_out();
        prop_assert_eq!(contracted, alg.scalar(alg.epsilon0(&x)));
        // (Δ_0 ⊗ Id)Δ_0 = (Id ⊗ Δ_0)Δ_0
        prop_assert_eq!(d.delta0_slot(0), d.delta0_slot(1));
        prop_assert_eq!(d.counit_slot(0).into_element(), x);
    }
}

#[test]
fn generators_are_primitive() {
    for restricted in [false, true] {
        let (alg, gens) = algebra(restricted);
        let one = alg.one();
        for a in gens {
            let x = alg.generator(a).unwrap();
            let expected = TensorElement::pure(&[&x, &one]).add(&TensorElement::pure(&[&one, &x]));
            assert_eq!(alg.delta0(&x), expected, "{a}");
            assert_eq!(alg.s0(&x), x.neg());
            assert!(alg.epsilon0(&x).is_zero());
        }
    }
}

#[test]
fn p_th_powers_of_basis_vectors_in_the_restricted_quotient() {
    // x^{[p]} is zero on every non-toral basis vector of H(2;1)
    let alg = UAlgebra::restricted(LieContext::ModularH { n: 1, p: 3 }).unwrap();
    let h = MultiIndex::new(&[1, 1]);
    for a in modular::basis_indices(1, 3) {
        let x = alg.generator(a).unwrap();
        if a == h {
            assert_eq!(x.pow(3), x, "h^p = h");
        } else {
            assert!(x.pow(3).is_zero(), "{a}");
        }
    }
}

#[test]
fn weight_vectors_transport_through_powers_of_e() {
    // e^s h = (h − s·w) e^s when [h, e] = w·e
    for restricted in [false, true] {
        let (alg, _) = algebra(restricted);
        let h = alg.generator(MultiIndex::new(&[1, 1])).unwrap();
        let e_idx = MultiIndex::new(&[0, 2]);
        let e = alg.generator(e_idx).unwrap();
        let w = alg.field().from_i64(e_idx.get(1) - e_idx.get(-1));
        assert_eq!(h.commutator(&e), e.scale(&w));
        for s in 0..4u32 {
            let es = e.pow(s);
            let shift: Scalar = &w * &alg.field().from_i64(s as i64);
            let rhs = h.sub(&alg.scalar(shift)).mul(&es);
            assert_eq!(es.mul(&h), rhs, "s={s}");
        }
    }
}
