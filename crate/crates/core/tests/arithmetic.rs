use hquant::index::MultiIndex;
use hquant::lie::{LieContext, TwistPair};
use hquant::scalar::{multi_binomial, reduce_mod_p};
use hquant::{one_minus_et_power, Field, Scalar, TMode, TPoly, UAlgebra};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const PRIMES: [u32; 5] = [3, 5, 7, 11, 13];

fn rational() -> impl Strategy<Value = Scalar> {
    (-60i64..60, 1i64..40).prop_map(|(n, d)| Scalar::rational(n, d))
}

fn residue() -> impl Strategy<Value = Scalar> {
    (prop::sample::select(&PRIMES[..]), any::<i64>()).prop_map(|(p, v)| Field::Prime(p).from_i64(v))
}

// inverse of a mod p by the extended Euclidean algorithm
fn euclid_inverse(a: i64, p: i64) -> Option<i64> {
    let (mut r0, mut r1) = (a.rem_euclid(p), p);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(p))
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn residue_field_axioms(a in residue(), v in any::<i64>(), w in any::<i64>()) {
        let f = a.field();
        let (b, c) = (f.from_i64(v), f.from_i64(w));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn inverse_agrees_with_extended_euclid(p in prop::sample::select(&PRIMES[..]), v in 1i64..10_000) {
        let x = Field::Prime(p).from_i64(v);
        match euclid_inverse(v, p as i64) {
            Some(inv) => prop_assert_eq!(x.inverse().unwrap().to_i64(), Some(inv)),
            None => prop_assert!(x.inverse().is_err()),
        }
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(a in rational(), b in rational(), p in prop::sample::select(&PRIMES[..])) {
        if let (Ok(ra), Ok(rb)) = (reduce_mod_p(&a, p), reduce_mod_p(&b, p)) {
            prop_assert_eq!(reduce_mod_p(&(&a * &b), p).unwrap(), &ra * &rb);
            prop_assert_eq!(reduce_mod_p(&(&a + &b), p).unwrap(), &ra + &rb);
        }
    }

    #[test]
    fn multi_binomial_is_symmetric(a in prop::collection::vec(0i64..6, 4), b in prop::collection::vec(0i64..6, 4)) {
        let (a, b) = (MultiIndex::new(&a), MultiIndex::new(&b));
        prop_assert_eq!(multi_binomial(&a, &b).unwrap(), multi_binomial(&b, &a).unwrap());
    }

    #[test]
    fn series_ring_axioms(
        a in prop::collection::vec(-9i64..9, 6),
        b in prop::collection::vec(-9i64..9, 6),
        c in prop::collection::vec(-9i64..9, 6),
        restricted in any::<bool>(),
    ) {
        let (mode, field) = if restricted {
            (TMode::PTruncated { p: 5, q: 1 }, Field::Prime(5))
        } else {
            (TMode::Truncated(5), Field::Rational)
        };
        let series = |v: &[i64]| {
            let coeffs: Vec<Scalar> = v.iter().take(mode.len()).map(|&x| field.from_i64(x)).collect();
            TPoly::from_coeffs(mode, coeffs)
        };
        let (a, b, c) = (series(&a), series(&b), series(&c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn truncation_is_consistent(s in -4i64..5, n in 1usize..7, cut in 0usize..7) {
        let cut = cut.min(n);
        let alg = UAlgebra::new(LieContext::HPlus { n: 1 });
        let pair = TwistPair::vertical(alg.context(), 1).unwrap();
        let e = alg.from_lie(&pair.e).unwrap();
        let long = one_minus_et_power(&e, s, TMode::Truncated(n)).unwrap();
        let short = one_minus_et_power(&e, s, TMode::Truncated(cut)).unwrap();
        prop_assert_eq!(long.truncate(cut).unwrap(), short);
    }
}

#[test]
fn residue_of_three_halves() {
    let r = reduce_mod_p(&Scalar::Rational(BigRational::new(BigInt::from(3), BigInt::from(2))), 5).unwrap();
    assert_eq!(r, Field::Prime(5).from_i64(4));
}

#[test]
fn f_has_order_p_in_the_restricted_quotient() {
    for q in [0, 1] {
        let alg = UAlgebra::restricted(LieContext::ModularH { n: 1, p: 3 }).unwrap();
        let pair = TwistPair::vertical(alg.context(), 1).unwrap();
        let e = alg.from_lie(&pair.e).unwrap();
        let mode = TMode::PTruncated { p: 3, q };
        let f = one_minus_et_power(&e, -1, mode).unwrap();
        let one = TPoly::constant(mode, alg.one());
        assert_eq!(f.pow(3), one, "q = {q}");
    }
}
