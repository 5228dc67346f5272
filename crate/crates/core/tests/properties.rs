use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nilpair::decompose::{is_indecomposable, Verdict};
use nilpair::sample::{random_invertible, random_matrix, random_pair};
use nilpair::{
    build_canonical, canonicalize, commutant, nilpotent_jnf, FieldScalar, FieldSpec, JordanType,
    SqMatrix,
};

fn spec_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        prop::sample::select(vec![2u32, 3, 5, 7, 97]).prop_map(|p| FieldSpec::prime(p).unwrap()),
        prop::sample::select(vec![2u32, 3, 5, 13]).prop_map(|p| FieldSpec::quadratic(p).unwrap()),
    ]
}

fn scalar(spec: FieldSpec, raw: (i64, i64)) -> FieldScalar {
    match spec.order() {
        Some(q) => spec.element(raw.0.unsigned_abs() % q),
        None => spec
            .from_ratio(raw.0 % 1000, 1 + raw.1.unsigned_abs() as i64 % 50)
            .unwrap(),
    }
}

fn canon_spec() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(3).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
        Just(FieldSpec::quadratic(3).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(spec in spec_strategy(), a in any::<(i64, i64)>(), b in any::<(i64, i64)>(), c in any::<(i64, i64)>()) {
        let (a, b, c) = (scalar(spec, a), scalar(spec, b), scalar(spec, c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn order_is_total(spec in spec_strategy(), a in any::<(i64, i64)>(), b in any::<(i64, i64)>(), c in any::<(i64, i64)>()) {
        let (a, b, c) = (scalar(spec, a), scalar(spec, b), scalar(spec, c));
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a.cmp(&b) == std::cmp::Ordering::Equal, a == b);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn embedding_is_a_homomorphism(p in prop::sample::select(vec![2u32, 3, 5, 7, 11]), a in 0u64..97, b in 0u64..97) {
        let f = FieldSpec::prime(p).unwrap();
        let (a, b) = (f.element(a % p as u64), f.element(b % p as u64));
        prop_assert_eq!((&a + &b).embed().unwrap(), &a.embed().unwrap() + &b.embed().unwrap());
        prop_assert_eq!((&a * &b).embed().unwrap(), &a.embed().unwrap() * &b.embed().unwrap());
        prop_assert_eq!(f.one().embed().unwrap(), f.extend_to_quadratic().unwrap().one());
    }

    #[test]
    fn inverse_and_char_poly(spec in canon_spec(), n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_invertible(n, spec, &mut rng);
        let m = random_matrix(n, spec, &mut rng);
        prop_assert!((&x * &x.inverse().unwrap()).is_identity());
        prop_assert_eq!(m.conjugate_by(&x).unwrap().char_poly(), m.char_poly());
        prop_assert_eq!(m.det().is_zero(), m.rank() < n);
    }

    #[test]
    fn jnf_agrees_with_rank_sequence(spec in canon_spec(), n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pair, _) = random_pair(n, spec, &mut rng);
        for a in [pair.a(), pair.b()] {
            let (p, jt) = nilpotent_jnf(a).unwrap();
            prop_assert_eq!(&jt, &JordanType::from_rank_sequence(a).unwrap());
            prop_assert_eq!(a.conjugate_by(&p).unwrap(), jt.jordan_matrix(spec));
            prop_assert_eq!(commutant(a).dim(), jt.commutant_dim());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn witness_is_exact(spec in canon_spec(), n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pair, cf) = random_pair(n, spec, &mut rng);
        let c = canonicalize(&pair).unwrap();
        prop_assert_eq!(&c.form, &cf);
        prop_assert_eq!(pair.conjugate_by(&c.witness).unwrap(), build_canonical(&cf, spec).unwrap());
    }

    #[test]
    fn invariant_under_conjugation(spec in canon_spec(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pair, _) = random_pair(4, spec, &mut rng);
        let x = random_invertible(4, spec, &mut rng);
        let moved = pair.conjugate_by(&x).unwrap();
        prop_assert_eq!(canonicalize(&pair).unwrap().form, canonicalize(&moved).unwrap().form);
    }

    #[test]
    fn canonicalization_is_idempotent(spec in canon_spec(), n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pair, _) = random_pair(n, spec, &mut rng);
        let c = canonicalize(&pair).unwrap();
        let again = canonicalize(&build_canonical(&c.form, spec).unwrap()).unwrap();
        prop_assert_eq!(again.form, c.form);
        prop_assert!(again.witness.is_identity());
    }

    #[test]
    fn split_certificates_block_diagonalize(spec in canon_spec(), n in 2usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pair, cf) = random_pair(n, spec, &mut rng);
        let cert = is_indecomposable(&pair).unwrap();
        prop_assert_eq!(cert.is_indecomposable(), cf.is_indecomposable());
        if let Verdict::Decomposable { p, sizes } = cert.verdict {
            prop_assert!(pair.conjugate_by(&p).unwrap().is_block_diagonal(&sizes));
        }
    }

    #[test]
    fn commutant_elements_commute(spec in canon_spec(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pair, _) = random_pair(4, spec, &mut rng);
        let c = nilpair::pair_commutant(&pair);
        for x in c.basis() {
            prop_assert!(x.commutes_with(pair.a()) && x.commutes_with(pair.b()));
        }
        prop_assert!(c.contains(&SqMatrix::identity(4, spec)));
    }
}
