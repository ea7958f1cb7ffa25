mod common;

use mirrorcat::category::validate_all;
use mirrorcat::constructions::{builtin, deligne_product, pointed, reverse, BUILTIN_NAMES};
use mirrorcat::cyclo::{is_real_positive, CycNumber};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

const ORDERS: &[u32] = &[1, 2, 3, 4, 5, 8, 12, 15, 16, 20];

fn cyc() -> impl Strategy<Value = CycNumber> {
    (0..ORDERS.len(), prop::collection::vec((0i64..40, -6i64..=6, 1i64..=4), 0..5)).prop_map(|(o, terms)| {
        let n = ORDERS[o];
        terms
            .into_iter()
            .fold(CycNumber::zero(), |s, (k, p, q)| s + CycNumber::from_ratio(p, q) * CycNumber::zeta(n, k))
    })
}

proptest! {
    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in cyc(), b in cyc()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        let norm = &a * &a.conjugate();
        prop_assert!(norm.is_self_conjugate());
        prop_assert_eq!(is_real_positive(&norm).unwrap(), !a.is_zero());
    }

    #[test]
    fn lifting_preserves_value(a in cyc(), m in 1u32..4) {
        let target = a.order() * m;
        let lifted = a.lift(target);
        prop_assert_eq!(&lifted, &a);
        prop_assert_eq!(lifted.reduce_order(), a.reduce_order());
        let (x, y) = (a.to_complex(), lifted.to_complex());
        prop_assert!((x - y).norm() < 1e-9);
    }

    #[test]
    fn embedding_is_a_ring_map(a in cyc(), b in cyc()) {
        let p = (&a * &b).to_complex();
        let q = a.to_complex() * b.to_complex();
        prop_assert!((p - q).norm() <= 1e-9 * (1.0 + q.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_move_sequences_are_coherent(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        for name in BUILTIN_NAMES {
            let c = builtin(name).unwrap();
            let d = common::random_diagram(&mut rng, &c);
            if let Err(e) = common::coherence_case(&c, &d, &mut rng) {
                return Err(TestCaseError::fail(format!("{name}: {e}")));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pointed_categories_are_consistent(n in 2u32..=7, q in -6i64..=6, flip in any::<bool>()) {
        let Ok(c) = pointed(n, q, flip) else { return Ok(()) };
        prop_assert!(validate_all(&c).passed(), "{}", validate_all(&c).render());
        prop_assert!(common::dimension_defects(&c).is_empty());
        prop_assert_eq!(reverse(&reverse(&c)), c.clone());
        prop_assert!(validate_all(&reverse(&c)).passed());
    }
}

#[test]
fn dimensions_are_multiplicative() {
    for name in BUILTIN_NAMES {
        let c = builtin(name).unwrap();
        let bad = common::dimension_defects(&c);
        assert!(bad.is_empty(), "{bad:?}");
    }
}

#[test]
fn reverse_is_an_involution() {
    for name in BUILTIN_NAMES {
        let c = builtin(name).unwrap();
        assert_eq!(reverse(&reverse(&c)), c, "{name}");
        assert_eq!(reverse(&c).rank(), c.rank());
    }
}

#[test]
fn small_deligne_products_are_coherent() {
    let cs: Vec<_> = BUILTIN_NAMES.iter().map(|n| builtin(n).unwrap()).collect();
    for (a, b) in common::small_pairs(&cs, 9) {
        let p = deligne_product(&a, &b).unwrap();
        let r = validate_all(&p);
        assert!(r.passed(), "{}", r.render());
        assert!(common::dimension_defects(&p).is_empty());
    }
}

#[test]
fn random_walks_catch_a_negated_associator() {
    let fx = mirrorcat::fixtures::coherence_fixtures().into_iter().find(|f| f.axiom == "pentagon").unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let caught = (0..200).any(|_| {
        let d = common::random_diagram(&mut rng, &fx.category);
        common::coherence_case(&fx.category, &d, &mut rng).is_err()
    });
    assert!(caught, "{} passed every random walk", fx.name);
}
