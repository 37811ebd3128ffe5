use std::sync::Arc;

use macdonald_hecke::coeffs::{string_quotient, GroupAlgebraElement, Monomial, Namespace, ParamScalar, TermJson};
use macdonald_hecke::rootdata::Weight;
use macdonald_hecke::Rat;
use proptest::prelude::*;

fn ns() -> Arc<Namespace> {
    Namespace::new(["t1", "t2"])
}

fn scalar() -> impl Strategy<Value = ParamScalar> {
    prop::collection::vec(((-3i32..=3, -3i32..=3), -4i64..=4, 1i64..=3), 1..3).prop_map(|terms| {
        terms.into_iter().fold(ParamScalar::zero(2), |acc, ((a, b), n, d)| {
            &acc + &ParamScalar::term(Monomial(vec![a, b].into()), Rat::new(n.into(), d.into()))
        })
    })
}

fn element() -> impl Strategy<Value = GroupAlgebraElement> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, 2), scalar()), 0..4).prop_map(|terms| {
        let mut f = GroupAlgebraElement::zero(&ns());
        for (w, c) in terms {
            f.add_term(Weight(w), c);
        }
        f
    })
}

fn root() -> impl Strategy<Value = Weight> {
    prop::sample::select(vec![Weight(vec![2, -1]), Weight(vec![-1, 2]), Weight(vec![1, 1]), Weight(vec![0, 2])])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap().try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
        let one = GroupAlgebraElement::exp(&ns(), Weight(vec![0, 0]));
        prop_assert_eq!(a.try_mul(&one).unwrap(), a.clone());
        prop_assert!(a.terms().values().all(|c| !c.is_zero()));
    }

    #[test]
    fn scalar_field_ops(x in scalar(), y in scalar()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(x.eval_one() * y.eval_one(), (&x * &y).eval_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn string_quotient_inverts_multiplication(g in element(), alpha in root(), order in 1i64..=2) {
        let one = GroupAlgebraElement::exp(&ns(), Weight(vec![0, 0]));
        let denom = one.try_sub(&GroupAlgebraElement::exp(&ns(), alpha.scaled(-order))).unwrap();
        let f = g.try_mul(&denom).unwrap();
        prop_assert_eq!(string_quotient(&f, &alpha, order).unwrap(), g);
    }

    #[test]
    fn string_quotient_rejects_inexact(w in prop::collection::vec(-3i64..=3, 2), alpha in root()) {
        let f = GroupAlgebraElement::exp(&ns(), Weight(w));
        prop_assert!(string_quotient(&f, &alpha, 1).is_err());
    }

    #[test]
    fn json_roundtrip(a in element()) {
        let json = serde_json::to_string(&a.to_json().unwrap()).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(GroupAlgebraElement::from_json(&ns(), &back).unwrap(), a);
    }
}
