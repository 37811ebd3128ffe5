mod common;

use macdonald_hecke::coeffs::GroupAlgebraElement;
use macdonald_hecke::rootdata::{CartanType, Weight};
use proptest::prelude::*;

fn datum() -> impl Strategy<Value = (CartanType, usize, &'static str)> {
    prop::sample::select(common::desk_data())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// Any reduced word for `w` gives the same operator as the canonical one.
    #[test]
    fn operator_independent_of_reduced_word((t, n, l) in datum(), word in prop::collection::vec(0usize..3, 1..7), c in prop::collection::vec(-2i64..=2, 2)) {
        let mac = common::engine(t, n, l);
        let g = mac.weyl();
        let word: Vec<usize> = word.into_iter().map(|i| i % (n + 1)).collect();
        let w = g.from_word(&word);
        prop_assume!(g.length(&w) == word.len());
        let lam = Weight(c[..n].to_vec());
        prop_assume!(g.lattice().contains(&lam));
        let f = GroupAlgebraElement::exp(mac.namespace(), lam);
        let ctx = mac.context();
        prop_assert_eq!(ctx.apply_word(&word, &f).unwrap(), ctx.apply_tw(&w, &f).unwrap());
    }

    /// `T_i^{-1}` inverts `T_i`.
    #[test]
    fn inverse_generators((t, n, l) in datum(), i in 1usize..3, c in prop::collection::vec(-3i64..=3, 2)) {
        let mac = common::engine(t, n, l);
        let i = 1 + (i - 1) % n;
        let lam = Weight(c[..n].to_vec());
        prop_assume!(mac.weyl().lattice().contains(&lam));
        let f = GroupAlgebraElement::exp(mac.namespace(), lam);
        let ctx = mac.context();
        prop_assert_eq!(ctx.apply_ti_inv(i, &ctx.apply_generator(i, &f).unwrap()).unwrap(), f);
    }
}
