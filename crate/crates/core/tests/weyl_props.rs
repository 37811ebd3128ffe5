mod common;

use macdonald_hecke::rootdata::{CartanType, Weight};
use proptest::prelude::*;

fn datum() -> impl Strategy<Value = (CartanType, usize, &'static str)> {
    prop::sample::select(common::desk_data())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reduced_words_rebuild_element((t, n, l) in datum(), word in prop::collection::vec(0usize..3, 0..12)) {
        let g = common::weyl(t, n, l);
        let word: Vec<usize> = word.into_iter().map(|i| i % (n + 1)).collect();
        let w = g.from_word(&word);
        let rw = g.reduced_word(&w);
        prop_assert_eq!(g.compose(&rw), w.clone());
        prop_assert_eq!(rw.word.len(), g.length(&w));
        prop_assert!(g.length(&w) <= word.len());
        prop_assert_eq!(g.length(&w) % 2, word.len() % 2);
    }

    #[test]
    fn concatenation_of_reduced_words((t, n, l) in datum(), a in prop::collection::vec(0usize..3, 0..8), b in prop::collection::vec(0usize..3, 0..8)) {
        let g = common::weyl(t, n, l);
        let (u, v) = (g.from_word(&a.iter().map(|i| i % (n + 1)).collect::<Vec<_>>()), g.from_word(&b.iter().map(|i| i % (n + 1)).collect::<Vec<_>>()));
        let uv = u.mul(&v);
        let (lu, lv, luv) = (g.length(&u), g.length(&v), g.length(&uv));
        prop_assert!(luv <= lu + lv);
        if luv == lu + lv {
            let mut word = g.reduced_word(&u).word;
            word.extend(g.reduced_word(&v).word);
            prop_assert_eq!(g.from_word(&word), uv);
        }
    }

    #[test]
    fn translation_length_additive_on_antidominant((t, n, l) in datum(), a in prop::collection::vec(-4i64..=0, 2), b in prop::collection::vec(-4i64..=0, 2)) {
        let g = common::weyl(t, n, l);
        let (x, y) = (Weight(a[..n].to_vec()), Weight(b[..n].to_vec()));
        prop_assume!(g.lattice().contains(&x) && g.lattice().contains(&y));
        let len = |w: &Weight| g.length(&g.translation(w).unwrap());
        prop_assert_eq!(len(&x.add(&y)), len(&x) + len(&y));
    }

    #[test]
    fn orbit_data_moves_minuscule_to_lambda((t, n, l) in datum(), c in prop::collection::vec(-4i64..=4, 2)) {
        let g = common::weyl(t, n, l);
        let lam = Weight(c[..n].to_vec());
        prop_assume!(g.lattice().contains(&lam));
        let d = g.orbit_data(&lam).unwrap();
        prop_assert_eq!(d.w.act(&d.minuscule), lam.clone());
        prop_assert!(g.is_minuscule(&d.minuscule));
        prop_assert_eq!(g.length(&d.w), d.word.len());
        prop_assert!(d.antidominant.iter().all(|&x| x <= 0));
    }
}
