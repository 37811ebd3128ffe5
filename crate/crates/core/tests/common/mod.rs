#![allow(dead_code)]

use std::sync::Arc;

use macdonald_hecke::coeffs::{GroupAlgebraElement, Monomial, Namespace, ParamScalar};
use macdonald_hecke::macdonald::MacdonaldEngine;
use macdonald_hecke::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem, Weight};
use macdonald_hecke::weyl::WeylGroup;
use macdonald_hecke::Rat;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn weyl(kind: CartanType, rank: usize, lattice: &str) -> Arc<WeylGroup> {
    let rs = Arc::new(RootSystem::build(kind, rank).unwrap());
    let lat = Arc::new(Lattice::new(&rs, lattice.parse::<LatticeSpec>().unwrap()).unwrap());
    Arc::new(WeylGroup::new(rs, lat).unwrap())
}

pub fn engine(kind: CartanType, rank: usize, lattice: &str) -> Arc<MacdonaldEngine> {
    Arc::new(MacdonaldEngine::new(weyl(kind, rank, lattice)).unwrap())
}

/// The small data every suite runs on.
pub fn desk_data() -> Vec<(CartanType, usize, &'static str)> {
    vec![
        (CartanType::A, 1, "P"),
        (CartanType::A, 1, "Q"),
        (CartanType::A, 2, "P"),
        (CartanType::A, 2, "Q"),
        (CartanType::B, 2, "P"),
        (CartanType::B, 2, "Q"),
        (CartanType::C, 2, "P"),
        (CartanType::C, 2, "Q"),
        (CartanType::BC, 1, "Q"),
        (CartanType::BC, 2, "Q"),
        (CartanType::G, 2, "P"),
    ]
}

/// A random scalar: a few terms with small integer coefficients and half exponents.
pub fn random_scalar<R: Rng>(rng: &mut R, nvars: usize) -> ParamScalar {
    let mut c = ParamScalar::zero(nvars);
    for _ in 0..rng.gen_range(1..=2) {
        let m = Monomial((0..nvars).map(|_| rng.gen_range(-2..=2)).collect::<Vec<i32>>().into_boxed_slice());
        c += &ParamScalar::term(m, Rat::from_integer(rng.gen_range(-3i64..=3).into()));
    }
    c
}

/// A random element supported on the given weights.
pub fn random_element<R: Rng>(rng: &mut R, ns: &Arc<Namespace>, support: &[Weight]) -> GroupAlgebraElement {
    let mut f = GroupAlgebraElement::zero(ns);
    for _ in 0..rng.gen_range(1..=3) {
        f.add_term(support.choose(rng).unwrap().clone(), random_scalar(rng, ns.len()));
    }
    if f.is_zero() {
        f = GroupAlgebraElement::exp(ns, support[0].clone());
    }
    f
}
