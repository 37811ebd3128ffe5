//! The extended affine Weyl group: lengths, reduced words, and the element `w_λ` carrying a
//! minuscule weight to `λ`.

use std::sync::Arc;

use macdonald_hecke::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem, Weight};
use macdonald_hecke::weyl::WeylGroup;

fn main() -> macdonald_hecke::Result<()> {
    let rs = Arc::new(RootSystem::build(CartanType::C, 2)?);
    let lat = Arc::new(Lattice::new(&rs, "P".parse::<LatticeSpec>()?)?);
    let weyl = WeylGroup::new(rs, lat)?;

    println!("Omega has {} elements", weyl.omega().len());
    for om in weyl.omega() {
        println!("  weight {} permutes nodes {:?}", om.weight, om.perm);
    }

    let w = weyl.from_word(&[0, 1, 2, 1, 0, 1]);
    let rw = weyl.reduced_word(&w);
    println!("r0 r1 r2 r1 r0 r1 has length {} and reduced word {rw}", weyl.length(&w));

    for lambda in [Weight(vec![-2, 1]), Weight(vec![1, -1]), Weight(vec![0, 2])] {
        let t = weyl.translation(&lambda)?;
        let d = weyl.orbit_data(&lambda)?;
        println!(
            "λ = {lambda}: ℓ(t_λ) = {}, minuscule {}, w_λ = {:?} (length {}), antidominant {}",
            weyl.length(&t),
            d.minuscule,
            d.word,
            weyl.length(&d.w),
            d.antidominant
        );
    }

    let grid = weyl.weights_up_to_length(4);
    println!("{} weights with ℓ(w_λ) ≤ 4", grid.len());
    Ok(())
}
