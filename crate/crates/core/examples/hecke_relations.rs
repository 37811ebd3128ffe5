//! The polynomial representation of the affine Hecke algebra on `ℚ(t^{1/2})[X]`, and a direct
//! check of its defining relations on a few elements.

use std::sync::Arc;

use macdonald_hecke::coeffs::GroupAlgebraElement;
use macdonald_hecke::hecke::ParamClasses;
use macdonald_hecke::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem, Weight};
use macdonald_hecke::weyl::WeylGroup;

fn main() -> macdonald_hecke::Result<()> {
    let rs = Arc::new(RootSystem::build(CartanType::BC, 2)?);
    let lat = Arc::new(Lattice::new(&rs, "Q".parse::<LatticeSpec>()?)?);
    let weyl = Arc::new(WeylGroup::new(rs, lat)?);
    let classes = ParamClasses::new(&weyl)?;
    let ctx = classes.generic_context(weyl.clone())?;
    let ns = ctx.namespace().clone();
    println!("parameters: {:?}", ns.names());

    let f = GroupAlgebraElement::exp(&ns, Weight(vec![2, -2]));
    for i in 0..=ctx.rank() {
        println!("T_{i} e^(2,-2) = {}", ctx.apply_generator(i, &f)?);
    }

    let g = f.try_add(&GroupAlgebraElement::exp(&ns, Weight(vec![0, 2])))?;
    for i in 0..=ctx.rank() {
        assert!(ctx.quadratic_defect(i, &g)?.is_zero());
        for j in i + 1..=ctx.rank() {
            if let Some(defect) = ctx.braid_defect(i, j, &g)? {
                assert!(defect.is_zero());
            }
        }
    }
    for i in 1..=ctx.rank() {
        assert!(ctx.bernstein_defect(i, &Weight(vec![2, -2]), &g)?.is_zero());
    }
    println!("quadratic, braid and Bernstein relations hold on {g}");
    Ok(())
}
