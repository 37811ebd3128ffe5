//! The two collapses of `E_λ`: at `t = 1` it becomes `e^λ`, and its leading part as `t → ∞`
//! is a Demazure atom built from the finite Demazure operators.

use std::sync::Arc;

use macdonald_hecke::macdonald::{at_t_one, demazure_limit, limit_t_infinity, MacdonaldEngine};
use macdonald_hecke::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem, Weight};
use macdonald_hecke::weyl::WeylGroup;

fn main() -> macdonald_hecke::Result<()> {
    let rs = Arc::new(RootSystem::build(CartanType::G, 2)?);
    let lat = Arc::new(Lattice::new(&rs, "P".parse::<LatticeSpec>()?)?);
    let mac = MacdonaldEngine::new(Arc::new(WeylGroup::new(rs, lat)?))?;

    for lambda in [Weight(vec![-1, 0]), Weight(vec![1, -1]), Weight(vec![0, -1]), Weight(vec![-1, 1])] {
        let e = mac.e(&lambda)?;
        let limit = limit_t_infinity(&e, &lambda)?;
        let oracle = demazure_limit(mac.weyl(), &lambda)?;
        println!("λ = {lambda}");
        println!("  t = 1: {}", at_t_one(&e));
        println!("  t → ∞: {limit}");
        println!("  Demazure: {oracle} (agree = {})", limit == oracle);
    }
    Ok(())
}
