//! Satake images `𝓔_λ` for a p-adic group datum, computed along both paths, together with the
//! volumes `vol(λ)` and the modulus character `δ_P`.

use std::sync::Arc;

use macdonald_hecke::macdonald::MacdonaldEngine;
use macdonald_hecke::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem, Weight};
use macdonald_hecke::satake::{FormalTag, SatakeData, SatakeEngine, Tau};
use macdonald_hecke::weyl::WeylGroup;

fn main() -> macdonald_hecke::Result<()> {
    let rs = Arc::new(RootSystem::build(CartanType::BC, 1)?);
    let lat = Arc::new(Lattice::new(&rs, "Q".parse::<LatticeSpec>()?)?);
    let mac = Arc::new(MacdonaldEngine::new(Arc::new(WeylGroup::new(rs, lat)?))?);

    // A quasi-split unitary group in three variables: d(a_0), d(a_1) and the doubled roots.
    let data = SatakeData { tau: Tau::Formal(FormalTag::Formal), d: vec![1, 2], d2: vec![1, 1] };
    let sat = SatakeEngine::new(mac, &data)?;
    let ns = sat.namespace().clone();
    println!("Poincaré polynomial: {}", sat.poincare().display(&ns));

    for lambda in (-3..=3).map(|k| Weight(vec![2 * k])) {
        let e = sat.satake_e(&lambda)?;
        let residual = sat.cross_path_residual(&lambda)?;
        println!("λ = {lambda}: δ_P = {}, vol = {}", sat.delta_p(&lambda)?.display(&ns), sat.vol(&lambda)?.display(&ns));
        println!("  𝓔_λ = {e}");
        println!("  cross-path residual zero: {}", residual.is_zero());
    }
    Ok(())
}
