//! Matrix coefficients of an unramified principal series on the translations `t_{−λ}`, exact
//! and in floating point.
//!
//! ```text
//! cargo run --example matrix_coefficients -- 5 2:1 1/3
//! ```
//! Arguments are `τ` followed by the character values on the lattice basis of `A2`.

use std::sync::Arc;

use macdonald_hecke::macdonald::MacdonaldEngine;
use macdonald_hecke::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem};
use macdonald_hecke::satake::{inverse_poincare_at, relative_error, SatakeData, SatakeEngine, Tau, UnramifiedCharacter};
use macdonald_hecke::weyl::WeylGroup;

fn main() -> macdonald_hecke::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let tau: u64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(5);
    let chi_args = if args.len() > 1 { args[1..].to_vec() } else { vec!["2:1".into(), "1/3".into()] };

    let rs = Arc::new(RootSystem::build(CartanType::A, 2)?);
    let lat = Arc::new(Lattice::new(&rs, "P".parse::<LatticeSpec>()?)?);
    let mac = Arc::new(MacdonaldEngine::new(Arc::new(WeylGroup::new(rs, lat)?))?);
    let sat = SatakeEngine::new(mac, &SatakeData::split(2, Tau::Numeric(tau)))?;

    let chi = UnramifiedCharacter::parse(&chi_args)?;
    println!("1/P(τ) = {}", inverse_poincare_at(&sat)?);
    for lambda in sat.weyl().lattice().box_points(1) {
        let exact = sat.matrix_coefficient(&lambda, &chi)?;
        let float = sat.matrix_coefficient(&lambda, &chi.to_float())?;
        println!("λ = {lambda}: {exact}");
        println!("  ≈ {:.6}, float path {:.6}, relative error {:.1e}", exact.to_f64(), float.to_f64(), relative_error(exact.to_f64(), float.to_f64()));
    }
    Ok(())
}
