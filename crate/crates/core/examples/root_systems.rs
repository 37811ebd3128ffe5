//! Root data: roots, the highest short root, lattices and the parameter orbits of the affine
//! root system.
//!
//! ```text
//! cargo run --example root_systems
//! ```

use macdonald_hecke::hecke::ParamClasses;
use macdonald_hecke::rootdata::{CartanType, Lattice, LatticeSpec, OrbitTable, RootSystem};
use macdonald_hecke::weyl::WeylGroup;
use std::sync::Arc;

fn main() -> macdonald_hecke::Result<()> {
    for (kind, rank) in [(CartanType::A, 2), (CartanType::B, 2), (CartanType::C, 3), (CartanType::BC, 2), (CartanType::G, 2)] {
        let rs = RootSystem::build(kind, rank)?;
        println!("{kind}{rank}: {} roots, {} positive, reduced = {}", rs.roots().len(), rs.positive_roots().len(), rs.is_reduced());
        println!("  cartan matrix {:?}", rs.cartan());
        println!("  theta (simple-root coordinates) {:?}, c0 = {}", rs.theta().simple, rs.c0());

        let orbits = OrbitTable::new(&rs)?;
        println!("  affine orbits: {}", orbits.names().join(", "));

        let lattice_q = if kind == CartanType::BC { vec!["Q"] } else { vec!["P", "Q"] };
        for spec in lattice_q {
            let rs = Arc::new(RootSystem::build(kind, rank)?);
            let lat = Arc::new(Lattice::new(&rs, spec.parse::<LatticeSpec>()?)?);
            let basis: Vec<String> = lat.basis().iter().map(ToString::to_string).collect();
            let weyl = WeylGroup::new(rs, lat)?;
            let classes = ParamClasses::new(&weyl)?;
            println!("  lattice {spec}: basis [{}], {} minuscule weights, parameters {:?}", basis.join(" "), weyl.minuscule_set().len(), classes.namespace().names());
        }
    }
    Ok(())
}
