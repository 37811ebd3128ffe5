//! Nonsymmetric Macdonald polynomials `E_λ(∞, t)` with generic parameters.
//!
//! ```text
//! cargo run --example macdonald_polynomials -- C 2 Q 3
//! ```
//! Arguments are the Cartan type, rank, lattice and box radius.

use std::sync::Arc;

use macdonald_hecke::macdonald::{is_monic, MacdonaldEngine};
use macdonald_hecke::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem};
use macdonald_hecke::weyl::WeylGroup;

fn main() -> macdonald_hecke::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: CartanType = args.first().map_or("A", String::as_str).parse()?;
    let rank: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let spec: LatticeSpec = args.get(2).map_or("P", String::as_str).parse()?;
    let radius: i64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1);

    let rs = Arc::new(RootSystem::build(kind, rank)?);
    let lat = Arc::new(Lattice::new(&rs, spec)?);
    let mac = MacdonaldEngine::new(Arc::new(WeylGroup::new(rs, lat)?))?;

    let weights = mac.weyl().lattice().box_points(radius);
    let polys = mac.e_many(&weights)?;
    for (lambda, e) in weights.iter().zip(&polys) {
        let j = mac.normalization(lambda)?;
        println!("E_{lambda} ({} terms, monic = {})", e.len(), is_monic(e, lambda));
        println!("  j = {}", j.j.display(mac.namespace()));
        println!("  {e}");
    }
    Ok(())
}
