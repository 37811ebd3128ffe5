//! Runs every consistency check on the small root data and prints one line per check.
//!
//! ```text
//! cargo run --example verify_suite -- 10
//! ```

use std::sync::Arc;
use std::time::Instant;

use macdonald_hecke::macdonald::MacdonaldEngine;
use macdonald_hecke::rootdata::{CartanType, Lattice, LatticeSpec, RootSystem};
use macdonald_hecke::satake::{SatakeData, Tau};
use macdonald_hecke::verify::{run_suite, SuiteOptions};
use macdonald_hecke::weyl::WeylGroup;

fn main() -> macdonald_hecke::Result<()> {
    let max_len = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let data = [
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
    ];
    for (kind, rank, lattice) in data {
        let start = Instant::now();
        let rs = Arc::new(RootSystem::build(kind, rank)?);
        let lat = Arc::new(Lattice::new(&rs, lattice.parse::<LatticeSpec>()?)?);
        let mac = Arc::new(MacdonaldEngine::new(Arc::new(WeylGroup::new(rs, lat)?))?);
        let mut opts = SuiteOptions::new(rank);
        opts.max_len = max_len;
        if kind == CartanType::BC {
            let mut d = SatakeData::split(rank, Tau::Numeric(3));
            d.d2[0] = 1;
            d.d[rank] = 2;
            opts.satake.push(("nonsplit".into(), d));
        }
        let report = run_suite(mac, &opts)?;
        println!("{} ({:.2?})", report.datum, start.elapsed());
        for c in &report.checks {
            println!("  {} {:<32} {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
    }
    Ok(())
}
