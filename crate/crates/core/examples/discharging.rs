//! Runs the discharging rules on a drawing and prints the charge ledger.
//!
//! cargo run --example discharging [family] [seed]

use acyclic_edge_coloring::discharging::{discharge, format_charge, Element};
use acyclic_edge_coloring::generate::{generate_instance, Family};

fn main() -> acyclic_edge_coloring::Result<()> {
    let mut args = std::env::args().skip(1);
    let family: Family = args.next().map(|s| s.parse()).transpose()?.unwrap_or(Family::Gear);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let inst = generate_instance(family, 30, 50, seed, 0)?;
    let p = inst.drawing.planarize()?;
    let kappa = inst.graph().delta() + 16;
    let (ledger, report) = discharge(&p, kappa)?;
    println!("{}", report);
    for (e, c) in ledger.charges() {
        if c.is_integer() && *c.numer() >= 0 && matches!(e, Element::Face(_)) {
            continue;
        }
        println!("{:>5} {}", e.label(p.real_count()), format_charge(*c));
    }
    Ok(())
}
