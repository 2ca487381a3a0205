//! Audits the structural conditions on a drawing and finds one violated
//! configuration.
//!
//! cargo run --example reducible_config

use acyclic_edge_coloring::audit::{audit_all, find_reducible_configuration, recheck_witness};
use acyclic_edge_coloring::generate::{generate_instance, Family};

fn main() -> acyclic_edge_coloring::Result<()> {
    let inst = generate_instance(Family::SubdividedQuadrangulation, 20, 30, 4, 0)?;
    let (g, d) = (inst.graph(), &inst.drawing);
    let kappa = g.delta() + 16;
    for report in audit_all(g, Some(d), kappa)? {
        let holds = match report.holds {
            Some(true) => "holds",
            Some(false) => "fails",
            None => "n/a",
        };
        println!("{:<24} {holds:<6} {} witnesses", report.condition.to_string(), report.witnesses.len());
    }
    let w = find_reducible_configuration(g, d, kappa)?.expect("no minimal counterexample exists");
    println!("\nfirst witness: {} at {:?}: {}", w.condition, w.vertices, w.detail);
    println!("rechecks: {}", recheck_witness(g, Some(d), kappa, &w)?);
    Ok(())
}
