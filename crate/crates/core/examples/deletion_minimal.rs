//! Deletion-minimality probe: K4 with 4 colors is the smallest graph whose
//! every edge deletion is colorable while the graph itself is not.
//!
//! cargo run --example deletion_minimal

use acyclic_edge_coloring::audit::deletion_minimal_probe;
use acyclic_edge_coloring::graph::named;

fn main() -> acyclic_edge_coloring::Result<()> {
    let k4 = named::complete(4);
    let probe = deletion_minimal_probe(&k4, 4)?;
    println!("K4, kappa 4: candidate {}", probe.is_candidate);
    if let Some(c) = &probe.checks {
        println!(
            "  {} colorings of K4 - e, none extends: {}, |U(u) & U(v)| values {:?}, degree-sum failures {}",
            c.colorings, c.no_valid_extension, c.common_color_counts, c.degree_sum_failures
        );
    }
    for (name, g) in [("C4", named::cycle(4)), ("cube", named::cube())] {
        let kappa = g.delta() + 16;
        let probe = deletion_minimal_probe(&g, kappa)?;
        println!("{name}, kappa {kappa}: candidate {}, index {:?}", probe.is_candidate, probe.chi_a_prime);
    }
    Ok(())
}
