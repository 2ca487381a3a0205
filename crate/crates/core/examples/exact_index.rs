//! Exact acyclic chromatic index of a few small graphs, with a witness.
//!
//! cargo run --example exact_index

use acyclic_edge_coloring::graph::named;
use acyclic_edge_coloring::solver::exact_acyclic_index;

fn main() -> acyclic_edge_coloring::Result<()> {
    let graphs = [
        ("C5", named::cycle(5)),
        ("K1,4", named::star(4)),
        ("K4", named::complete(4)),
        ("K3,3", named::complete_bipartite(3, 3)),
        ("cube", named::cube()),
        ("Petersen", named::petersen()),
    ];
    for (name, g) in &graphs {
        let r = exact_acyclic_index(g, 8)?.expect("index is at most 8 for these graphs");
        println!("{name:>9}: max degree {}, index {}", g.delta(), r.chi_a_prime);
    }
    let g = named::complete(4);
    let r = exact_acyclic_index(&g, 8)?.unwrap();
    println!("\nwitness for K4:\n{}", r.witness.to_text());
    Ok(())
}
