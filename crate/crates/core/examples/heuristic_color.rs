//! Colors a generated drawing with max degree + 16 colors and verifies it.
//!
//! cargo run --example heuristic_color [seed]

use acyclic_edge_coloring::coloring::ColoringParameters;
use acyclic_edge_coloring::generate::{generate_instance, Family};
use acyclic_edge_coloring::solver::{heuristic_color, HeuristicConfig};

fn main() -> acyclic_edge_coloring::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let inst = generate_instance(Family::Gear, 40, 60, seed, 0)?;
    let g = inst.graph();
    let params = ColoringParameters::for_graph(g);
    let out = heuristic_color(g, params, HeuristicConfig { seed, ..Default::default() })?;
    let report = out.coloring.verify()?;
    println!(
        "instance {} ({} vertices, {} edges, max degree {})",
        inst.id,
        g.vertex_count(),
        g.edge_count(),
        g.delta()
    );
    println!(
        "kappa {}, colors used {}, attempts {}, repair moves {}",
        params.kappa(),
        out.colors_used,
        out.attempts,
        out.move_log.len()
    );
    println!("proper {}, acyclic {}", report.proper, report.acyclic);

    // A tight palette forces repairs; report what happens.
    let tight = ColoringParameters::new(g.delta() + 1)?;
    match heuristic_color(g, tight, HeuristicConfig { seed, ..Default::default() }) {
        Ok(o) => println!("with {} colors: success after {} moves", tight.kappa(), o.move_log.len()),
        Err(e) => println!("with {} colors: {e}", tight.kappa()),
    }
    Ok(())
}
