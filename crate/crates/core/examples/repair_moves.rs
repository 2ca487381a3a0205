//! The two repair moves: recoloring one edge and exchanging the colors of
//! two adjacent edges, with the reason a move is refused.
//!
//! cargo run --example repair_moves

use acyclic_edge_coloring::coloring::{ColoringParameters, PartialEdgeColoring};
use acyclic_edge_coloring::solver::{repair_exchange_pair, repair_recolor_single, RepairResult};
use acyclic_edge_coloring::Graph;

fn main() -> acyclic_edge_coloring::Result<()> {
    let (w, x, z, v, y) = (0, 1, 2, 3, 4);
    let g = Graph::new(5, [(w, x), (x, z), (z, v), (v, w), (w, y)])?;
    let e = |a, b| g.edge_id(a, b).unwrap();
    let mut c = PartialEdgeColoring::new(&g, ColoringParameters::new(3)?);
    for (edge, col) in [(e(w, x), 1), (e(x, z), 3), (e(z, v), 1), (e(w, y), 2)] {
        c.set_color(edge, col)?;
    }
    println!("valid colors for wv before: {:?}", c.valid_colors(e(w, v))?);

    // Recoloring xz to 1 clashes with wx at x.
    match repair_recolor_single(&c, e(x, z), 1)? {
        RepairResult::Accepted(_) => println!("xz -> 1 accepted"),
        RepairResult::Rejected(r) => println!("xz -> 1 rejected: conflict {:?}", r.conflict),
    }

    let swapped = repair_exchange_pair(&c, e(w, x), e(w, y))?.accepted().expect("exchange is acyclic");
    println!("after swapping wx and wy: valid colors for wv {:?}", swapped.valid_colors(e(w, v))?);
    let mut done = swapped;
    done.set_color(e(w, v), 3)?;
    println!("completed coloring acyclic: {}", done.verify()?.is_ok());
    Ok(())
}
