//! Maximal bichromatic paths, critical paths and the valid colors of an
//! uncolored edge.
//!
//! cargo run --example bichromatic_paths

use acyclic_edge_coloring::coloring::{ColoringParameters, PartialEdgeColoring};
use acyclic_edge_coloring::Graph;

fn main() -> acyclic_edge_coloring::Result<()> {
    // 4-cycle w-x-z-v-w with a pendant w-y; wv is left uncolored.
    let (w, x, z, v, y) = (0, 1, 2, 3, 4);
    let g = Graph::new(5, [(w, x), (x, z), (z, v), (v, w), (w, y)])?;
    let mut c = PartialEdgeColoring::new(&g, ColoringParameters::new(3)?);
    c.set_color(g.edge_id(w, x).unwrap(), 1)?;
    c.set_color(g.edge_id(x, z).unwrap(), 3)?;
    c.set_color(g.edge_id(z, v).unwrap(), 1)?;
    c.set_color(g.edge_id(w, y).unwrap(), 2)?;

    let p = c.maximal_bichromatic_path(x, 1, 3)?.unwrap();
    println!("(1,3)-path through x: vertices {:?}, maximal {}", p.vertices, p.maximal);
    println!("U(w) = {:?}, U(v) = {:?}", c.used_colors(w)?, c.used_colors(v)?);
    println!("critical (1,3) path w..v: {}", c.exists_critical_path(1, 3, w, v)?);
    let wv = g.edge_id(w, v).unwrap();
    println!("available for wv: {:?}", c.available_colors(wv)?);
    println!("valid for wv:     {:?}", c.valid_colors(wv)?);
    Ok(())
}
