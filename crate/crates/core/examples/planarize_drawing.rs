//! Parses a 1-plane drawing, planarizes it and lists its faces.
//!
//! cargo run --example planarize_drawing

use acyclic_edge_coloring::embedding::OnePlaneDrawing;
use acyclic_edge_coloring::generate::{generate_instance, Family};

fn main() -> acyclic_edge_coloring::Result<()> {
    let inst = generate_instance(Family::GridWithCrossings, 10, 16, 3, 0)?;
    let text = inst.drawing.to_text();
    println!("{text}");
    let d = OnePlaneDrawing::parse(&text)?;
    let p = d.planarize()?;
    println!(
        "{} real vertices, {} crossing vertices, {} faces, sum of (deg - 4) = {}",
        p.real_count(),
        p.crossing_count(),
        p.faces().len(),
        p.euler_charge_identity()?
    );
    for (i, f) in p.faces().iter().enumerate().filter(|(_, f)| f.degree() == 3) {
        println!("3-face f{i}: {:?}", f.walk);
    }
    assert_eq!(p.contract(), *d.base());
    println!("Claim 1 violations: {}", p.check_claim1().len());
    Ok(())
}
