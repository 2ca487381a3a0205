//! Generates the default corpus and summarizes it per family: sizes,
//! coloring results and how often each discharging rule fires.
//!
//! cargo run --release --example corpus [count] [seed]

use std::collections::BTreeMap;

use acyclic_edge_coloring::coloring::ColoringParameters;
use acyclic_edge_coloring::discharging::discharge;
use acyclic_edge_coloring::generate::{generate_corpus, CorpusSpec};
use acyclic_edge_coloring::solver::{heuristic_color, HeuristicConfig};

fn main() -> acyclic_edge_coloring::Result<()> {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let corpus = generate_corpus(&CorpusSpec { count, seed, ..Default::default() });
    println!("{} instances, {} skipped", corpus.instances.len(), corpus.skipped.len());

    let mut per_family: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new();
    let mut firings = BTreeMap::new();
    let mut negatives = 0;
    for inst in &corpus.instances {
        let g = inst.graph();
        let params = ColoringParameters::for_graph(g);
        let out = heuristic_color(g, params, HeuristicConfig::default())?;
        assert!(out.coloring.verify()?.is_ok());
        let entry = per_family.entry(inst.family.to_string()).or_default();
        entry.0 += 1;
        entry.1 = entry.1.max(g.delta());
        entry.2 = entry.2.max(out.colors_used);

        let p = inst.drawing.planarize()?;
        let (_, report) = discharge(&p, params.kappa())?;
        assert!(report.is_ok(), "{}: {report}", inst.id);
        negatives += report.negative_elements.len();
        for (rule, n) in report.rule_firings {
            *firings.entry(rule).or_insert(0) += n;
        }
    }
    for (family, (n, delta, used)) in &per_family {
        println!("{family:<28} {n:>4} instances, max degree <= {delta:>2}, colors used <= {used}");
    }
    println!("rule firings: {firings:?}");
    println!("negative elements (all with a failed hypothesis): {negatives}");
    Ok(())
}
