//! Property tests for the core invariants.

use std::collections::BTreeSet;

use acyclic_edge_coloring::coloring::{ColoringParameters, PartialEdgeColoring};
use acyclic_edge_coloring::discharging::{apply_rules, conservation_check, initial_charges, Charge};
use acyclic_edge_coloring::embedding::OnePlaneDrawing;
use acyclic_edge_coloring::generate::{generate_instance, Family};
use acyclic_edge_coloring::solver::{exact_acyclic_index, heuristic_color, HeuristicConfig};
use acyclic_edge_coloring::{Graph, Multiset};
use proptest::prelude::*;

mod common;
use common::{naive_index, naive_is_acyclic};

/// Graphs on `2..=max_n` vertices given by an edge mask over all pairs.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, all.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Small graphs with at most `max_m` edges.
fn sparse_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let k = pairs.len().min(max_m);
        proptest::sample::subsequence(pairs, 0..=k).prop_map(move |es| Graph::new(n, es).unwrap())
    })
}

/// A partial coloring built by greedily assigning valid colors chosen by
/// `picks`, skipping some edges.
fn partial_coloring<'g>(g: &'g Graph, kappa: usize, picks: &[u8]) -> PartialEdgeColoring<'g> {
    let mut c = PartialEdgeColoring::new(g, ColoringParameters::new(kappa).unwrap());
    for e in 0..g.edge_count() {
        let pick = picks.get(e).copied().unwrap_or(0) as usize;
        if pick.is_multiple_of(5) {
            continue;
        }
        let valid: Vec<usize> = c.valid_colors(e).unwrap().into_iter().collect();
        if !valid.is_empty() {
            c.set_color(e, valid[pick % valid.len()]).unwrap();
        }
    }
    c
}

fn family() -> impl Strategy<Value = Family> {
    proptest::sample::select(Family::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn handshake(g in graph(14)) {
        let sum: usize = g.vertices().map(|v| g.degree(v).unwrap()).sum();
        prop_assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn multiset_union_commutes(a in proptest::collection::vec(0u8..6, 0..12), b in proptest::collection::vec(0u8..6, 0..12)) {
        let ma: Multiset<u8> = a.iter().copied().collect();
        let mb: Multiset<u8> = b.iter().copied().collect();
        prop_assert_eq!(ma.union(&mb), mb.union(&ma));
        let u = ma.union(&mb);
        prop_assert_eq!(u.len(), a.len() + b.len());
        for x in 0..6 {
            prop_assert_eq!(u.multiplicity(&x), ma.multiplicity(&x) + mb.multiplicity(&x));
        }
    }

    #[test]
    fn triangle_detection_matches_brute_force(g in graph(10)) {
        let n = g.vertex_count();
        let brute = (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| {
            g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)
        })));
        prop_assert_eq!(g.is_triangle_free(), !brute);
        if let Some([a, b, c]) = g.find_triangle() {
            prop_assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c));
        }
    }

    #[test]
    fn edge_list_round_trip(g in graph(10)) {
        prop_assume!(g.edge_count() > 0);
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn valid_colors_are_available_and_safe(g in graph(9), extra in 0usize..3, picks in proptest::collection::vec(any::<u8>(), 36)) {
        let kappa = g.delta().max(1) + extra;
        let c = partial_coloring(&g, kappa, &picks);
        prop_assert!(c.verify().unwrap().is_ok());
        for e in (0..g.edge_count()).filter(|&e| c.color(e).is_none()) {
            let (u, v) = g.endpoints(e);
            let available = c.available_colors(e).unwrap();
            let valid = c.valid_colors(e).unwrap();
            prop_assert!(valid.is_subset(&available));
            let used: BTreeSet<usize> = c.used_colors(u).unwrap().union(&c.used_colors(v).unwrap()).copied().collect();
            prop_assert!(available.iter().all(|a| !used.contains(a)));
            // a color is valid exactly when assigning it keeps the coloring acyclic
            for a in 1..=kappa {
                let mut next = c.clone();
                let ok = next.set_color(e, a).is_ok() && next.verify().unwrap().is_ok();
                prop_assert_eq!(valid.contains(&a), ok, "edge {}-{} color {}", u, v, a);
            }
        }
    }

    #[test]
    fn critical_and_alternating_exclude(g in graph(9), picks in proptest::collection::vec(any::<u8>(), 36)) {
        let kappa = g.delta().max(2) + 1;
        let c = partial_coloring(&g, kappa, &picks);
        for u in g.vertices() {
            for v in g.vertices().filter(|&v| v != u) {
                for a in 1..=kappa {
                    for b in (1..=kappa).filter(|&b| b != a) {
                        let crit = c.exists_critical_path(a, b, u, v).unwrap();
                        let alt = c.exists_alternating_path(a, b, u, v).unwrap();
                        prop_assert!(!(crit && alt));
                    }
                }
            }
        }
    }

    #[test]
    fn bichromatic_path_is_unique(g in graph(10), picks in proptest::collection::vec(any::<u8>(), 45)) {
        let kappa = g.delta().max(2) + 1;
        let c = partial_coloring(&g, kappa, &picks);
        for v in g.vertices() {
            for a in 1..=kappa {
                for b in a + 1..=kappa {
                    if let Some(p) = c.maximal_bichromatic_path(v, a, b).unwrap() {
                        prop_assert!(p.maximal);
                        for &w in &p.vertices {
                            prop_assert_eq!(c.maximal_bichromatic_path(w, a, b).unwrap(), Some(p.clone()));
                        }
                        for &e in &p.edges {
                            prop_assert_eq!(c.maximal_bichromatic_path_through_edge(e, a, b).unwrap(), Some(p.clone()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coloring_text_round_trip(g in graph(8), picks in proptest::collection::vec(any::<u8>(), 28)) {
        let c = partial_coloring(&g, g.delta().max(1) + 2, &picks);
        let back = PartialEdgeColoring::parse(&g, &c.to_text()).unwrap();
        prop_assert_eq!(back.raw_colors(), c.raw_colors());
        prop_assert_eq!(back.kappa(), c.kappa());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exact_matches_naive(g in sparse_graph(7, 7)) {
        let r = exact_acyclic_index(&g, g.edge_count().max(g.delta()) + 1).unwrap().unwrap();
        prop_assert_eq!(r.chi_a_prime, naive_index(&g));
        prop_assert!(r.witness.is_complete() && r.witness.verify().unwrap().is_ok());
    }

    #[test]
    fn heuristic_is_deterministic_and_acyclic(g in graph(12), seed in any::<u64>()) {
        let params = ColoringParameters::new(g.delta().max(1) + 2).unwrap();
        let config = HeuristicConfig { seed, ..Default::default() };
        let first = heuristic_color(&g, params, config);
        let second = heuristic_color(&g, params, config);
        match (first, second) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.coloring.raw_colors(), b.coloring.raw_colors());
                prop_assert_eq!(a.move_log, b.move_log);
                let zero_based: Vec<usize> = a.coloring.raw_colors().iter().map(|c| c - 1).collect();
                prop_assert!(naive_is_acyclic(&g, &zero_based));
            }
            (Err(a), Err(b)) => prop_assert_eq!(a.to_string(), b.to_string()),
            _ => prop_assert!(false, "runs disagree"),
        }
    }

    #[test]
    fn planarize_then_contract_is_identity(f in family(), seed in 0u64..1000) {
        let inst = generate_instance(f, 10, 40, seed, 0).unwrap();
        let d = &inst.drawing;
        let p = d.planarize().unwrap();
        prop_assert_eq!(&p.contract(), d.base());
        prop_assert_eq!(p.euler_charge_identity().unwrap(), Charge::from_integer(-8));
        let reparsed = OnePlaneDrawing::parse(&d.to_text()).unwrap();
        prop_assert_eq!(&reparsed, d);
    }

    #[test]
    fn discharging_conserves_charge(f in family(), seed in 0u64..1000) {
        let inst = generate_instance(f, 10, 60, seed, 0).unwrap();
        let p = inst.drawing.planarize().unwrap();
        let before = initial_charges(&p).unwrap();
        let after = apply_rules(&before, &p).unwrap();
        prop_assert!(conservation_check(&before, &after).unwrap());
        prop_assert!(inst.graph().is_triangle_free());
    }
}
