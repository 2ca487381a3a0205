//! Reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use acyclic_edge_coloring::{Graph, Vertex};
use rand::Rng;

/// Proper and free of bichromatic cycles, checked with union-find per
/// color pair. Colors are `0..k`.
pub fn naive_is_acyclic(g: &Graph, colors: &[usize]) -> bool {
    for v in g.vertices() {
        let mut seen = BTreeSet::new();
        for &(_, e) in g.incident(v) {
            if !seen.insert(colors[e]) {
                return false;
            }
        }
    }
    let k = colors.iter().copied().max().map_or(0, |c| c + 1);
    for a in 0..k {
        for b in a + 1..k {
            let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                r
            }
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                if colors[e] == a || colors[e] == b {
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru == rv {
                        return false;
                    }
                    parent[ru] = rv;
                }
            }
        }
    }
    true
}

/// Tries every assignment of `k` colors; no pruning.
pub fn naive_exists(g: &Graph, k: usize) -> bool {
    let m = g.edge_count();
    if m == 0 {
        return true;
    }
    let mut colors = vec![0usize; m];
    loop {
        if naive_is_acyclic(g, &colors) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == m {
                return false;
            }
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

pub fn naive_index(g: &Graph) -> usize {
    (g.delta()..).find(|&k| naive_exists(g, k)).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Graph {
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut chosen = Vec::new();
    while chosen.len() < m && !pairs.is_empty() {
        let i = rng.gen_range(0..pairs.len());
        chosen.push(pairs.swap_remove(i));
    }
    Graph::new(n, chosen).unwrap()
}
