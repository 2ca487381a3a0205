//! Simple undirected graphs with dense vertex ids.
//!
//! Edges are stored canonically as `(min, max)` and sorted, so edge ids and
//! every iteration order are deterministic. A [`Graph`] is immutable once
//! built; [`Graph::remove_edge`] returns a copy.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    /// Per vertex: `(neighbor, edge id)` sorted by neighbor.
    incidence: Vec<Vec<(Vertex, EdgeId)>>,
    index: HashMap<(Vertex, Vertex), EdgeId>,
}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range ids.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::InvalidVertex { vertex: x, count: vertex_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut index = HashMap::with_capacity(canon.len());
        for (id, &(u, v)) in canon.iter().enumerate() {
            incidence[u].push((v, id));
            incidence[v].push((u, id));
            index.insert((u, v), id);
        }
        for list in &mut incidence {
            list.sort_unstable();
        }
        Ok(Graph { vertex_count, edges: canon, incidence, index })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count
    }

    /// Canonical edge list; position is the edge id.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, count: self.vertex_count })
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(Error::InvalidEdge(e))
        }
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// `(neighbor, edge id)` pairs at `v`, ordered by neighbor.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.incidence[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.incidence[v].iter().map(|&(u, _)| u)
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.incidence[v].len())
    }

    /// Unchecked degree for internal loops.
    pub(crate) fn deg(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> Result<usize> {
        self.vertices().map(|v| self.deg(v)).max().ok_or(Error::EmptyGraph)
    }

    pub fn min_degree(&self) -> Result<usize> {
        self.vertices().map(|v| self.deg(v)).min().ok_or(Error::EmptyGraph)
    }

    /// Maximum degree, 0 for the empty graph.
    pub fn delta(&self) -> usize {
        self.max_degree().unwrap_or(0)
    }

    /// `|{u in N(v) : deg(u) >= d}|`.
    pub fn count_neighbors_with_degree_at_least(&self, v: Vertex, d: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.neighbors(v).filter(|&u| self.deg(u) >= d).count())
    }

    /// Copy of the graph without edge `uv`; vertex ids are unchanged.
    pub fn remove_edge(&self, u: Vertex, v: Vertex) -> Result<Graph> {
        let id = self.edge_id(u, v).ok_or(Error::MissingEdge(u, v))?;
        Graph::new(self.vertex_count, self.edges.iter().enumerate().filter(|&(i, _)| i != id).map(|(_, &e)| e))
    }

    /// Returns `None` when triangle-free, otherwise a triangle `[a, b, c]`
    /// with `a < b < c` (lexicographically first).
    pub fn find_triangle(&self) -> Option<[Vertex; 3]> {
        for &(a, b) in &self.edges {
            // a < b; look for c > b adjacent to both
            for &(c, _) in &self.incidence[b] {
                if c > b && self.has_edge(a, c) {
                    return Some([a, b, c]);
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    /// Connected-component label for every vertex, labels in order of first
    /// appearance.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in self.vertices() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for y in self.neighbors(x) {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Cut vertices, ascending. Iterative Hopcroft-Tarjan lowpoint search.
    pub fn articulation_points(&self) -> Vec<Vertex> {
        let n = self.vertex_count;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in self.vertices() {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent edge, next incidence index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, pe, i) = *top;
                if let Some(&(u, e)) = self.incidence[v].get(i) {
                    top.2 += 1;
                    if e == pe {
                        continue;
                    }
                    if disc[u] == usize::MAX {
                        disc[u] = time;
                        low[u] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((u, e, 0));
                    } else {
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        self.vertices().filter(|&v| is_cut[v]).collect()
    }

    /// Parses the edge-list format: `n m` then `m` lines `u v`.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate();
        let (g, rest) = parse_graph_section(&mut lines)?;
        if let Some((no, line)) = rest {
            return Err(Error::Parse { line: no + 1, message: format!("trailing content `{line}`") });
        }
        for (no, line) in lines {
            if !line.trim().is_empty() {
                return Err(Error::Parse { line: no + 1, message: format!("trailing content `{line}`") });
            }
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Reads the `n m` header and `m` edge lines, skipping blank lines. Returns
/// the graph and the first non-blank line after the section, if any.
pub(crate) fn parse_graph_section<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<(Graph, Option<(usize, &'a str)>)> {
    let mut content = lines.filter(|(_, l)| !l.trim().is_empty());
    let (no, header) = content.next().ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
    let nums = parse_numbers(header, no)?;
    let [n, m] = nums[..] else {
        return Err(Error::Parse { line: no + 1, message: "header must be `n m`".into() });
    };
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for k in 0..m {
        let (no, line) = content
            .next()
            .ok_or(Error::Parse { line: no + 2 + k, message: format!("expected {m} edges, found {k}") })?;
        let nums = parse_numbers(line, no)?;
        let [u, v] = nums[..] else {
            return Err(Error::Parse { line: no + 1, message: "edge line must be `u v`".into() });
        };
        if u == v {
            return Err(Error::Parse { line: no + 1, message: format!("self-loop at {u}") });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse { line: no + 1, message: format!("duplicate edge {u} {v}") });
        }
        edges.push((u, v));
    }
    let g = Graph::new(n, edges)?;
    Ok((g, content.next()))
}

fn parse_numbers(line: &str, no: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line: no + 1, message: format!("bad integer `{t}`") }))
        .collect()
}

/// A multiset with positive multiplicities; absent elements have
/// multiplicity zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multiset<T: Ord> {
    counts: BTreeMap<T, usize>,
}

impl<T: Ord + Clone> Multiset<T> {
    pub fn new() -> Self {
        Multiset { counts: BTreeMap::new() }
    }

    pub fn insert(&mut self, x: T) {
        *self.counts.entry(x).or_insert(0) += 1;
    }

    pub fn multiplicity(&self, x: &T) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    /// Multiset union: multiplicities add.
    pub fn union(&self, other: &Multiset<T>) -> Multiset<T> {
        let mut out = self.clone();
        for (x, &k) in &other.counts {
            *out.counts.entry(x.clone()).or_insert(0) += k;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, usize)> {
        self.counts.iter().map(|(x, &k)| (x, k))
    }

    /// Total number of elements counted with multiplicity.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

impl<T: Ord + Clone> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for x in iter {
            m.insert(x);
        }
        m
    }
}

/// Small named graphs used by tests, examples and the generator.
pub mod named {
    use super::{Graph, Vertex};

    fn build(n: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
        Graph::new(n, edges).expect("named graph is simple")
    }

    pub fn empty(n: usize) -> Graph {
        build(n, vec![])
    }

    pub fn path(n: usize) -> Graph {
        build(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    /// `K_{1,n}` with center 0.
    pub fn star(n: usize) -> Graph {
        build(n + 1, (1..=n).map(|i| (0, i)).collect())
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = vec![];
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        build(n, e)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut e = vec![];
        for i in 0..a {
            for j in 0..b {
                e.push((i, a + j));
            }
        }
        build(a + b, e)
    }

    /// Outer 5-cycle 0..4, spokes `i -- i+5`, inner pentagram.
    pub fn petersen() -> Graph {
        let mut e = vec![];
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        build(10, e)
    }

    /// The 3-cube `Q3`; vertices are 3-bit strings.
    pub fn cube() -> Graph {
        let mut e = vec![];
        for v in 0..8usize {
            for bit in [1, 2, 4] {
                if v & bit == 0 {
                    e.push((v, v | bit));
                }
            }
        }
        build(8, e)
    }

    /// `rows x cols` grid, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Graph {
        let mut e = vec![];
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    e.push((v, v + 1));
                }
                if r + 1 < rows {
                    e.push((v, v + cols));
                }
            }
        }
        build(rows * cols, e)
    }

    /// Every edge of `g` replaced by a path of length two; subdivision
    /// vertices are numbered `n + edge id`.
    pub fn subdivide(g: &Graph) -> Graph {
        let n = g.vertex_count();
        let mut e = vec![];
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            e.push((u, n + id));
            e.push((n + id, v));
        }
        build(n + g.edge_count(), e)
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn degrees_of_small_graphs() {
        let c4 = cycle(4);
        assert!(c4.vertices().all(|v| c4.degree(v).unwrap() == 2));
        assert_eq!((c4.max_degree().unwrap(), c4.min_degree().unwrap()), (2, 2));
        let s = star(5);
        assert_eq!(s.degree(0).unwrap(), 5);
        assert_eq!((s.max_degree().unwrap(), s.min_degree().unwrap()), (5, 1));
        let k4 = complete(4);
        assert_eq!((k4.max_degree().unwrap(), k4.min_degree().unwrap()), (3, 3));
        assert_eq!(empty(3).degree(0).unwrap(), 0);
    }

    #[test]
    fn degree_errors() {
        assert!(matches!(cycle(4).degree(4), Err(Error::InvalidVertex { .. })));
        assert_eq!(empty(0).max_degree(), Err(Error::EmptyGraph));
        assert_eq!(empty(0).min_degree(), Err(Error::EmptyGraph));
        assert!(star(2).count_neighbors_with_degree_at_least(9, 1).is_err());
    }

    #[test]
    fn neighbor_degree_counts() {
        let s = star(5);
        assert_eq!(s.count_neighbors_with_degree_at_least(0, 1).unwrap(), 5);
        assert_eq!(s.count_neighbors_with_degree_at_least(0, 2).unwrap(), 0);
        assert_eq!(cycle(4).count_neighbors_with_degree_at_least(1, 2).unwrap(), 2);
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::new(2, [(0, 2)]), Err(Error::InvalidVertex { vertex: 2, .. })));
    }

    #[test]
    fn multiset_union_examples() {
        let s: Multiset<u32> = [1, 1, 2].into_iter().collect();
        let t: Multiset<u32> = [2, 3].into_iter().collect();
        let u = s.union(&t);
        assert_eq!(u.iter().map(|(&x, k)| (x, k)).collect::<Vec<_>>(), vec![(1, 2), (2, 2), (3, 1)]);
        assert_eq!(s.union(&Multiset::new()), s);
        let five: Multiset<u32> = [5].into_iter().collect();
        assert_eq!(five.union(&five).union(&five).multiplicity(&5), 3);
        assert_eq!(u.multiplicity(&7), 0);
    }

    #[test]
    fn triangle_detection() {
        assert!(cycle(4).is_triangle_free());
        assert_eq!(complete(4).find_triangle(), Some([0, 1, 2]));
        assert!(petersen().is_triangle_free());
        assert!(cube().is_triangle_free());
    }

    #[test]
    fn cut_vertices() {
        assert_eq!(path(4).articulation_points(), vec![1, 2]);
        assert!(cycle(5).articulation_points().is_empty());
        // two triangles sharing vertex 2
        let bowtie = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(bowtie.articulation_points(), vec![2]);
        assert_eq!(star(3).articulation_points(), vec![0]);
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = petersen();
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(matches!(Graph::parse_edge_list("3 2\n0 1\n1 0\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Graph::parse_edge_list("3 1\n2 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse_edge_list("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse_edge_list("3 1\n0 1\n1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse_edge_list("2 1\n0 5\n"), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn remove_edge_keeps_base() {
        let g = cycle(4);
        let h = g.remove_edge(1, 0).unwrap();
        assert_eq!(h.edge_count(), 3);
        assert_eq!(g.edge_count(), 4);
        assert!(g.remove_edge(0, 2).is_err());
    }
}
