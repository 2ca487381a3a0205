//! Partial edge colorings and the bichromatic-path vocabulary.
//!
//! Colors are `1..=kappa`; `0` only appears in serialized form and means
//! "uncolored". A [`PartialEdgeColoring`] keeps per-vertex color counts so
//! membership queries on `U(v)` are constant time. [`PartialEdgeColoring::verify`]
//! ignores that index and recomputes everything from the edge colors.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

pub type Color = usize;
pub type ColorSet = BTreeSet<Color>;

/// Palette size `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ColoringParameters {
    kappa: usize,
}

impl ColoringParameters {
    pub fn new(kappa: usize) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::EmptyPalette);
        }
        Ok(ColoringParameters { kappa })
    }

    /// `kappa = max degree + 16`.
    pub fn for_graph(g: &Graph) -> Self {
        ColoringParameters { kappa: g.delta() + 16 }
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn palette(&self) -> impl Iterator<Item = Color> {
        1..=self.kappa
    }
}

/// A maximal path whose edges alternate between two colors, oriented so the
/// first vertex id is smaller than the last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BichromaticPath {
    /// The two colors, smaller first.
    pub colors: (Color, Color),
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    pub maximal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BichromaticCycle {
    pub colors: (Color, Color),
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub proper: bool,
    pub acyclic: bool,
    /// Two edges at a common vertex with the same color.
    pub conflict: Option<(EdgeId, EdgeId)>,
    pub cycle: Option<BichromaticCycle>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.proper && self.acyclic
    }
}

#[derive(Debug, Clone)]
pub struct PartialEdgeColoring<'g> {
    graph: &'g Graph,
    params: ColoringParameters,
    colors: Vec<Color>,
    /// `count[v * (kappa + 1) + c]`: edges of color `c` at `v`.
    count: Vec<u32>,
    /// Some edge of color `c` at `v`, valid whenever the count is positive.
    holder: Vec<EdgeId>,
}

impl PartialEq for PartialEdgeColoring<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.graph, other.graph) && self.params == other.params && self.colors == other.colors
    }
}

impl<'g> PartialEdgeColoring<'g> {
    pub fn new(graph: &'g Graph, params: ColoringParameters) -> Self {
        let slots = graph.vertex_count() * (params.kappa + 1);
        PartialEdgeColoring {
            graph,
            params,
            colors: vec![0; graph.edge_count()],
            count: vec![0; slots],
            holder: vec![usize::MAX; slots],
        }
    }

    /// Builds a coloring from per-edge colors (`0` = uncolored).
    pub fn from_colors(graph: &'g Graph, params: ColoringParameters, colors: &[Color]) -> Result<Self> {
        let mut c = Self::new(graph, params);
        for (e, &col) in colors.iter().enumerate() {
            graph.check_edge(e)?;
            if col != 0 {
                c.set_color(e, col)?;
            }
        }
        Ok(c)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn params(&self) -> ColoringParameters {
        self.params
    }

    pub fn kappa(&self) -> usize {
        self.params.kappa
    }

    fn slot(&self, v: Vertex, c: Color) -> usize {
        v * (self.params.kappa + 1) + c
    }

    pub fn color(&self, e: EdgeId) -> Option<Color> {
        match self.colors[e] {
            0 => None,
            c => Some(c),
        }
    }

    /// Per-edge colors, `0` for uncolored.
    pub fn raw_colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c != 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().filter(|&&c| c != 0).collect::<BTreeSet<_>>().len()
    }

    /// Assigns (or reassigns) a color without any properness check.
    pub fn set_color(&mut self, e: EdgeId, c: Color) -> Result<()> {
        self.graph.check_edge(e)?;
        if c == 0 || c > self.params.kappa {
            return Err(Error::ColorOutOfRange { color: c, kappa: self.params.kappa });
        }
        self.uncolor(e);
        let (u, v) = self.graph.endpoints(e);
        for x in [u, v] {
            let s = self.slot(x, c);
            self.count[s] += 1;
            self.holder[s] = e;
        }
        self.colors[e] = c;
        Ok(())
    }

    /// Removes the color of `e`, returning it.
    pub fn uncolor(&mut self, e: EdgeId) -> Option<Color> {
        let c = self.color(e)?;
        self.colors[e] = 0;
        let (u, v) = self.graph.endpoints(e);
        for x in [u, v] {
            let s = self.slot(x, c);
            self.count[s] -= 1;
            if self.count[s] > 0 && self.holder[s] == e {
                self.holder[s] = self
                    .graph
                    .incident(x)
                    .iter()
                    .map(|&(_, f)| f)
                    .find(|&f| self.colors[f] == c)
                    .expect("count matches edge colors");
            }
        }
        Some(c)
    }

    pub fn has_color_at(&self, v: Vertex, c: Color) -> bool {
        c >= 1 && c <= self.params.kappa && self.count[self.slot(v, c)] > 0
    }

    /// The edge at `v` colored `c`, if any (the proper case has at most one).
    pub fn edge_with_color(&self, v: Vertex, c: Color) -> Option<EdgeId> {
        self.has_color_at(v, c).then(|| self.holder[self.slot(v, c)])
    }

    /// `U(v)`: colors on edges at `v`.
    pub fn used_colors(&self, v: Vertex) -> Result<ColorSet> {
        self.graph.check_vertex(v)?;
        Ok(self.params.palette().filter(|&c| self.has_color_at(v, c)).collect())
    }

    /// `A(v) = {1..kappa} \ U(v)`.
    pub fn free_colors(&self, v: Vertex) -> Result<ColorSet> {
        self.graph.check_vertex(v)?;
        Ok(self.params.palette().filter(|&c| !self.has_color_at(v, c)).collect())
    }

    /// `A(uv) = {1..kappa} \ (U(u) ∪ U(v))`.
    pub fn free_colors_pair(&self, u: Vertex, v: Vertex) -> Result<ColorSet> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        Ok(self.params.palette().filter(|&c| !self.has_color_at(u, c) && !self.has_color_at(v, c)).collect())
    }

    /// `Υ(u, v) = U(v) \ {φ(uv)}`.
    pub fn upsilon(&self, u: Vertex, v: Vertex) -> Result<ColorSet> {
        let e = self.graph.edge_id(u, v).ok_or(Error::MissingEdge(u, v))?;
        let mut s = self.used_colors(v)?;
        if let Some(c) = self.color(e) {
            s.remove(&c);
        }
        Ok(s)
    }

    /// `W(u, v)`: neighbors `x` of `u` whose edge `ux` carries a color of
    /// `Υ(u, v)`. Not symmetric in `u` and `v`.
    pub fn w_set(&self, u: Vertex, v: Vertex) -> Result<BTreeSet<Vertex>> {
        let ups = self.upsilon(u, v)?;
        Ok(self
            .graph
            .incident(u)
            .iter()
            .filter(|&&(_, e)| self.color(e).is_some_and(|c| ups.contains(&c)))
            .map(|&(x, _)| x)
            .collect())
    }

    /// Checks properness and acyclicity from the raw edge colors.
    pub fn verify(&self) -> Result<VerifyReport> {
        let kappa = self.params.kappa;
        if let Some(&c) = self.colors.iter().find(|&&c| c > kappa) {
            return Err(Error::ColorOutOfRange { color: c, kappa });
        }
        let mut conflict = None;
        'outer: for v in self.graph.vertices() {
            let inc = self.graph.incident(v);
            for (i, &(_, e)) in inc.iter().enumerate() {
                for &(_, f) in &inc[i + 1..] {
                    if self.colors[e] != 0 && self.colors[e] == self.colors[f] {
                        conflict = Some((e.min(f), e.max(f)));
                        break 'outer;
                    }
                }
            }
        }
        let cycle = self.find_bichromatic_cycle();
        Ok(VerifyReport { proper: conflict.is_none(), acyclic: cycle.is_none(), conflict, cycle })
    }

    fn find_bichromatic_cycle(&self) -> Option<BichromaticCycle> {
        let mut by_color: Vec<Vec<EdgeId>> = vec![Vec::new(); self.params.kappa + 1];
        for (e, &c) in self.colors.iter().enumerate() {
            if c != 0 {
                by_color[c].push(e);
            }
        }
        let used: Vec<Color> = (1..=self.params.kappa).filter(|&c| !by_color[c].is_empty()).collect();
        let n = self.graph.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut touched = Vec::new();
        for (i, &a) in used.iter().enumerate() {
            for &b in &used[i + 1..] {
                for &v in &touched {
                    parent[v] = v;
                }
                touched.clear();
                let mut edges = by_color[a].clone();
                edges.extend_from_slice(&by_color[b]);
                edges.sort_unstable();
                for (k, &e) in edges.iter().enumerate() {
                    let (u, v) = self.graph.endpoints(e);
                    touched.extend([u, v]);
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru == rv {
                        return Some(self.close_cycle(&edges[..k], e, (a, b)));
                    }
                    parent[ru] = rv;
                }
            }
        }
        None
    }

    /// BFS from one end of `closing` to the other through `earlier`.
    fn close_cycle(&self, earlier: &[EdgeId], closing: EdgeId, colors: (Color, Color)) -> BichromaticCycle {
        let (s, t) = self.graph.endpoints(closing);
        let mut prev: std::collections::HashMap<Vertex, (Vertex, EdgeId)> = Default::default();
        let mut queue = VecDeque::from([s]);
        let mut seen = BTreeSet::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &e in earlier {
                let (a, b) = self.graph.endpoints(e);
                let y = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if seen.insert(y) {
                    prev.insert(y, (x, e));
                    queue.push_back(y);
                }
            }
        }
        let mut vertices = vec![t];
        let mut edges = vec![];
        let mut x = t;
        while x != s {
            let (p, e) = prev[&x];
            vertices.push(p);
            edges.push(e);
            x = p;
        }
        edges.push(closing);
        BichromaticCycle { colors, vertices, edges }
    }

    /// Follows edges colored `first`, `second`, `first`, ... from `start`.
    /// Returns the visited vertices (starting with `start`) and edges.
    pub(crate) fn walk(&self, start: Vertex, first: Color, second: Color) -> (Vec<Vertex>, Vec<EdgeId>) {
        let mut vertices = vec![start];
        let mut edges = vec![];
        let mut x = start;
        let mut want = first;
        let mut prev_edge = usize::MAX;
        while let Some(e) = self.edge_with_color(x, want) {
            if e == prev_edge || edges.len() > self.graph.edge_count() {
                break;
            }
            let y = self.graph.other_end(e, x);
            edges.push(e);
            vertices.push(y);
            if y == start {
                break;
            }
            prev_edge = e;
            x = y;
            want = if want == first { second } else { first };
        }
        (vertices, edges)
    }

    fn require_acyclic(&self) -> Result<()> {
        if self.verify()?.is_ok() {
            Ok(())
        } else {
            Err(Error::NotAcyclic)
        }
    }

    fn check_color(&self, c: Color) -> Result<()> {
        if c == 0 || c > self.params.kappa {
            Err(Error::ColorOutOfRange { color: c, kappa: self.params.kappa })
        } else {
            Ok(())
        }
    }

    /// The unique maximal `(alpha, beta)`-path through `v`, or `None` if `v`
    /// has neither color.
    pub fn maximal_bichromatic_path(&self, v: Vertex, alpha: Color, beta: Color) -> Result<Option<BichromaticPath>> {
        self.graph.check_vertex(v)?;
        self.check_color(alpha)?;
        self.check_color(beta)?;
        self.require_acyclic()?;
        Ok(self.path_through(v, alpha, beta))
    }

    pub(crate) fn path_through(&self, v: Vertex, alpha: Color, beta: Color) -> Option<BichromaticPath> {
        let (lv, le) = self.walk(v, alpha, beta);
        let (rv, re) = self.walk(v, beta, alpha);
        if le.is_empty() && re.is_empty() {
            return None;
        }
        let mut vertices: Vec<Vertex> = lv.into_iter().rev().collect();
        vertices.extend_from_slice(&rv[1..]);
        let mut edges: Vec<EdgeId> = le.into_iter().rev().collect();
        edges.extend(re);
        Some(self.orient(vertices, edges, alpha, beta))
    }

    /// The maximal `(alpha, beta)`-path containing edge `e`, traced outward
    /// from both of its ends.
    pub fn maximal_bichromatic_path_through_edge(
        &self,
        e: EdgeId,
        alpha: Color,
        beta: Color,
    ) -> Result<Option<BichromaticPath>> {
        self.graph.check_edge(e)?;
        self.check_color(alpha)?;
        self.check_color(beta)?;
        self.require_acyclic()?;
        let Some(c) = self.color(e).filter(|&c| c == alpha || c == beta) else {
            return Ok(None);
        };
        let other = if c == alpha { beta } else { alpha };
        let (u, v) = self.graph.endpoints(e);
        let (lv, le) = self.walk(u, other, c);
        let (rv, re) = self.walk(v, other, c);
        let mut vertices: Vec<Vertex> = lv.into_iter().rev().collect();
        vertices.extend(rv);
        let mut edges: Vec<EdgeId> = le.into_iter().rev().collect();
        edges.push(e);
        edges.extend(re);
        Ok(Some(self.orient(vertices, edges, alpha, beta)))
    }

    fn orient(&self, mut vertices: Vec<Vertex>, mut edges: Vec<EdgeId>, a: Color, b: Color) -> BichromaticPath {
        if vertices.first() > vertices.last() {
            vertices.reverse();
            edges.reverse();
        }
        let (first, last) = (vertices[0], *vertices.last().unwrap());
        let end_color = |x: Vertex, e: EdgeId| {
            let c = self.colors[e];
            let other = if c == a { b } else { a };
            !self.has_color_at(x, other)
        };
        let maximal = end_color(first, edges[0]) && end_color(last, *edges.last().unwrap());
        BichromaticPath { colors: (a.min(b), a.max(b)), vertices, edges, maximal }
    }

    /// True iff the maximal path leaving `u` along its `alpha`-edge
    /// alternates `alpha`/`beta` and ends at `v` with an `alpha`-edge.
    pub fn exists_critical_path(&self, alpha: Color, beta: Color, u: Vertex, v: Vertex) -> Result<bool> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        self.check_color(alpha)?;
        self.check_color(beta)?;
        self.require_acyclic()?;
        Ok(self.critical(alpha, beta, u, v))
    }

    pub(crate) fn critical(&self, alpha: Color, beta: Color, u: Vertex, v: Vertex) -> bool {
        let (vs, es) = self.walk(u, alpha, beta);
        es.len() % 2 == 1 && *vs.last().unwrap() == v && v != u
    }

    /// True iff the path leaving `u` along its `alpha`-edge reaches `v`
    /// through a `beta`-edge.
    pub fn exists_alternating_path(&self, alpha: Color, beta: Color, u: Vertex, v: Vertex) -> Result<bool> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        self.check_color(alpha)?;
        self.check_color(beta)?;
        self.require_acyclic()?;
        let (vs, _) = self.walk(u, alpha, beta);
        Ok(vs.iter().enumerate().any(|(i, &x)| x == v && i >= 2 && i % 2 == 0))
    }

    fn uncolored_endpoints(&self, e: EdgeId) -> Result<(Vertex, Vertex)> {
        self.graph.check_edge(e)?;
        if self.color(e).is_some() {
            return Err(Error::AlreadyColored(e));
        }
        Ok(self.graph.endpoints(e))
    }

    /// Colors missing at both ends of the uncolored edge `e`.
    pub fn available_colors(&self, e: EdgeId) -> Result<ColorSet> {
        let (u, v) = self.uncolored_endpoints(e)?;
        self.free_colors_pair(u, v)
    }

    /// Available colors whose assignment closes no bichromatic cycle.
    pub fn valid_colors(&self, e: EdgeId) -> Result<ColorSet> {
        let (u, v) = self.uncolored_endpoints(e)?;
        Ok(self.params.palette().filter(|&a| self.is_valid(u, v, a)).collect())
    }

    /// Validity of `alpha` for the uncolored edge `uv`: available, and no
    /// `(beta, alpha, u, v)`-critical path for a color `beta` common to both
    /// ends.
    pub(crate) fn is_valid(&self, u: Vertex, v: Vertex, alpha: Color) -> bool {
        if self.has_color_at(u, alpha) || self.has_color_at(v, alpha) {
            return false;
        }
        !self
            .params
            .palette()
            .any(|b| self.has_color_at(u, b) && self.has_color_at(v, b) && self.critical(b, alpha, u, v))
    }

    /// Lowest valid color for an uncolored edge.
    pub(crate) fn first_valid(&self, e: EdgeId) -> Option<Color> {
        let (u, v) = self.graph.endpoints(e);
        self.params.palette().find(|&a| self.is_valid(u, v, a))
    }

    /// Colors common to both ends of `uv`.
    pub fn common_colors(&self, u: Vertex, v: Vertex) -> ColorSet {
        self.params.palette().filter(|&c| self.has_color_at(u, c) && self.has_color_at(v, c)).collect()
    }

    /// `kappa K` header, then `u v color` per colored edge in edge order.
    pub fn to_text(&self) -> String {
        let mut out = format!("kappa {}\n", self.params.kappa);
        for (e, &c) in self.colors.iter().enumerate() {
            if c != 0 {
                let (u, v) = self.graph.endpoints(e);
                let _ = writeln!(out, "{u} {v} {c}");
            }
        }
        out
    }

    pub fn parse(graph: &'g Graph, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (no, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing kappa header".into() })?;
        let kappa = header
            .trim()
            .strip_prefix("kappa")
            .and_then(|k| k.trim().parse::<usize>().ok())
            .ok_or(Error::Parse { line: no + 1, message: "header must be `kappa K`".into() })?;
        let mut c = Self::new(graph, ColoringParameters::new(kappa)?);
        let mut seen = BTreeSet::new();
        for (no, line) in lines {
            let err = |message: String| Error::Parse { line: no + 1, message };
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| err(format!("bad integer `{t}`"))))
                .collect::<Result<_>>()?;
            let [u, v, col] = nums[..] else {
                return Err(err("line must be `u v color`".into()));
            };
            let e = graph.edge_id(u, v).ok_or_else(|| err(format!("{u} {v} is not an edge")))?;
            if !seen.insert(e) {
                return Err(err(format!("edge {u} {v} listed twice")));
            }
            if col > kappa {
                return Err(err(format!("color {col} exceeds kappa {kappa}")));
            }
            if col != 0 {
                c.set_color(e, col)?;
            }
        }
        Ok(c)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Outcome of probing an edge `uv` against a full acyclic coloring of `G - uv`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact2Probe {
    pub valid_exists: bool,
    /// `|U(u) ∩ U(v)|`.
    pub s: usize,
    /// `deg(u) + deg(v)`, plus `sum deg(w)` over `W(u, v)` when `s > 0`.
    pub degree_sum: usize,
    /// `kappa + 2` when `s = 0`, else `kappa + 2s + 2`.
    pub required: usize,
    /// Equality when `s = 0`, `>=` otherwise.
    pub degree_sum_bound_ok: bool,
}

/// Checks the extension test for `uv` and the degree-sum relation that a
/// deletion-minimal graph must satisfy. `c` colors every edge of `g` except
/// `uv`; degrees are taken in `g`.
pub fn fact2_probe(g: &Graph, u: Vertex, v: Vertex, c: &PartialEdgeColoring<'_>) -> Result<Fact2Probe> {
    if !std::ptr::eq(g, c.graph()) && g != c.graph() {
        return Err(Error::NotDeletionColoring("coloring belongs to another graph".into()));
    }
    let uv = g.edge_id(u, v).ok_or(Error::MissingEdge(u, v))?;
    if c.color(uv).is_some() {
        return Err(Error::NotDeletionColoring(format!("edge {u}-{v} is colored")));
    }
    if let Some(e) = (0..g.edge_count()).find(|&e| e != uv && c.color(e).is_none()) {
        let (a, b) = g.endpoints(e);
        return Err(Error::NotDeletionColoring(format!("edge {a}-{b} is uncolored")));
    }
    if !c.verify()?.is_ok() {
        return Err(Error::NotAcyclic);
    }
    let valid_exists = !c.valid_colors(uv)?.is_empty();
    let s = c.common_colors(u, v).len();
    let base = g.deg(u) + g.deg(v);
    let (degree_sum, required, ok) = if s == 0 {
        let required = c.kappa() + 2;
        (base, required, base == required)
    } else {
        let extra: usize = c.w_set(u, v)?.iter().map(|&w| g.deg(w)).sum();
        let required = c.kappa() + 2 * s + 2;
        (base + extra, required, base + extra >= required)
    };
    Ok(Fact2Probe { valid_exists, s, degree_sum, required, degree_sum_bound_ok: ok })
}
