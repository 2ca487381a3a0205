//! 1-plane drawings and their planarization.
//!
//! A drawing is given combinatorially: the base graph, the list of crossing
//! edge pairs, and a rotation system of the planarized graph. In the
//! planarized graph vertex ids `0..n` are the real vertices and `n + i` is the
//! crossing vertex of the `i`-th declared pair (written `Xi` in files).
//!
//! Faces are traced with the convention: after the dart `u -> v` comes
//! `v -> w`, where `w` follows `u` in the rotation at `v`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::discharging::Charge;
use crate::error::{Error, Result};
use crate::graph::{parse_graph_section, EdgeId, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePlaneDrawing {
    base: Graph,
    crossings: Vec<(EdgeId, EdgeId)>,
    rotation: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    Real,
    Crossing,
}

/// A face of the planarized graph. Dart `i` runs from `walk[i]` to
/// `walk[(i + 1) % walk.len()]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<Vertex>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.walk.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.walk.len();
        (0..n).map(move |i| (self.walk[i], self.walk[(i + 1) % n]))
    }
}

/// The associated plane graph: crossings replaced by degree-4 vertices.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    base: Graph,
    crossings: Vec<(EdgeId, EdgeId)>,
    rotation: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
    /// Base edge each segment belongs to.
    origin: Vec<EdgeId>,
    faces: Vec<Face>,
    /// Per vertex, the faces at each of its darts (one entry per incidence).
    vertex_faces: Vec<Vec<usize>>,
}

/// Neighbors of every planarized vertex, unordered, derived from the base
/// graph and the crossing pairs. Also returns the segment list with origins.
fn planarized_neighbors(
    base: &Graph,
    crossings: &[(EdgeId, EdgeId)],
) -> Result<(Vec<Vec<Vertex>>, Vec<(Vertex, Vertex)>, Vec<EdgeId>)> {
    let n = base.vertex_count();
    let mut crossed_at: Vec<Option<usize>> = vec![None; base.edge_count()];
    for (i, &(e1, e2)) in crossings.iter().enumerate() {
        base.check_edge(e1)?;
        base.check_edge(e2)?;
        for e in [e1, e2] {
            if crossed_at[e].is_some() {
                return Err(Error::MultiplyCrossed(e));
            }
            crossed_at[e] = Some(i);
        }
        let (a, b) = base.endpoints(e1);
        let (c, d) = base.endpoints(e2);
        if a == c || a == d || b == c || b == d {
            return Err(Error::AdjacentCrossing(e1, e2));
        }
    }
    let mut nbrs = vec![Vec::new(); n + crossings.len()];
    let mut segments = Vec::new();
    let mut origin = Vec::new();
    for (e, &(u, v)) in base.edges().iter().enumerate() {
        match crossed_at[e] {
            None => {
                nbrs[u].push(v);
                nbrs[v].push(u);
                segments.push((u, v));
                origin.push(e);
            }
            Some(i) => {
                let x = n + i;
                for w in [u, v] {
                    nbrs[w].push(x);
                    nbrs[x].push(w);
                    segments.push((w, x));
                    origin.push(e);
                }
            }
        }
    }
    Ok((nbrs, segments, origin))
}

impl OnePlaneDrawing {
    /// Validates crossing pairs and that `rotation[v]` is an ordering of the
    /// planarized neighbors of `v` for every vertex. Planarity of the
    /// rotation system is checked by [`OnePlaneDrawing::planarize`].
    pub fn new(base: Graph, crossings: Vec<(EdgeId, EdgeId)>, rotation: Vec<Vec<Vertex>>) -> Result<Self> {
        let (nbrs, _, _) = planarized_neighbors(&base, &crossings)?;
        if rotation.len() != nbrs.len() {
            return Err(Error::Rotation(format!("expected {} rotations, found {}", nbrs.len(), rotation.len())));
        }
        for (v, (rot, want)) in rotation.iter().zip(&nbrs).enumerate() {
            let mut a = rot.clone();
            let mut b = want.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(Error::Rotation(format!(
                    "rotation at {} lists {:?} but its neighbors are {:?}",
                    vertex_name(v, base.vertex_count()),
                    rot,
                    want
                )));
            }
        }
        let n = base.vertex_count();
        for (i, &(e1, _)) in crossings.iter().enumerate() {
            let rot = &rotation[n + i];
            let (a, b) = base.endpoints(e1);
            let pa = rot.iter().position(|&w| w == a).unwrap();
            if rot[(pa + 2) % 4] != b {
                return Err(Error::Rotation(format!("rotation at X{i} does not alternate the crossing edges")));
            }
        }
        Ok(OnePlaneDrawing { base, crossings, rotation })
    }

    /// Drawing without crossings.
    pub fn plane(base: Graph, rotation: Vec<Vec<Vertex>>) -> Result<Self> {
        Self::new(base, vec![], rotation)
    }

    /// Builds the rotation system from a straight-line drawing: `coords`
    /// holds positions of the real vertices, crossing points are the
    /// intersections of the two crossing segments, and neighbors are sorted
    /// counterclockwise by angle.
    pub fn from_straight_line(base: Graph, crossings: Vec<(EdgeId, EdgeId)>, coords: &[(f64, f64)]) -> Result<Self> {
        let (nbrs, _, _) = planarized_neighbors(&base, &crossings)?;
        let n = base.vertex_count();
        if coords.len() != n {
            return Err(Error::Rotation(format!("expected {n} coordinates, found {}", coords.len())));
        }
        let mut pos = coords.to_vec();
        for &(e1, e2) in &crossings {
            let (a, b) = base.endpoints(e1);
            let (c, d) = base.endpoints(e2);
            let p = segment_intersection(coords[a], coords[b], coords[c], coords[d])
                .ok_or_else(|| Error::Rotation(format!("segments {a}-{b} and {c}-{d} do not cross")))?;
            pos.push(p);
        }
        let rotation = nbrs
            .iter()
            .enumerate()
            .map(|(v, ws)| {
                let mut ws = ws.clone();
                let (x0, y0) = pos[v];
                ws.sort_by(|&p, &q| {
                    let ap = (pos[p].1 - y0).atan2(pos[p].0 - x0);
                    let aq = (pos[q].1 - y0).atan2(pos[q].0 - x0);
                    ap.total_cmp(&aq)
                });
                ws
            })
            .collect();
        Self::new(base, crossings, rotation)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn crossings(&self) -> &[(EdgeId, EdgeId)] {
        &self.crossings
    }

    pub fn rotation(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    /// Replaces each crossing with a degree-4 vertex, traces faces and checks
    /// Euler's formula on every component that has edges.
    pub fn planarize(&self) -> Result<PlaneGraph> {
        let (_, edges, origin) = planarized_neighbors(&self.base, &self.crossings)?;
        let total = self.rotation.len();
        let mut pos: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, &w) in rot.iter().enumerate() {
                pos.insert((v, w), i);
            }
        }
        let mut used: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        let mut faces = Vec::new();
        let mut vertex_faces = vec![Vec::new(); total];
        for v in 0..total {
            for &w in &self.rotation[v] {
                if used.contains_key(&(v, w)) {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut a, mut b) = (v, w);
                while !used.contains_key(&(a, b)) {
                    used.insert((a, b), id);
                    walk.push(a);
                    vertex_faces[a].push(id);
                    let rot = &self.rotation[b];
                    let next = rot[(pos[&(b, a)] + 1) % rot.len()];
                    (a, b) = (b, next);
                }
                if (a, b) != (v, w) {
                    return Err(Error::Rotation("face traversal did not close".into()));
                }
                faces.push(Face { walk });
            }
        }
        let plane = PlaneGraph {
            base: self.base.clone(),
            crossings: self.crossings.clone(),
            rotation: self.rotation.clone(),
            edges,
            origin,
            faces,
            vertex_faces,
        };
        plane.check_euler()?;
        Ok(plane)
    }

    /// Parses the drawing format: the edge-list section, then `x a b c d`
    /// lines (edge `ab` crosses edge `cd`), then `rot v: w1 w2 ...` lines.
    pub fn parse(text: &str) -> Result<OnePlaneDrawing> {
        let mut lines = text.lines().enumerate();
        let (base, first) = parse_graph_section(&mut lines)?;
        let n = base.vertex_count();
        let rest: Vec<(usize, &str)> = first.into_iter().chain(lines.filter(|(_, l)| !l.trim().is_empty())).collect();
        let mut crossings = Vec::new();
        let mut rot_lines = Vec::new();
        for (no, line) in rest {
            let err = |message: String| Error::Parse { line: no + 1, message };
            let line = line.trim();
            if let Some(tail) = line.strip_prefix("x ") {
                if !rot_lines.is_empty() {
                    return Err(err("crossing declared after rotations".into()));
                }
                let nums: Vec<usize> = tail
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| err(format!("bad integer `{t}`"))))
                    .collect::<Result<_>>()?;
                let [a, b, c, d] = nums[..] else {
                    return Err(err("crossing line must be `x a b c d`".into()));
                };
                let e1 = base.edge_id(a, b).ok_or_else(|| err(format!("{a} {b} is not an edge")))?;
                let e2 = base.edge_id(c, d).ok_or_else(|| err(format!("{c} {d} is not an edge")))?;
                crossings.push((e1, e2));
            } else if let Some(tail) = line.strip_prefix("rot ") {
                let (head, list) = tail.split_once(':').ok_or_else(|| err("missing `:`".into()))?;
                rot_lines.push((no, head.trim().to_string(), list.to_string()));
            } else {
                return Err(err(format!("unrecognized line `{line}`")));
            }
        }
        let total = n + crossings.len();
        let mut rotation: Vec<Option<Vec<Vertex>>> = vec![None; total];
        for (no, head, list) in rot_lines {
            let err = |message: String| Error::Parse { line: no + 1, message };
            let v = parse_vertex_name(&head, total, n).ok_or_else(|| err(format!("bad vertex `{head}`")))?;
            if rotation[v].is_some() {
                return Err(err(format!("second rotation for `{head}`")));
            }
            let ws = list
                .split_whitespace()
                .map(|t| parse_vertex_name(t, total, n).ok_or_else(|| err(format!("bad vertex `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            rotation[v] = Some(ws);
        }
        let rotation = rotation.into_iter().map(Option::unwrap_or_default).collect();
        OnePlaneDrawing::new(base, crossings, rotation)
    }

    pub fn to_text(&self) -> String {
        let n = self.base.vertex_count();
        let mut out = self.base.to_edge_list();
        for &(e1, e2) in &self.crossings {
            let (a, b) = self.base.endpoints(e1);
            let (c, d) = self.base.endpoints(e2);
            let _ = writeln!(out, "x {a} {b} {c} {d}");
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            let names: Vec<String> = rot.iter().map(|&w| vertex_name(w, n)).collect();
            let _ = writeln!(out, "rot {}: {}", vertex_name(v, n), names.join(" "));
        }
        out
    }
}

fn vertex_name(v: Vertex, n: usize) -> String {
    if v < n {
        v.to_string()
    } else {
        format!("X{}", v - n)
    }
}

fn parse_vertex_name(t: &str, total: usize, n: usize) -> Option<Vertex> {
    let v = match t.strip_prefix('X') {
        Some(k) => n + k.parse::<usize>().ok()?,
        None => t.parse::<usize>().ok().filter(|&v| v < n)?,
    };
    (v < total).then_some(v)
}

pub(crate) fn segment_intersection(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> Option<(f64, f64)> {
    let r = (b.0 - a.0, b.1 - a.1);
    let s = (d.0 - c.0, d.1 - c.1);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom.abs() < 1e-12 {
        return None;
    }
    let t = ((c.0 - a.0) * s.1 - (c.1 - a.1) * s.0) / denom;
    let u = ((c.0 - a.0) * r.1 - (c.1 - a.1) * r.0) / denom;
    let inside = |x: f64| x > 1e-9 && x < 1.0 - 1e-9;
    (inside(t) && inside(u)).then(|| (a.0 + t * r.0, a.1 + t * r.1))
}

/// Result of the Claim-2 style count at one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangularFaceCount {
    pub count: usize,
    pub bound: usize,
    pub ok: bool,
}

/// `floor(2 (l - lambda) / 3)`: the most 3-faces an `l`-vertex with `lambda`
/// adjacent 2-vertices may touch.
pub fn claim2_bound(degree: usize, two_neighbors: usize) -> usize {
    2 * degree.saturating_sub(two_neighbors) / 3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Claim1Violation {
    pub vertex: Vertex,
    pub face: usize,
}

impl PlaneGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn real_count(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn kind(&self, v: Vertex) -> VertexKind {
        if v < self.real_count() {
            VertexKind::Real
        } else {
            VertexKind::Crossing
        }
    }

    pub fn is_crossing(&self, v: Vertex) -> bool {
        v >= self.real_count()
    }

    /// Segments of the planarized graph.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Base edge that segment `i` is part of.
    pub fn origin(&self, segment: usize) -> EdgeId {
        self.origin[segment]
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    /// Degree in the planarized graph.
    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Face ids around `v`, one per incidence.
    pub fn faces_at(&self, v: Vertex) -> &[usize] {
        &self.vertex_faces[v]
    }

    /// Contracts every crossing vertex back into its two edges.
    pub fn contract(&self) -> Graph {
        let n = self.real_count();
        let mut edges: Vec<(Vertex, Vertex)> = self.edges.iter().copied().filter(|&(u, v)| u < n && v < n).collect();
        for (i, _) in self.crossings.iter().enumerate() {
            let rot = &self.rotation[n + i];
            edges.push((rot[0], rot[2]));
            edges.push((rot[1], rot[3]));
        }
        Graph::new(n, edges).expect("planarization of a simple graph contracts to it")
    }

    fn components(&self) -> Vec<usize> {
        let g = Graph::new(self.vertex_count(), self.edges.iter().copied()).expect("segments form a simple graph");
        g.components()
    }

    fn check_euler(&self) -> Result<()> {
        let label = self.components();
        let count = label.iter().copied().max().map_or(0, |m| m + 1);
        let mut v = vec![0i64; count];
        let mut e = vec![0i64; count];
        let mut f = vec![0i64; count];
        for &l in &label {
            v[l] += 1;
        }
        for &(a, _) in &self.edges {
            e[label[a]] += 1;
        }
        for face in &self.faces {
            f[label[face.walk[0]]] += 1;
        }
        for c in 0..count {
            if e[c] > 0 && v[c] - e[c] + f[c] != 2 {
                return Err(Error::NonPlanar { euler: v[c] - e[c] + f[c] });
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&l| l == 0)
    }

    /// `sum_v (deg v - 4) + sum_f (deg f - 4)`, which is `-8` for a connected
    /// plane graph.
    pub fn euler_charge_identity(&self) -> Result<Charge> {
        if !self.is_connected() {
            let components = self.components().iter().copied().max().map_or(0, |m| m + 1);
            return Err(Error::Disconnected { components });
        }
        let vertices: i64 = (0..self.vertex_count()).map(|v| self.degree(v) as i64 - 4).sum();
        let faces: i64 = self.faces.iter().map(|f| f.degree() as i64 - 4).sum();
        Ok(Charge::from_integer(vertices + faces))
    }

    /// Neighbors of a real vertex in the base graph.
    pub fn base_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.base.neighbors(v)
    }

    /// Real 2-vertices lying on a 3-face, one entry per (vertex, face) incidence.
    pub fn check_claim1(&self) -> Vec<Claim1Violation> {
        let mut out = Vec::new();
        for v in self.base.vertices() {
            if self.base.deg(v) != 2 {
                continue;
            }
            for &f in &self.vertex_faces[v] {
                if self.faces[f].degree() == 3 {
                    out.push(Claim1Violation { vertex: v, face: f });
                }
            }
        }
        out
    }

    /// Number of 3-faces at a real vertex against `floor(2 (l - lambda) / 3)`.
    pub fn check_claim2(&self, v: Vertex) -> Result<TriangularFaceCount> {
        if v >= self.vertex_count() {
            return Err(Error::InvalidVertex { vertex: v, count: self.vertex_count() });
        }
        if self.is_crossing(v) {
            return Err(Error::CrossingVertex(v));
        }
        let degree = self.base.deg(v);
        let lambda = self.base.neighbors(v).filter(|&u| self.base.deg(u) == 2).count();
        let count = self.triangular_faces_at(v);
        let bound = claim2_bound(degree, lambda);
        Ok(TriangularFaceCount { count, bound, ok: count <= bound })
    }

    pub fn triangular_faces_at(&self, v: Vertex) -> usize {
        self.vertex_faces[v].iter().filter(|&&f| self.faces[f].degree() == 3).count()
    }
}
