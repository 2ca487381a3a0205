//! Structural conditions of deletion-minimal graphs as executable checks.
//!
//! Every check is evaluated per subject vertex and returns a
//! [`ReducibleWitness`] naming the subject first, so a witness can be
//! re-checked by evaluating the same condition at the same vertex.
//!
//! Thresholds are parameterized by the gap `kappa - max degree`. The default
//! profile is `kappa = max degree + 16`, under which C1 reads "both
//! neighbors of a 2-vertex are 20+", C2 "18+", and so on. C5 and C6 use the
//! fixed degree numbers of that profile.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::Serialize;

use crate::coloring::{fact2_probe, ColoringParameters, PartialEdgeColoring};
use crate::embedding::{OnePlaneDrawing, PlaneGraph};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::solver::{exact_acyclic_index, for_each_acyclic_coloring, EXACT_EDGE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConditionId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7SeventeenNeighbors,
    Claim1,
    Claim2,
    LDelta2,
    L2Plus,
    L4SumA,
    L4SumB,
    LGood3,
}

impl ConditionId {
    pub const ALL: [ConditionId; 14] = [
        ConditionId::LDelta2,
        ConditionId::C1,
        ConditionId::C2,
        ConditionId::C3,
        ConditionId::C4,
        ConditionId::C5,
        ConditionId::C6,
        ConditionId::C7SeventeenNeighbors,
        ConditionId::Claim1,
        ConditionId::Claim2,
        ConditionId::L2Plus,
        ConditionId::L4SumA,
        ConditionId::L4SumB,
        ConditionId::LGood3,
    ];

    /// Search order of [`find_reducible_configuration`]: connectivity and
    /// minimum degree, then C1..C7, then the two drawing claims, then the
    /// general lemma forms.
    pub const SEARCH_ORDER: [ConditionId; 13] = [
        ConditionId::LDelta2,
        ConditionId::C1,
        ConditionId::C2,
        ConditionId::C3,
        ConditionId::C4,
        ConditionId::C5,
        ConditionId::C6,
        ConditionId::C7SeventeenNeighbors,
        ConditionId::Claim1,
        ConditionId::Claim2,
        ConditionId::L2Plus,
        ConditionId::L4SumA,
        ConditionId::LGood3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionId::C1 => "C1",
            ConditionId::C2 => "C2",
            ConditionId::C3 => "C3",
            ConditionId::C4 => "C4",
            ConditionId::C5 => "C5",
            ConditionId::C6 => "C6",
            ConditionId::C7SeventeenNeighbors => "C7_seventeen_neighbors",
            ConditionId::Claim1 => "CLAIM1",
            ConditionId::Claim2 => "CLAIM2",
            ConditionId::LDelta2 => "L_delta2",
            ConditionId::L2Plus => "L_2plus",
            ConditionId::L4SumA => "L_4sum_a",
            ConditionId::L4SumB => "L_4sum_b",
            ConditionId::LGood3 => "L_good3",
        }
    }

    pub fn needs_drawing(self) -> bool {
        matches!(self, ConditionId::Claim1 | ConditionId::Claim2)
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConditionId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse { line: 0, message: format!("unknown condition {s:?}") })
    }
}

/// A violation of one condition. `vertices[0]` is the subject the condition
/// was evaluated at; the rest are the vertices that make it fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducibleWitness {
    pub condition: ConditionId,
    pub vertices: Vec<Vertex>,
    pub detail: String,
}

impl ReducibleWitness {
    pub fn subject(&self) -> Vertex {
        self.vertices[0]
    }
}

/// Precomputed context for evaluating conditions on one graph.
pub struct Auditor<'a> {
    g: &'a Graph,
    plane: Option<&'a PlaneGraph>,
    kappa: i64,
    delta: i64,
    gap: i64,
    cut_vertices: BTreeSet<Vertex>,
    /// Smallest vertex of each component except the one holding vertex 0.
    stray_components: BTreeSet<Vertex>,
}

impl<'a> Auditor<'a> {
    pub fn new(g: &'a Graph, plane: Option<&'a PlaneGraph>, kappa: usize) -> Result<Self> {
        if let Some(p) = plane {
            if p.base() != g {
                return Err(Error::Rotation("drawing is of a different graph".into()));
            }
        }
        let delta = g.delta() as i64;
        let kappa = kappa as i64;
        let labels = g.components();
        let mut seen = BTreeSet::new();
        let mut stray_components = BTreeSet::new();
        for v in g.vertices() {
            if seen.insert(labels[v]) && v != 0 {
                stray_components.insert(v);
            }
        }
        Ok(Auditor {
            g,
            plane,
            kappa,
            delta,
            gap: (kappa - delta).max(0),
            cut_vertices: g.articulation_points().into_iter().collect(),
            stray_components,
        })
    }

    pub fn graph(&self) -> &'a Graph {
        self.g
    }

    pub fn kappa(&self) -> usize {
        self.kappa as usize
    }

    fn deg(&self, v: Vertex) -> i64 {
        self.g.deg(v) as i64
    }

    fn count_at_least(&self, v: Vertex, d: i64) -> i64 {
        self.g.neighbors(v).filter(|&u| self.deg(u) >= d).count() as i64
    }

    fn below(&self, v: Vertex, d: i64) -> Vec<Vertex> {
        self.g.neighbors(v).filter(|&u| self.deg(u) < d).collect()
    }

    fn make(id: ConditionId, vertices: Vec<Vertex>, detail: String) -> ReducibleWitness {
        ReducibleWitness { condition: id, vertices, detail }
    }

    fn witness(id: ConditionId, vertices: Vec<Vertex>, detail: String) -> Option<ReducibleWitness> {
        Some(Self::make(id, vertices, detail))
    }

    /// Evaluates `id` with `v` as the subject.
    pub fn at(&self, id: ConditionId, v: Vertex) -> Result<Option<ReducibleWitness>> {
        self.g.check_vertex(v)?;
        if id.needs_drawing() && self.plane.is_none() {
            return Err(Error::DrawingRequired(id.name()));
        }
        let d = self.deg(v);
        let (k, gap) = (self.kappa, self.gap);
        use ConditionId::*;
        let w = match id {
            LDelta2 => {
                if d < 2 {
                    Self::witness(id, vec![v], format!("vertex {v} has degree {d} < 2"))
                } else if self.cut_vertices.contains(&v) {
                    Self::witness(id, vec![v], format!("vertex {v} is a cut vertex"))
                } else if self.stray_components.contains(&v) {
                    Self::witness(id, vec![v], format!("vertex {v} lies in a second component"))
                } else {
                    None
                }
            }
            C1 if d == 2 => {
                let bad = self.below(v, gap + 4);
                (!bad.is_empty()).then(|| {
                    let detail = format!("2-vertex {v} has neighbors {bad:?} below degree {}", gap + 4);
                    Self::make(id, [vec![v], bad].concat(), detail)
                })
            }
            C2 if d == 3 => {
                let bad = self.below(v, gap + 2);
                (!bad.is_empty()).then(|| {
                    let detail = format!("3-vertex {v} has neighbors {bad:?} below degree {}", gap + 2);
                    Self::make(id, [vec![v], bad].concat(), detail)
                })
            }
            C3 if d == gap + 2 => {
                let threes: Vec<Vertex> = self.g.neighbors(v).filter(|&u| self.deg(u) == 3).collect();
                (threes.len() >= 2).then(|| {
                    let detail = format!("{d}-vertex {v} has 3-neighbors {threes:?}");
                    Self::make(id, [vec![v], threes].concat(), detail)
                })
            }
            C4 => {
                let big = self.count_at_least(v, 4);
                (big < 2).then(|| Self::make(id, vec![v], format!("vertex {v} has {big} neighbors of degree 4+")))
            }
            C5 if d == 4 => {
                let degs: Vec<i64> = self.g.neighbors(v).map(|u| self.deg(u)).collect();
                let all_ten = degs.iter().all(|&x| x >= 10);
                let small = degs.iter().filter(|&&x| x <= 9).count();
                let huge = degs.iter().filter(|&&x| x >= 22).count();
                if all_ten || (small == 1 && huge == 3) {
                    None
                } else {
                    let nbrs: Vec<Vertex> = self.g.neighbors(v).collect();
                    let detail = format!("4-vertex {v} has neighbor degrees {degs:?}");
                    Self::witness(id, [vec![v], nbrs].concat(), detail)
                }
            }
            C6 if d == 5 => {
                let bad = self.below(v, 8);
                (bad.len() >= 3).then(|| {
                    let detail = format!("5-vertex {v} has neighbors {bad:?} of degree 7-");
                    Self::make(id, [vec![v], bad].concat(), detail)
                })
            }
            C7SeventeenNeighbors if d >= 10 && self.g.neighbors(v).any(|u| self.deg(u) == 2) => {
                let big = self.count_at_least(v, gap + 2);
                (big < gap + 1).then(|| {
                    let detail = format!(
                        "{d}-vertex {v} with a 2-neighbor has {big} neighbors of degree {}+, needs {}",
                        gap + 2,
                        gap + 1
                    );
                    Self::make(id, vec![v], detail)
                })
            }
            Claim1 if d == 2 => {
                let p = self.plane.expect("checked above");
                let faces: Vec<usize> = p.faces_at(v).iter().copied().filter(|&f| p.faces()[f].degree() == 3).collect();
                (!faces.is_empty()).then(|| Self::make(id, vec![v], format!("2-vertex {v} lies on 3-faces {faces:?}")))
            }
            Claim2 => {
                let p = self.plane.expect("checked above");
                let t = p.check_claim2(v)?;
                (!t.ok).then(|| {
                    let detail = format!("vertex {v} lies on {} 3-faces, bound {}", t.count, t.bound);
                    Self::make(id, vec![v], detail)
                })
            }
            L2Plus => self.two_plus(v),
            L4SumA if d == 4 => {
                let sum: i64 = self.g.neighbors(v).map(|u| self.deg(u)).sum();
                self.g.neighbors(v).find(|&w| self.deg(w) <= gap).and_then(|w| {
                    (sum < 2 * k + 4).then(|| {
                        let detail = format!("4-vertex {v} with small neighbor {w}: degree sum {sum} < {}", 2 * k + 4);
                        Self::make(id, vec![v, w], detail)
                    })
                })
            }
            L4SumB if d == 4 => {
                let sum: i64 = self.g.neighbors(v).map(|u| self.deg(u)).sum();
                self.g
                    .neighbors(v)
                    .filter(|&w| self.deg(w) <= gap + 1)
                    .filter(|&w| self.g.neighbors(w).filter(|&x| self.g.has_edge(x, v)).count() >= 2)
                    .find_map(|w| {
                        if sum < 2 * k + 5 {
                            let detail =
                                format!("4-vertex {v}, edge to {w} in two triangles: degree sum {sum} < {}", 2 * k + 5);
                            Self::witness(id, vec![v, w], detail)
                        } else if sum == 2 * k + 5 {
                            let small: Vec<Vertex> =
                                self.g.neighbors(w).filter(|&x| x != v && self.deg(x) < 6).collect();
                            (!small.is_empty()).then(|| {
                                let detail =
                                    format!("equality at 4-vertex {v}, but {w} has neighbors {small:?} of degree 5-");
                                Self::make(id, [vec![v, w], small].concat(), detail)
                            })
                        } else {
                            None
                        }
                    })
            }
            LGood3 if d == 3 => self.good3(v),
            _ => None,
        };
        Ok(w)
    }

    /// Lemma on a vertex `v` next to a 2-vertex `v0` with other neighbor `w`,
    /// including the conditional forms (A) and (B).
    fn two_plus(&self, v: Vertex) -> Option<ReducibleWitness> {
        let (k, gap, delta) = (self.kappa, self.gap, self.delta);
        let d = self.deg(v);
        let twos: Vec<Vertex> = self.g.neighbors(v).filter(|&u| self.deg(u) == 2).collect();
        let high = self.count_at_least(v, k - d + 2);
        for &v0 in &twos {
            let w = self.g.neighbors(v0).find(|&x| x != v).expect("2-vertex has two neighbors");
            let dw = self.deg(w);
            let id = ConditionId::L2Plus;
            if high < k - dw + 1 {
                let detail = format!(
                    "{v} next to 2-vertex {v0} (other neighbor {w}): {high} neighbors of degree {}+, needs {}",
                    k - d + 2,
                    k - dw + 1
                );
                return Self::witness(id, vec![v, v0, w], detail);
            }
            if k >= d + 1 && self.g.has_edge(w, v) && (high < k - dw + 2 || d < k - dw + 3) {
                let detail = format!("(A) at {v} via 2-vertex {v0} and adjacent {w}");
                return Self::witness(id, vec![v, v0, w], detail);
            }
        }
        if !twos.is_empty() && k >= delta + 2 && self.count_at_least(v, gap + 2) == gap + 1 {
            let n2 = twos.len() as i64;
            if n2 > d + delta - k - 3 || d < gap + 4 {
                let detail = format!("(B) at {v}: {n2} 2-neighbors, degree {d}");
                return Self::witness(ConditionId::L2Plus, [vec![v], twos].concat(), detail);
            }
        }
        None
    }

    /// Items (b)-(f) of the lemma on a 3-vertex with a neighbor of degree
    /// `gap + 2`. (c) is checked directly; (b), (d), (e), (f) must hold
    /// together for some labeling of the other two neighbors.
    fn good3(&self, v: Vertex) -> Option<ReducibleWitness> {
        let (k, gap, delta) = (self.kappa, self.gap, self.delta);
        let nbrs: Vec<Vertex> = self.g.neighbors(v).collect();
        for (i, &w) in nbrs.iter().enumerate() {
            if self.deg(w) != gap + 2 {
                continue;
            }
            let others: Vec<Vertex> = nbrs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            let (a, b) = (others[0], others[1]);
            let id = ConditionId::LGood3;
            let in_triangle = self.g.neighbors(w).any(|x| self.g.has_edge(x, v));
            let small = self.g.neighbors(w).filter(|&x| self.deg(x) <= 3).count();
            if in_triangle || small != 1 {
                let detail = format!("(c) at 3-vertex {v}, neighbor {w}: triangle {in_triangle}, {small} 3- neighbors");
                return Self::witness(id, vec![v, w, a, b], detail);
            }
            let fits = |v1: Vertex, v2: Vertex| {
                let (d1, d2) = (self.deg(v1), self.deg(v2));
                d1 == delta
                    && d2 <= delta
                    && d2 >= gap + 3
                    && self.count_at_least(v1, gap + 2) >= k - d2 + 1
                    && self.count_at_least(v2, k - d2 + 2) >= gap
                    && self.count_at_least(v2, 4) >= gap + 1
            };
            if !fits(a, b) && !fits(b, a) {
                let detail = format!("(b)/(d)/(e)/(f) at 3-vertex {v}, neighbor {w}: no labeling of {a}, {b} works");
                return Self::witness(id, vec![v, w, a, b], detail);
            }
        }
        None
    }

    pub fn check(&self, id: ConditionId) -> Result<Vec<ReducibleWitness>> {
        let mut out = Vec::new();
        for v in self.g.vertices() {
            out.extend(self.at(id, v)?);
        }
        Ok(out)
    }

    /// True iff evaluating the witness's condition at its subject reproduces
    /// it exactly.
    pub fn recheck(&self, w: &ReducibleWitness) -> Result<bool> {
        let Some(&subject) = w.vertices.first() else {
            return Ok(false);
        };
        Ok(self.at(w.condition, subject)?.as_ref() == Some(w))
    }

    /// True iff `id` fails with `v` as subject or, for C1, `v` is one of the
    /// undersized neighbors of a failing 2-vertex.
    pub fn violated_at(&self, id: ConditionId, v: Vertex) -> Result<bool> {
        if self.at(id, v)?.is_some() {
            return Ok(true);
        }
        if id == ConditionId::C1 {
            for u in self.g.neighbors(v) {
                if let Some(w) = self.at(id, u)? {
                    if w.vertices[1..].contains(&v) {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }
}

fn plane_of(d: Option<&OnePlaneDrawing>) -> Result<Option<PlaneGraph>> {
    d.map(OnePlaneDrawing::planarize).transpose()
}

/// All witnesses of `id` on `g`. Claims need a drawing.
pub fn check_condition(
    g: &Graph,
    d: Option<&OnePlaneDrawing>,
    kappa: usize,
    id: ConditionId,
) -> Result<Vec<ReducibleWitness>> {
    if id.needs_drawing() && d.is_none() {
        return Err(Error::DrawingRequired(id.name()));
    }
    let plane = plane_of(d)?;
    Auditor::new(g, plane.as_ref(), kappa)?.check(id)
}

pub fn recheck_witness(g: &Graph, d: Option<&OnePlaneDrawing>, kappa: usize, w: &ReducibleWitness) -> Result<bool> {
    let plane = plane_of(d)?;
    Auditor::new(g, plane.as_ref(), kappa)?.recheck(w)
}

/// First witness in [`ConditionId::SEARCH_ORDER`]. `None` would mean the
/// input satisfies every condition, which cannot happen for a connected
/// triangle-free 1-plane graph with `kappa = max degree + 16`.
pub fn find_reducible_configuration(g: &Graph, d: &OnePlaneDrawing, kappa: usize) -> Result<Option<ReducibleWitness>> {
    if let Some(t) = g.find_triangle() {
        return Err(Error::HasTriangle(t));
    }
    let plane = d.planarize()?;
    let auditor = Auditor::new(g, Some(&plane), kappa)?;
    for id in ConditionId::SEARCH_ORDER {
        for v in g.vertices() {
            if let Some(w) = auditor.at(id, v)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: ConditionId,
    /// `None` when the condition needs a drawing and none was given.
    pub holds: Option<bool>,
    pub witnesses: Vec<ReducibleWitness>,
}

/// Every condition on `g`; claims are skipped without a drawing.
pub fn audit_all(g: &Graph, d: Option<&OnePlaneDrawing>, kappa: usize) -> Result<Vec<ConditionReport>> {
    let plane = plane_of(d)?;
    let auditor = Auditor::new(g, plane.as_ref(), kappa)?;
    ConditionId::ALL
        .into_iter()
        .map(|id| {
            if id.needs_drawing() && plane.is_none() {
                return Ok(ConditionReport { condition: id, holds: None, witnesses: vec![] });
            }
            let witnesses = auditor.check(id)?;
            Ok(ConditionReport { condition: id, holds: Some(witnesses.is_empty()), witnesses })
        })
        .collect()
}

/// Largest number of colorings enumerated per edge by the probe.
pub const PROBE_ENUMERATION_CAP: usize = 200_000;

/// The degree-sum relation for uncolorable edges and good-3-vertex item (a),
/// over all colorings of `G - uv`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ColoringChecks {
    pub colorings: usize,
    /// Every enumerated coloring had no valid color for the removed edge.
    pub no_valid_extension: bool,
    /// Distinct values of `|U(u) ∩ U(v)|` seen.
    pub common_color_counts: BTreeSet<usize>,
    /// Colorings with `s = 0`; each must have `deg(u) + deg(v) = kappa + 2`.
    pub equality_cases: usize,
    pub degree_sum_failures: usize,
    /// Edges `wv` (3-vertex `v`, `deg(w) = kappa - max degree + 2`) whose
    /// colorings did not all have exactly one common color.
    pub good3a_failures: Vec<(Vertex, Vertex)>,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeletionProbe {
    pub is_candidate: bool,
    /// Exact index of `g` when it is at most `kappa`.
    pub chi_a_prime: Option<usize>,
    /// Exact index of `G - e` for every edge, `None` when above `kappa`.
    pub edge_deleted: Vec<((Vertex, Vertex), Option<usize>)>,
    /// Present only for candidates.
    pub checks: Option<ColoringChecks>,
}

/// Decides whether `g` is `kappa`-deletion-minimal (checking single-edge
/// deletions suffices, since acyclic colorability is closed under subgraphs)
/// and, for candidates, checks the degree-sum relation and good-3-vertex
/// item (a) on every acyclic coloring of every `G - uv`.
pub fn deletion_minimal_probe(g: &Graph, kappa: usize) -> Result<DeletionProbe> {
    if g.edge_count() > EXACT_EDGE_LIMIT {
        return Err(Error::TooLarge { edges: g.edge_count(), limit: EXACT_EDGE_LIMIT });
    }
    if let Some(r) = exact_acyclic_index(g, kappa)? {
        return Ok(DeletionProbe {
            is_candidate: false,
            chi_a_prime: Some(r.chi_a_prime),
            edge_deleted: vec![],
            checks: None,
        });
    }
    let mut edge_deleted = Vec::new();
    for &(u, v) in g.edges() {
        let h = g.remove_edge(u, v)?;
        let chi = exact_acyclic_index(&h, kappa)?.map(|r| r.chi_a_prime);
        edge_deleted.push(((u, v), chi));
    }
    let is_candidate = g.edge_count() > 0 && edge_deleted.iter().all(|(_, c)| c.is_some());
    let checks = if is_candidate { Some(coloring_checks(g, kappa)?) } else { None };
    Ok(DeletionProbe { is_candidate, chi_a_prime: None, edge_deleted, checks })
}

fn coloring_checks(g: &Graph, kappa: usize) -> Result<ColoringChecks> {
    let params = ColoringParameters::new(kappa)?;
    let good3_degree = (kappa.saturating_sub(g.delta())) + 2;
    let mut out = ColoringChecks { no_valid_extension: true, ..Default::default() };
    for &(u, v) in g.edges() {
        let h = g.remove_edge(u, v)?;
        let map: Vec<usize> = h.edges().iter().map(|&(a, b)| g.edge_id(a, b).expect("subgraph edge")).collect();
        // item (a) applies with v a 3-vertex and the other end of degree gap + 2
        let good3 = [(u, v), (v, u)]
            .into_iter()
            .filter(|&(w, x)| g.deg(x) == 3 && g.deg(w) == good3_degree)
            .collect::<Vec<_>>();
        let mut good3_ok = true;
        let mut count = 0;
        let mut failure: Option<Error> = None;
        for_each_acyclic_coloring(&h, kappa, |ch| {
            let mut full = PartialEdgeColoring::new(g, params);
            for (i, &e) in map.iter().enumerate() {
                let c = ch.color(i).expect("full coloring");
                full.set_color(e, c).expect("in palette");
            }
            match fact2_probe(g, u, v, &full) {
                Ok(p) => {
                    out.no_valid_extension &= !p.valid_exists;
                    out.common_color_counts.insert(p.s);
                    if p.s == 0 {
                        out.equality_cases += 1;
                    }
                    if !p.degree_sum_bound_ok {
                        out.degree_sum_failures += 1;
                    }
                    if !good3.is_empty() && p.s != 1 {
                        good3_ok = false;
                    }
                }
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            }
            count += 1;
            if count >= PROBE_ENUMERATION_CAP {
                out.truncated = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        out.colorings += count;
        if !good3_ok {
            out.good3a_failures.extend(good3);
        }
    }
    Ok(out)
}
