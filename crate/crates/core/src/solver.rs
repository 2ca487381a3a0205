//! Exact and constructive acyclic edge coloring.
//!
//! [`exact_acyclic_index`] is a backtracking search for small graphs.
//! [`heuristic_color`] colors edges greedily with the lowest valid color and,
//! when an edge has no valid color, tries three local repairs in order:
//! recoloring one edge at an endpoint, exchanging the colors of two edges at
//! an endpoint, and uncoloring a sibling edge to free its color.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::{BichromaticCycle, Color, ColoringParameters, PartialEdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};

/// Largest edge count accepted by the exhaustive routines.
pub const EXACT_EDGE_LIMIT: usize = 20;

#[derive(Debug, Clone)]
pub struct ExactResult<'g> {
    pub chi_a_prime: usize,
    pub witness: PartialEdgeColoring<'g>,
}

fn check_exact_size(g: &Graph) -> Result<()> {
    if g.edge_count() > EXACT_EDGE_LIMIT {
        Err(Error::TooLarge { edges: g.edge_count(), limit: EXACT_EDGE_LIMIT })
    } else {
        Ok(())
    }
}

/// Edges in breadth-first discovery order, so that consecutive edges in the
/// search tend to share vertices and prune early.
fn search_order(g: &Graph) -> Vec<EdgeId> {
    let mut seen_v = vec![false; g.vertex_count()];
    let mut seen_e = vec![false; g.edge_count()];
    let mut order = Vec::with_capacity(g.edge_count());
    for s in g.vertices() {
        if seen_v[s] {
            continue;
        }
        seen_v[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in g.incident(x) {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                if !seen_v[y] {
                    seen_v[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

/// Smallest `k <= upper_bound` admitting an acyclic `k`-edge-coloring, with
/// a witness; `Ok(None)` if there is none up to the bound.
pub fn exact_acyclic_index(g: &Graph, upper_bound: usize) -> Result<Option<ExactResult<'_>>> {
    check_exact_size(g)?;
    let delta = g.delta();
    if upper_bound < delta {
        return Ok(None);
    }
    if g.edge_count() == 0 {
        let witness = PartialEdgeColoring::new(g, ColoringParameters::new(1)?);
        return Ok(Some(ExactResult { chi_a_prime: 0, witness }));
    }
    for k in delta.max(1)..=upper_bound {
        if let Some(witness) = find_coloring(g, k)? {
            return Ok(Some(ExactResult { chi_a_prime: k, witness }));
        }
    }
    Ok(None)
}

/// An acyclic coloring with colors from `1..=k`, if one exists.
pub fn find_coloring(g: &Graph, k: usize) -> Result<Option<PartialEdgeColoring<'_>>> {
    check_exact_size(g)?;
    let order = search_order(g);
    let mut c = PartialEdgeColoring::new(g, ColoringParameters::new(k.max(1))?);
    Ok(extend_first(&mut c, &order, 0, 0).then_some(c))
}

fn extend_first(c: &mut PartialEdgeColoring<'_>, order: &[EdgeId], i: usize, max_used: Color) -> bool {
    let Some(&e) = order.get(i) else {
        return true;
    };
    let (u, v) = c.graph().endpoints(e);
    // colors above max_used + 1 are relabelings of max_used + 1
    for col in 1..=(max_used + 1).min(c.kappa()) {
        if c.is_valid(u, v, col) {
            c.set_color(e, col).expect("color within palette");
            if extend_first(c, order, i + 1, max_used.max(col)) {
                return true;
            }
            c.uncolor(e);
        }
    }
    false
}

/// Calls `visit` on every acyclic coloring of `g` with colors from `1..=k`
/// (no symmetry reduction). Stops early when `visit` breaks.
pub fn for_each_acyclic_coloring<'g, F>(g: &'g Graph, k: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&PartialEdgeColoring<'g>) -> ControlFlow<()>,
{
    check_exact_size(g)?;
    let order = search_order(g);
    let mut c = PartialEdgeColoring::new(g, ColoringParameters::new(k.max(1))?);
    let _ = enumerate(&mut c, &order, 0, &mut visit);
    Ok(())
}

fn enumerate<'g, F>(c: &mut PartialEdgeColoring<'g>, order: &[EdgeId], i: usize, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&PartialEdgeColoring<'g>) -> ControlFlow<()>,
{
    let Some(&e) = order.get(i) else {
        return visit(c);
    };
    let (u, v) = c.graph().endpoints(e);
    for col in 1..=c.kappa() {
        if c.is_valid(u, v, col) {
            c.set_color(e, col).expect("color within palette");
            let flow = enumerate(c, order, i + 1, visit);
            c.uncolor(e);
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Removal order for the constructive colorer: repeatedly delete the edge
/// whose endpoints have the smallest current degrees (smaller endpoint degree
/// first, then larger, then lowest edge id). Coloring runs in reverse.
pub fn edge_insertion_order(g: &Graph) -> Vec<EdgeId> {
    removal_order(g, None)
}

fn removal_order(g: &Graph, tiebreak: Option<&[u64]>) -> Vec<EdgeId> {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.deg(v)).collect();
    let mut alive = vec![true; g.edge_count()];
    let mut order = Vec::with_capacity(g.edge_count());
    for _ in 0..g.edge_count() {
        let e = (0..g.edge_count())
            .filter(|&e| alive[e])
            .min_by_key(|&e| {
                let (u, v) = g.endpoints(e);
                let (a, b) = (deg[u].min(deg[v]), deg[u].max(deg[v]));
                (a, b, tiebreak.map_or(0, |t| t[e]), e)
            })
            .expect("an edge remains");
        alive[e] = false;
        let (u, v) = g.endpoints(e);
        deg[u] -= 1;
        deg[v] -= 1;
        order.push(e);
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RepairMove {
    /// Recolor a colored edge next to the stuck edge.
    RecolorSingle { edge: EdgeId, from: Color, to: Color, unblocked: EdgeId },
    /// Exchange the colors of two edges at a common vertex.
    ExchangePair { first: EdgeId, second: EdgeId, unblocked: EdgeId },
    /// Uncolor a sibling of the stuck edge, color the stuck edge, and queue
    /// the sibling again.
    UncolorShift { uncolored: EdgeId, colored: EdgeId, color: Color },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuristicConfig {
    /// Repair moves allowed per attempt; `None` means `50 * |E|`.
    pub budget: Option<usize>,
    /// Extra seeded attempts after the first one fails.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig { budget: None, restarts: 8, seed: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome<'g> {
    pub coloring: PartialEdgeColoring<'g>,
    pub colors_used: usize,
    pub move_log: Vec<RepairMove>,
    /// 1 for success on the first (unperturbed) attempt.
    pub attempts: usize,
}

/// Colors every edge of `g` acyclically with at most `kappa` colors, or fails
/// after the budget of every attempt is spent.
pub fn heuristic_color<'g>(
    g: &'g Graph,
    params: ColoringParameters,
    config: HeuristicConfig,
) -> Result<SolveOutcome<'g>> {
    let delta = g.delta();
    if params.kappa() < delta {
        return Err(Error::PaletteTooSmall { kappa: params.kappa(), max_degree: delta });
    }
    let budget = config.budget.unwrap_or(50 * g.edge_count());
    let mut total_moves = 0;
    for attempt in 0..=config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(attempt as u64));
        let order = if attempt == 0 {
            edge_insertion_order(g)
        } else {
            let keys: Vec<u64> = (0..g.edge_count()).map(|_| rng.next_u64()).collect();
            removal_order(g, Some(&keys))
        };
        let mut attempt_rng = (attempt > 0).then_some(rng);
        match run_attempt(g, params, &order, budget, attempt_rng.as_mut()) {
            Ok((coloring, move_log)) => {
                let report = coloring.verify()?;
                assert!(report.is_ok() && coloring.is_complete(), "constructive colorer produced {report:?}");
                return Ok(SolveOutcome {
                    colors_used: coloring.colors_used(),
                    coloring,
                    move_log,
                    attempts: attempt + 1,
                });
            }
            Err(moves) => total_moves += moves,
        }
    }
    Err(Error::SolveFailed { attempts: config.restarts + 1, moves: total_moves })
}

type Attempt<'g> = std::result::Result<(PartialEdgeColoring<'g>, Vec<RepairMove>), usize>;

fn run_attempt<'g>(
    g: &'g Graph,
    params: ColoringParameters,
    removal: &[EdgeId],
    budget: usize,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Attempt<'g> {
    let mut c = PartialEdgeColoring::new(g, params);
    let mut queue: VecDeque<EdgeId> = removal.iter().rev().copied().collect();
    let mut moves = Vec::new();
    while let Some(e) = queue.pop_front() {
        if c.color(e).is_some() {
            continue;
        }
        if let Some(col) = c.first_valid(e) {
            c.set_color(e, col).expect("valid color is in palette");
            continue;
        }
        if moves.len() >= budget {
            return Err(moves.len());
        }
        if let Some(m) = repair_by_recolor(&mut c, e) {
            moves.push(m);
        } else if let Some(m) = repair_by_exchange(&mut c, e) {
            moves.push(m);
        } else if let Some((m, sibling)) = repair_by_shift(&mut c, e, rng.as_deref_mut()) {
            moves.push(m);
            queue.push_front(sibling);
        } else {
            return Err(moves.len());
        }
    }
    Ok((c, moves))
}

/// Free-color count at `v`.
fn free_count(c: &PartialEdgeColoring<'_>, v: Vertex) -> usize {
    c.params().palette().filter(|&col| !c.has_color_at(v, col)).count()
}

/// Gives `e` its lowest valid color, if it has one.
fn color_if_valid(c: &mut PartialEdgeColoring<'_>, e: EdgeId) -> Option<Color> {
    let col = c.first_valid(e)?;
    c.set_color(e, col).expect("valid color is in palette");
    Some(col)
}

fn repair_by_recolor(c: &mut PartialEdgeColoring<'_>, stuck: EdgeId) -> Option<RepairMove> {
    let g = c.graph();
    let (u, v) = g.endpoints(stuck);
    let x = if free_count(c, v) > free_count(c, u) { v } else { u };
    for &(_, f) in g.incident(x) {
        let Some(from) = c.color(f) else { continue };
        let (a, b) = g.endpoints(f);
        c.uncolor(f);
        for to in c.params().palette() {
            if to == from || !c.is_valid(a, b, to) {
                continue;
            }
            c.set_color(f, to).expect("in palette");
            if color_if_valid(c, stuck).is_some() {
                return Some(RepairMove::RecolorSingle { edge: f, from, to, unblocked: stuck });
            }
            c.uncolor(f);
        }
        c.set_color(f, from).expect("in palette");
    }
    None
}

/// Reassigns `(edge, color)` pairs one at a time, each gated by validity.
/// All listed edges must be uncolored on entry; on failure they stay so.
fn assign_all(c: &mut PartialEdgeColoring<'_>, assignment: &[(EdgeId, Color)]) -> bool {
    for (i, &(e, col)) in assignment.iter().enumerate() {
        let (a, b) = c.graph().endpoints(e);
        if !c.is_valid(a, b, col) {
            for &(f, _) in &assignment[..i] {
                c.uncolor(f);
            }
            return false;
        }
        c.set_color(e, col).expect("in palette");
    }
    true
}

fn repair_by_exchange(c: &mut PartialEdgeColoring<'_>, stuck: EdgeId) -> Option<RepairMove> {
    let g = c.graph();
    let (u, v) = g.endpoints(stuck);
    for x in [u, v] {
        let colored: Vec<(EdgeId, Color)> =
            g.incident(x).iter().filter_map(|&(_, f)| c.color(f).map(|col| (f, col))).collect();
        for (i, &(f1, c1)) in colored.iter().enumerate() {
            for &(f2, c2) in &colored[i + 1..] {
                c.uncolor(f1);
                c.uncolor(f2);
                if assign_all(c, &[(f1, c2), (f2, c1)]) {
                    if color_if_valid(c, stuck).is_some() {
                        return Some(RepairMove::ExchangePair { first: f1, second: f2, unblocked: stuck });
                    }
                    c.uncolor(f1);
                    c.uncolor(f2);
                }
                c.set_color(f1, c1).expect("in palette");
                c.set_color(f2, c2).expect("in palette");
            }
        }
    }
    None
}

fn repair_by_shift(
    c: &mut PartialEdgeColoring<'_>,
    stuck: EdgeId,
    rng: Option<&mut ChaCha8Rng>,
) -> Option<(RepairMove, EdgeId)> {
    let g = c.graph();
    let (u, v) = g.endpoints(stuck);
    let mut siblings: Vec<EdgeId> = g
        .incident(u)
        .iter()
        .chain(g.incident(v))
        .map(|&(_, f)| f)
        .filter(|&f| f != stuck && c.color(f).is_some())
        .collect();
    if let Some(rng) = rng {
        // Fisher-Yates with the attempt's generator
        for i in (1..siblings.len()).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            siblings.swap(i, j);
        }
    }
    for f in siblings {
        let freed = c.uncolor(f).expect("sibling is colored");
        let (a, b) = g.endpoints(stuck);
        let col = if c.is_valid(a, b, freed) { Some(freed) } else { c.first_valid(stuck) };
        if let Some(col) = col {
            c.set_color(stuck, col).expect("in palette");
            return Some((RepairMove::UncolorShift { uncolored: f, colored: stuck, color: col }, f));
        }
        c.set_color(f, freed).expect("in palette");
    }
    None
}

/// Why a repair was refused.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub conflict: Option<(EdgeId, EdgeId)>,
    pub cycle: Option<BichromaticCycle>,
}

#[derive(Debug, Clone)]
pub enum RepairResult<'g> {
    Accepted(PartialEdgeColoring<'g>),
    Rejected(Rejection),
}

impl<'g> RepairResult<'g> {
    pub fn accepted(self) -> Option<PartialEdgeColoring<'g>> {
        match self {
            RepairResult::Accepted(c) => Some(c),
            RepairResult::Rejected(_) => None,
        }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, RepairResult::Accepted(_))
    }
}

fn judge(candidate: PartialEdgeColoring<'_>) -> Result<RepairResult<'_>> {
    let report = candidate.verify()?;
    Ok(if report.is_ok() {
        RepairResult::Accepted(candidate)
    } else {
        RepairResult::Rejected(Rejection { conflict: report.conflict, cycle: report.cycle })
    })
}

/// Recolors the colored edge `e` with `alpha`; accepted iff the result is
/// still proper and acyclic.
pub fn repair_recolor_single<'g>(c: &PartialEdgeColoring<'g>, e: EdgeId, alpha: Color) -> Result<RepairResult<'g>> {
    c.graph().check_edge(e)?;
    if c.color(e).is_none() {
        return Err(Error::Uncolored(e));
    }
    let mut next = c.clone();
    next.set_color(e, alpha)?;
    judge(next)
}

/// Swaps the colors of two colored edges sharing a vertex; accepted iff the
/// result is proper and acyclic.
pub fn repair_exchange_pair<'g>(c: &PartialEdgeColoring<'g>, e1: EdgeId, e2: EdgeId) -> Result<RepairResult<'g>> {
    let g = c.graph();
    g.check_edge(e1)?;
    g.check_edge(e2)?;
    let (a, b) = g.endpoints(e1);
    let (x, y) = g.endpoints(e2);
    if e1 == e2 || !(a == x || a == y || b == x || b == y) {
        return Err(Error::NotIncident(e1, e2));
    }
    let c1 = c.color(e1).ok_or(Error::Uncolored(e1))?;
    let c2 = c.color(e2).ok_or(Error::Uncolored(e2))?;
    let mut next = c.clone();
    next.set_color(e1, c2)?;
    next.set_color(e2, c1)?;
    judge(next)
}
