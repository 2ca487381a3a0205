//! Seeded generators of triangle-free 1-plane instances.
//!
//! Instances are built as straight-line sketches (coordinates plus declared
//! crossing pairs). A sketch is accepted only if its segments meet nowhere
//! except at shared endpoints and declared crossings, the graph is
//! triangle-free, and the resulting rotation system planarizes.
//!
//! Crossings are inserted into two 4-faces sharing an edge `ab`: the edge is
//! deleted and the two long diagonals of the resulting hexagon are added.
//! The diagonals cross once, inside the hexagon.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embedding::{segment_intersection, OnePlaneDrawing};
use crate::error::{Error, Result};
use crate::graph::{named, Graph, Vertex};

/// Rejected candidates allowed per instance.
pub const REJECTION_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// Grid quadrangulation, possibly with a few edges deleted.
    Quadrangulation,
    /// Grid with some edges subdivided.
    SubdividedQuadrangulation,
    /// Grid with crossing chord pairs, then subdivisions and deletions.
    GridWithCrossings,
    /// Hub joined to every other vertex of an even cycle, with crossing
    /// chord pairs; gives high-degree vertices.
    Gear,
    /// Cycles, the subdivided cube, the Petersen graph, subdivided grids.
    Named,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Quadrangulation,
        Family::SubdividedQuadrangulation,
        Family::GridWithCrossings,
        Family::Gear,
        Family::Named,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Quadrangulation => "quadrangulation",
            Family::SubdividedQuadrangulation => "subdivided-quadrangulation",
            Family::GridWithCrossings => "grid-with-crossings",
            Family::Gear => "gear",
            Family::Named => "named",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse { line: 0, message: format!("unknown family {s:?}") })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusSpec {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// `None` cycles through all families.
    pub family: Option<Family>,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { count: 200, n_min: 10, n_max: 60, family: None, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub family: Family,
    pub drawing: OnePlaneDrawing,
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        self.drawing.base()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub instances: Vec<Instance>,
    /// Instances the generator gave up on, with the reason.
    pub skipped: Vec<(String, Error)>,
}

/// Straight-line drawing under construction.
#[derive(Debug, Clone)]
struct Sketch {
    coords: Vec<(f64, f64)>,
    edges: BTreeSet<(Vertex, Vertex)>,
    crossings: Vec<((Vertex, Vertex), (Vertex, Vertex))>,
}

fn canon(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

impl Sketch {
    fn from_graph(g: &Graph, coords: Vec<(f64, f64)>) -> Self {
        Sketch { coords, edges: g.edges().iter().copied().collect(), crossings: vec![] }
    }

    fn n(&self) -> usize {
        self.coords.len()
    }

    fn graph(&self) -> Graph {
        Graph::new(self.n(), self.edges.iter().copied()).expect("sketch edges are simple")
    }

    fn is_crossed(&self, e: (Vertex, Vertex)) -> bool {
        self.crossings.iter().any(|&(a, b)| a == e || b == e)
    }

    fn drawing(&self) -> Result<OnePlaneDrawing> {
        let g = self.graph();
        let mut pairs = Vec::new();
        for &(a, b) in &self.crossings {
            let ea = g.edge_id(a.0, a.1).ok_or(Error::MissingEdge(a.0, a.1))?;
            let eb = g.edge_id(b.0, b.1).ok_or(Error::MissingEdge(b.0, b.1))?;
            pairs.push((ea, eb));
        }
        self.check_geometry()?;
        let d = OnePlaneDrawing::from_straight_line(g, pairs, &self.coords)?;
        d.planarize()?;
        Ok(d)
    }

    /// Segments may meet only at shared endpoints or at declared crossings,
    /// and no vertex may sit inside a segment.
    fn check_geometry(&self) -> Result<()> {
        let edges: Vec<(Vertex, Vertex)> = self.edges.iter().copied().collect();
        let declared: BTreeSet<((Vertex, Vertex), (Vertex, Vertex))> =
            self.crossings.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
        let p = &self.coords;
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let hit = segment_intersection(p[a], p[b], p[c], p[d]).is_some();
                if hit != declared.contains(&((a, b), (c, d))) {
                    return Err(Error::Rotation(format!("segments {a}-{b} and {c}-{d} meet unexpectedly")));
                }
            }
            for x in 0..self.n() {
                if x != a && x != b && on_segment(p[x], p[a], p[b]) {
                    return Err(Error::Rotation(format!("vertex {x} lies on segment {a}-{b}")));
                }
            }
        }
        Ok(())
    }
}

fn on_segment(x: (f64, f64), a: (f64, f64), b: (f64, f64)) -> bool {
    let cross = (b.0 - a.0) * (x.1 - a.1) - (b.1 - a.1) * (x.0 - a.0);
    let dot = (x.0 - a.0) * (b.0 - a.0) + (x.1 - a.1) * (b.1 - a.1);
    let len2 = (b.0 - a.0).powi(2) + (b.1 - a.1).powi(2);
    cross.abs() < 1e-9 && dot > 1e-9 && dot < len2 - 1e-9
}

fn grid_sketch(rows: usize, cols: usize) -> Sketch {
    let coords = (0..rows * cols).map(|v| ((v % cols) as f64, (v / cols) as f64)).collect();
    Sketch::from_graph(&named::grid(rows, cols), coords)
}

/// Hub `0` and cycle `1..=2k`; the hub sees the odd-numbered cycle vertices.
fn gear_sketch(k: usize) -> Sketch {
    let n = 2 * k + 1;
    let mut edges = Vec::new();
    let mut coords = vec![(0.0, 0.0)];
    for i in 0..2 * k {
        let t = std::f64::consts::TAU * i as f64 / (2 * k) as f64;
        coords.push((10.0 * t.cos(), 10.0 * t.sin()));
        edges.push((1 + i, 1 + (i + 1) % (2 * k)));
        if i % 2 == 0 {
            edges.push((0, 1 + i));
        }
    }
    Sketch::from_graph(&Graph::new(n, edges).expect("gear is simple"), coords)
}

fn circle_coords(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            (10.0 * t.cos(), 10.0 * t.sin())
        })
        .collect()
}

fn cube_coords() -> Vec<(f64, f64)> {
    (0..8)
        .map(|v| {
            let (x, y) = ((v & 1) as f64, ((v >> 1) & 1) as f64);
            if v & 4 == 0 {
                (4.0 * x, 4.0 * y)
            } else {
                (1.0 + 2.0 * x, 1.0 + 2.0 * y)
            }
        })
        .collect()
}

/// Coordinates for [`named::subdivide`]: subdivision vertices at midpoints.
fn subdivided_coords(g: &Graph, coords: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = coords.to_vec();
    for &(u, v) in g.edges() {
        out.push(((coords[u].0 + coords[v].0) / 2.0, (coords[u].1 + coords[v].1) / 2.0));
    }
    out
}

/// Petersen graph with two crossings, as a rotation system.
pub fn petersen_drawing() -> OnePlaneDrawing {
    let g = named::petersen();
    let e = |u, v| g.edge_id(u, v).expect("Petersen edge");
    let crossings = vec![(e(0, 1), e(2, 3)), (e(4, 9), e(5, 8))];
    let (x0, x1) = (10, 11);
    let rotation = vec![
        vec![4, x0, 5],
        vec![6, 2, x0],
        vec![1, 7, x0],
        vec![4, 8, x0],
        vec![0, x1, 3],
        vec![7, x1, 0],
        vec![8, 9, 1],
        vec![2, 9, 5],
        vec![3, x1, 6],
        vec![x1, 7, 6],
        vec![2, 0, 3, 1],
        vec![5, 9, 8, 4],
    ];
    OnePlaneDrawing::new(g, crossings, rotation).expect("fixed Petersen drawing is valid")
}

struct Builder {
    rng: ChaCha8Rng,
    rejections: usize,
}

impl Builder {
    fn reject(&mut self) -> Result<()> {
        self.rejections += 1;
        if self.rejections > REJECTION_CAP {
            Err(Error::GeneratorExhausted(REJECTION_CAP))
        } else {
            Ok(())
        }
    }

    /// Grid dimensions with `rows * cols` in `lo..=hi`.
    fn grid_dims(&mut self, lo: usize, hi: usize) -> Result<(usize, usize)> {
        let fits: Vec<(usize, usize)> = (2..=hi / 2)
            .flat_map(|r| (r..=hi / 2).map(move |c| (r, c)))
            .filter(|&(r, c)| (lo..=hi).contains(&(r * c)))
            .collect();
        let &(r, c) = fits.choose(&mut self.rng).ok_or(Error::GeneratorExhausted(0))?;
        Ok(if self.rng.gen_bool(0.5) { (r, c) } else { (c, r) })
    }

    /// Replaces an uncrossed edge shared by two real 4-faces with the two
    /// crossing diagonals of the merged hexagon.
    fn insert_crossing(&mut self, s: &mut Sketch) -> Result<bool> {
        let p = s.drawing()?.planarize()?;
        let mut candidates = Vec::new();
        for f1 in p.faces() {
            if f1.degree() != 4 || f1.walk.iter().any(|&x| p.is_crossing(x)) {
                continue;
            }
            for (i, (a, b)) in f1.darts().enumerate() {
                let Some(f2) = p.faces().iter().find(|f| f.degree() == 4 && f.darts().any(|d| d == (b, a))) else {
                    continue;
                };
                if f2.walk.iter().any(|&x| p.is_crossing(x)) {
                    continue;
                }
                let w = &f1.walk;
                let (pp, q) = (w[(i + 2) % 4], w[(i + 3) % 4]);
                let j = f2.walk.iter().position(|&x| x == b).expect("dart start on walk");
                let (r, t) = (f2.walk[(j + 2) % 4], f2.walk[(j + 3) % 4]);
                let hexagon = [b, pp, q, a, r, t];
                if hexagon.iter().collect::<BTreeSet<_>>().len() == 6 {
                    candidates.push((canon(a, b), canon(pp, r), canon(q, t)));
                }
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        candidates.shuffle(&mut self.rng);
        for (ab, c1, c2) in candidates {
            if s.edges.contains(&c1) || s.edges.contains(&c2) {
                self.reject()?;
                continue;
            }
            let mut next = s.clone();
            next.edges.remove(&ab);
            next.edges.insert(c1);
            next.edges.insert(c2);
            next.crossings.push((c1, c2));
            if next.graph().is_triangle_free() && next.drawing().is_ok() {
                *s = next;
                return Ok(true);
            }
            self.reject()?;
        }
        Ok(false)
    }

    fn subdivide_some(&mut self, s: &mut Sketch, count: usize) {
        for _ in 0..count {
            let free: Vec<(Vertex, Vertex)> = s.edges.iter().copied().filter(|&e| !s.is_crossed(e)).collect();
            let Some(&(u, v)) = free.choose(&mut self.rng) else { return };
            let w = s.n();
            let (a, b) = (s.coords[u], s.coords[v]);
            s.coords.push(((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0));
            s.edges.remove(&(u, v));
            s.edges.insert((u, w));
            s.edges.insert((v, w));
        }
    }

    /// Deletes up to `count` uncrossed edges whose removal keeps the graph
    /// connected.
    fn delete_some(&mut self, s: &mut Sketch, count: usize) {
        for _ in 0..count {
            let mut free: Vec<(Vertex, Vertex)> = s.edges.iter().copied().filter(|&e| !s.is_crossed(e)).collect();
            free.shuffle(&mut self.rng);
            for e in free {
                s.edges.remove(&e);
                if s.graph().is_connected() {
                    break;
                }
                s.edges.insert(e);
            }
        }
    }

    fn build(&mut self, family: Family, lo: usize, hi: usize) -> Result<OnePlaneDrawing> {
        match family {
            Family::Quadrangulation => {
                let (r, c) = self.grid_dims(lo, hi)?;
                let mut s = grid_sketch(r, c);
                let k = self.rng.gen_range(0..=s.edges.len() / 6);
                self.delete_some(&mut s, k);
                s.drawing()
            }
            Family::SubdividedQuadrangulation => {
                let (r, c) = self.grid_dims(lo.saturating_sub(r_c_slack(hi)).max(4), hi - 1)?;
                let mut s = grid_sketch(r, c);
                let n = r * c;
                let min = lo.saturating_sub(n).max(1);
                let max = (hi - n).min(s.edges.len()).max(min);
                let k = self.rng.gen_range(min..=max);
                self.subdivide_some(&mut s, k);
                s.drawing()
            }
            Family::GridWithCrossings => {
                let (r, c) = self.grid_dims(lo, hi)?;
                let mut s = grid_sketch(r, c);
                let want = self.rng.gen_range(1..=((r - 1) * (c - 1) / 3).max(1));
                for _ in 0..want {
                    if !self.insert_crossing(&mut s)? {
                        break;
                    }
                }
                let room = hi - s.n();
                let k = self.rng.gen_range(0..=room.min(4));
                self.subdivide_some(&mut s, k);
                let k = self.rng.gen_range(0..=2);
                self.delete_some(&mut s, k);
                s.drawing()
            }
            Family::Gear => {
                let ks: Vec<usize> = (3..=hi / 2).filter(|k| (lo..=hi).contains(&(2 * k + 1))).collect();
                let &k = ks.choose(&mut self.rng).ok_or(Error::GeneratorExhausted(0))?;
                let mut s = gear_sketch(k);
                let want = self.rng.gen_range(0..=k / 3);
                for _ in 0..want {
                    if !self.insert_crossing(&mut s)? {
                        break;
                    }
                }
                let room = hi - s.n();
                let k = self.rng.gen_range(0..=room.min(3));
                self.subdivide_some(&mut s, k);
                s.drawing()
            }
            Family::Named => self.named(lo, hi),
        }
    }

    fn named(&mut self, lo: usize, hi: usize) -> Result<OnePlaneDrawing> {
        let mut options: Vec<Box<dyn Fn(&mut ChaCha8Rng) -> Result<OnePlaneDrawing>>> = Vec::new();
        if hi >= 3 {
            options.push(Box::new(move |rng: &mut ChaCha8Rng| {
                let n = rng.gen_range(lo.max(3)..=hi);
                Sketch::from_graph(&named::cycle(n), circle_coords(n)).drawing()
            }));
        }
        if (lo..=hi).contains(&20) {
            options.push(Box::new(|_: &mut ChaCha8Rng| {
                let cube = named::cube();
                let coords = subdivided_coords(&cube, &cube_coords());
                Sketch::from_graph(&named::subdivide(&cube), coords).drawing()
            }));
        }
        if (lo..=hi).contains(&10) {
            options.push(Box::new(|_: &mut ChaCha8Rng| Ok(petersen_drawing())));
        }
        let grids: Vec<(usize, usize)> = (2..=6)
            .flat_map(|r| (r..=8).map(move |c| (r, c)))
            .filter(|&(r, c)| (lo..=hi).contains(&(r * c + named::grid(r, c).edge_count())))
            .collect();
        if !grids.is_empty() {
            options.push(Box::new(move |rng: &mut ChaCha8Rng| {
                let &(r, c) = grids.choose(rng).expect("nonempty");
                let g = named::grid(r, c);
                let coords = subdivided_coords(&g, &grid_sketch(r, c).coords);
                Sketch::from_graph(&named::subdivide(&g), coords).drawing()
            }));
        }
        let i = self.rng.gen_range(0..options.len().max(1));
        let pick = options.get(i).ok_or(Error::GeneratorExhausted(0))?;
        pick(&mut self.rng)
    }
}

/// How far below `lo` the base grid of a subdivided instance may start.
fn r_c_slack(hi: usize) -> usize {
    hi / 3
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64))
}

/// One instance of `family` with between `n_min` and `n_max` vertices.
pub fn generate_instance(family: Family, n_min: usize, n_max: usize, seed: u64, index: usize) -> Result<Instance> {
    if n_min > n_max || n_max < 4 {
        return Err(Error::GeneratorExhausted(0));
    }
    let mut b = Builder { rng: instance_rng(seed, index), rejections: 0 };
    loop {
        match b.build(family, n_min, n_max) {
            Ok(d) => {
                let n = d.base().vertex_count();
                if d.base().is_triangle_free() && (n_min..=n_max).contains(&n) {
                    return Ok(Instance { id: format!("{}-{index:04}", family.name()), family, drawing: d });
                }
                b.reject()?;
            }
            Err(Error::GeneratorExhausted(k)) => return Err(Error::GeneratorExhausted(k)),
            Err(_) => b.reject()?,
        }
    }
}

pub fn generate_corpus(spec: &CorpusSpec) -> Corpus {
    let mut corpus = Corpus::default();
    for i in 0..spec.count {
        let family = spec.family.unwrap_or(Family::ALL[i % Family::ALL.len()]);
        match generate_instance(family, spec.n_min, spec.n_max, spec.seed, i) {
            Ok(inst) => corpus.instances.push(inst),
            Err(e) => corpus.skipped.push((format!("{}-{i:04}", family.name()), e)),
        }
    }
    corpus
}
