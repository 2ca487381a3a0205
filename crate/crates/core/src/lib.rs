//! Acyclic edge coloring of triangle-free 1-planar graphs.
//!
//! The crate bundles:
//!
//! * [`graph`]: simple graphs, multisets and the edge-list format;
//! * [`embedding`]: 1-plane drawings given as rotation systems, their
//!   planarization (crossings become degree-4 vertices) and face traversal;
//! * [`coloring`]: partial edge colorings, bichromatic paths, available and
//!   valid colors, and a from-scratch verifier;
//! * [`solver`]: an exact acyclic-chromatic-index search and a constructive
//!   colorer with local repair moves, aimed at `kappa = max degree + 16`;
//! * [`discharging`]: initial charges, the eight transfer rules and a
//!   per-element audit with exact rational arithmetic;
//! * [`audit`]: the structural conditions a deletion-minimal counterexample
//!   must satisfy, with re-checkable witnesses;
//! * [`generate`]: seeded generators of triangle-free 1-plane instances;
//! * [`commands`]: the pipelines behind the `aec` binary.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod audit;
pub mod coloring;
pub mod commands;
pub mod discharging;
pub mod embedding;
pub mod error;
pub mod generate;
pub mod graph;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, Multiset, Vertex};
