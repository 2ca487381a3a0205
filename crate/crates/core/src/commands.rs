//! Pipelines behind the `aec` binary. Each command returns a [`Report`]
//! holding the rendered output and the process exit status.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::audit::{audit_all, deletion_minimal_probe, find_reducible_configuration, recheck_witness};
use crate::audit::{ConditionReport, DeletionProbe, ReducibleWitness};
use crate::coloring::{ColoringParameters, PartialEdgeColoring, VerifyReport};
use crate::discharging::{discharge, DischargeReport};
use crate::embedding::OnePlaneDrawing;
use crate::error::{Error, Result};
use crate::generate::{generate_corpus, CorpusSpec};
use crate::graph::{Graph, Vertex};
use crate::solver::{exact_acyclic_index, heuristic_color, HeuristicConfig, EXACT_EDGE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Success = 0,
    Violation = 1,
    InputError = 2,
    SizeRefusal = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::TooLarge { .. } => Status::SizeRefusal,
            Error::SolveFailed { .. } | Error::NotAcyclic | Error::LedgerMismatch => Status::Violation,
            _ => Status::InputError,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunConfig {
    pub kappa: Option<usize>,
    pub seed: u64,
    pub budget: Option<usize>,
    pub restarts: usize,
    pub format: Format,
    /// Directory for generated instances, colorings and witnesses.
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn heuristic(&self) -> HeuristicConfig {
        HeuristicConfig { budget: self.budget, restarts: self.restarts, seed: self.seed }
    }

    fn kappa_for(&self, g: &Graph) -> usize {
        self.kappa.unwrap_or(g.delta() + 16)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    pub status: Status,
}

/// A parsed input file: a drawing when it declares rotations, otherwise a
/// bare edge list.
#[derive(Debug, Clone)]
pub enum Input {
    Graph(Graph),
    Drawing(OnePlaneDrawing),
}

impl Input {
    pub fn parse(text: &str) -> Result<Input> {
        if text.lines().any(|l| l.trim_start().starts_with("rot ")) {
            Ok(Input::Drawing(OnePlaneDrawing::parse(text)?))
        } else {
            Ok(Input::Graph(Graph::parse_edge_list(text)?))
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            Input::Graph(g) => g,
            Input::Drawing(d) => d.base(),
        }
    }

    pub fn drawing(&self) -> Option<&OnePlaneDrawing> {
        match self {
            Input::Graph(_) => None,
            Input::Drawing(d) => Some(d),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<Input> {
    Input::parse(&read(path)?)
}

fn instance_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// Writes via a temporary file and a rename, so readers never see a
/// partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn render<T: Serialize>(format: Format, items: &[T], text: impl Fn(&T) -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(items).expect("reports serialize") + "\n",
        Format::Text => items.iter().map(text).collect(),
    }
}

/// Runs `f` on every path in parallel, keeping input order. Errors become
/// per-instance failure entries.
fn batch<T: Send>(paths: &[PathBuf], f: impl Fn(&Path) -> Result<T> + Sync) -> Vec<(String, Result<T>)> {
    paths.par_iter().map(|p| (instance_id(p), f(p))).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub id: String,
    pub error: String,
}

fn worst(statuses: impl IntoIterator<Item = Status>) -> Status {
    statuses.into_iter().max().unwrap_or(Status::Success)
}

fn failure_lines(failures: &[(Failure, Status)]) -> String {
    failures.iter().map(|(f, _)| format!("{} error: {}\n", f.id, f.error)).collect()
}

fn split<T>(results: Vec<(String, Result<T>)>) -> (Vec<T>, Vec<(Failure, Status)>) {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for (id, r) in results {
        match r {
            Ok(x) => ok.push(x),
            Err(e) => bad.push((Failure { id, error: e.to_string() }, Status::of_error(&e))),
        }
    }
    (ok, bad)
}

fn finish<T: Serialize>(
    config: &RunConfig,
    ok: Vec<T>,
    bad: Vec<(Failure, Status)>,
    status_of: impl Fn(&T) -> Status,
    text: impl Fn(&T) -> String,
) -> Report {
    let status = worst(ok.iter().map(&status_of).chain(bad.iter().map(|(_, s)| *s)));
    let output = match config.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Batch<'a, T> {
                results: &'a [T],
                failures: Vec<&'a Failure>,
            }
            let failures = bad.iter().map(|(f, _)| f).collect();
            serde_json::to_string_pretty(&Batch { results: &ok, failures }).expect("reports serialize") + "\n"
        }
        Format::Text => render(Format::Text, &ok, text) + &failure_lines(&bad),
    };
    Report { output, status }
}

#[derive(Debug, Clone, Serialize)]
pub struct ColorReport {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub kappa: usize,
    /// Set when the input has a triangle, which is outside the theorem's
    /// hypothesis; coloring is still attempted.
    pub triangle: Option<[Vertex; 3]>,
    pub success: bool,
    pub colors_used: Option<usize>,
    pub repairs: usize,
    pub attempts: usize,
    pub wall_ms: f64,
    pub verified: bool,
    pub error: Option<String>,
}

pub fn color_one(path: &Path, config: &RunConfig) -> Result<ColorReport> {
    let input = load(path)?;
    let g = input.graph();
    let kappa = config.kappa_for(g);
    let start = Instant::now();
    let result = heuristic_color(g, ColoringParameters::new(kappa)?, config.heuristic());
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut report = ColorReport {
        id: instance_id(path),
        n: g.vertex_count(),
        m: g.edge_count(),
        max_degree: g.delta(),
        kappa,
        triangle: g.find_triangle(),
        success: false,
        colors_used: None,
        repairs: 0,
        attempts: 0,
        wall_ms,
        verified: false,
        error: None,
    };
    match result {
        Ok(out) => {
            // independent re-check of the written coloring
            let text = out.coloring.to_text();
            let reparsed = PartialEdgeColoring::parse(g, &text)?;
            report.verified = reparsed.is_complete() && reparsed.verify()?.is_ok();
            report.success = true;
            report.colors_used = Some(out.colors_used);
            report.repairs = out.move_log.len();
            report.attempts = out.attempts;
            if let Some(dir) = &config.out {
                write_atomic(&dir.join(format!("{}.coloring", report.id)), &text)?;
            }
        }
        Err(e @ (Error::SolveFailed { .. } | Error::PaletteTooSmall { .. })) => report.error = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(report)
}

pub fn cmd_color(paths: &[PathBuf], config: &RunConfig) -> Report {
    let (ok, bad) = split(batch(paths, |p| color_one(p, config)));
    finish(
        config,
        ok,
        bad,
        |r| if r.success && r.verified { Status::Success } else { Status::Violation },
        |r| {
            let colors = r.colors_used.map_or("-".into(), |c| c.to_string());
            let flag = if r.triangle.is_some() { " triangle" } else { "" };
            let err = r.error.as_ref().map_or(String::new(), |e| format!(" error: {e}"));
            format!(
                "{} n={} m={} delta={} kappa={} colors={} repairs={} attempts={} ms={:.2} verify={}{}{}\n",
                r.id,
                r.n,
                r.m,
                r.max_degree,
                r.kappa,
                colors,
                r.repairs,
                r.attempts,
                r.wall_ms,
                if r.verified { "ok" } else { "fail" },
                flag,
                err
            )
        },
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactReport {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub upper_bound: usize,
    pub chi_a_prime: Option<usize>,
    pub verified: bool,
    pub wall_ms: f64,
}

pub fn exact_one(path: &Path, config: &RunConfig) -> Result<ExactReport> {
    let input = load(path)?;
    let g = input.graph();
    let bound = config.kappa.unwrap_or_else(|| g.edge_count().max(g.delta()));
    let start = Instant::now();
    let r = exact_acyclic_index(g, bound)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let id = instance_id(path);
    let mut verified = true;
    if let Some(r) = &r {
        verified = r.witness.is_complete() && r.witness.verify()?.is_ok() && r.witness.colors_used() == r.chi_a_prime;
        if let Some(dir) = &config.out {
            write_atomic(&dir.join(format!("{id}.exact.coloring")), &r.witness.to_text())?;
        }
    }
    Ok(ExactReport {
        id,
        n: g.vertex_count(),
        m: g.edge_count(),
        max_degree: g.delta(),
        upper_bound: bound,
        chi_a_prime: r.map(|r| r.chi_a_prime),
        verified,
        wall_ms,
    })
}

pub fn cmd_exact(paths: &[PathBuf], config: &RunConfig) -> Report {
    let (ok, bad) = split(batch(paths, |p| exact_one(p, config)));
    finish(
        config,
        ok,
        bad,
        |r| if r.verified { Status::Success } else { Status::Violation },
        |r| {
            let chi = r.chi_a_prime.map_or(format!("none<={}", r.upper_bound), |c| c.to_string());
            format!(
                "{} n={} m={} delta={} chi_a={} verify={} ms={:.2}\n",
                r.id,
                r.n,
                r.m,
                r.max_degree,
                chi,
                if r.verified { "ok" } else { "fail" },
                r.wall_ms
            )
        },
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOutput {
    pub complete: bool,
    pub colored: usize,
    pub m: usize,
    pub colors_used: usize,
    pub report: VerifyReport,
}

/// Checks a coloring file against a graph or drawing file.
pub fn cmd_verify(graph_path: &Path, coloring_path: &Path, config: &RunConfig) -> Report {
    let run = || -> Result<VerifyOutput> {
        let input = load(graph_path)?;
        let g = input.graph();
        let c = PartialEdgeColoring::parse(g, &read(coloring_path)?)?;
        Ok(VerifyOutput {
            complete: c.is_complete(),
            colored: c.colored_count(),
            m: g.edge_count(),
            colors_used: c.colors_used(),
            report: c.verify()?,
        })
    };
    match run() {
        Ok(v) => {
            let status = if v.report.is_ok() { Status::Success } else { Status::Violation };
            let output = match config.format {
                Format::Json => serde_json::to_string_pretty(&v).expect("serializes") + "\n",
                Format::Text => {
                    let mut s = format!(
                        "proper={} acyclic={} complete={} colored={}/{} colors={}\n",
                        v.report.proper, v.report.acyclic, v.complete, v.colored, v.m, v.colors_used
                    );
                    if let Some((e1, e2)) = v.report.conflict {
                        s += &format!("conflict edges {e1} {e2}\n");
                    }
                    if let Some(cyc) = &v.report.cycle {
                        s += &format!("cycle colors {:?} vertices {:?}\n", cyc.colors, cyc.vertices);
                    }
                    s
                }
            };
            Report { output, status }
        }
        Err(e) => Report { output: format!("error: {e}\n"), status: Status::of_error(&e) },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DischargeOutput {
    pub id: String,
    pub kappa: usize,
    pub report: DischargeReport,
}

pub fn discharge_one(path: &Path, config: &RunConfig) -> Result<DischargeOutput> {
    let input = load(path)?;
    let d = input.drawing().ok_or(Error::DrawingRequired("discharge"))?;
    let kappa = config.kappa_for(d.base());
    let p = d.planarize()?;
    let (_, report) = discharge(&p, kappa)?;
    Ok(DischargeOutput { id: instance_id(path), kappa, report })
}

pub fn cmd_discharge(paths: &[PathBuf], config: &RunConfig) -> Report {
    let (ok, bad) = split(batch(paths, |p| discharge_one(p, config)));
    finish(
        config,
        ok,
        bad,
        |r| if r.report.is_ok() { Status::Success } else { Status::Violation },
        |r| format!("# {} kappa={}\n{}", r.id, r.kappa, r.report),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditOutput {
    pub id: String,
    pub kappa: usize,
    pub conditions: Vec<ConditionReport>,
    /// First witness in search order; only with a drawing of a triangle-free
    /// graph.
    pub reducible: Option<ReducibleWitness>,
    pub reducible_searched: bool,
    pub witnesses_recheck: bool,
    /// Only for graphs small enough for exhaustive search.
    pub deletion_probe: Option<DeletionProbe>,
}

impl AuditOutput {
    fn status(&self) -> Status {
        let missing = self.reducible_searched && self.reducible.is_none();
        if missing || !self.witnesses_recheck {
            Status::Violation
        } else {
            Status::Success
        }
    }
}

pub fn audit_one(path: &Path, config: &RunConfig) -> Result<AuditOutput> {
    let input = load(path)?;
    let g = input.graph();
    let d = input.drawing();
    let kappa = config.kappa_for(g);
    let conditions = audit_all(g, d, kappa)?;
    let mut witnesses_recheck = true;
    for c in &conditions {
        for w in &c.witnesses {
            witnesses_recheck &= recheck_witness(g, d, kappa, w)?;
        }
    }
    let (reducible, reducible_searched) = match d {
        Some(d) if g.is_triangle_free() => (find_reducible_configuration(g, d, kappa)?, true),
        _ => (None, false),
    };
    let deletion_probe =
        if g.edge_count() <= EXACT_EDGE_LIMIT { Some(deletion_minimal_probe(g, kappa)?) } else { None };
    Ok(AuditOutput {
        id: instance_id(path),
        kappa,
        conditions,
        reducible,
        reducible_searched,
        witnesses_recheck,
        deletion_probe,
    })
}

pub fn cmd_audit(paths: &[PathBuf], config: &RunConfig) -> Report {
    let (ok, bad) = split(batch(paths, |p| audit_one(p, config)));
    finish(config, ok, bad, AuditOutput::status, |r| {
        let mut s = format!("# {} kappa={}\n", r.id, r.kappa);
        for c in &r.conditions {
            let state = match c.holds {
                None => "skipped (needs drawing)".to_string(),
                Some(true) => "pass".to_string(),
                Some(false) => format!("fail ({} witnesses)", c.witnesses.len()),
            };
            s += &format!("{} {}\n", c.condition, state);
        }
        match (&r.reducible, r.reducible_searched) {
            (Some(w), _) => s += &format!("reducible {} at {:?}: {}\n", w.condition, w.vertices, w.detail),
            (None, true) => s += "reducible none (unexpected)\n",
            (None, false) => {}
        }
        s += &format!("recheck {}\n", if r.witnesses_recheck { "ok" } else { "fail" });
        if let Some(p) = &r.deletion_probe {
            s += &format!("deletion_minimal {}\n", p.is_candidate);
        }
        s
    })
}

/// Writes a corpus as drawing files `<id>.txt` into `config.out`.
pub fn cmd_gen(spec: &CorpusSpec, config: &RunConfig) -> Report {
    let Some(dir) = &config.out else {
        return Report { output: "error: gen needs --out DIR\n".into(), status: Status::InputError };
    };
    if let Err(e) = fs::create_dir_all(dir) {
        return Report { output: format!("error: {e}\n"), status: Status::InputError };
    }
    let corpus = generate_corpus(spec);
    let mut output = String::new();
    for inst in &corpus.instances {
        let path = dir.join(format!("{}.txt", inst.id));
        if let Err(e) = write_atomic(&path, &inst.drawing.to_text()) {
            return Report { output: format!("error: {e}\n"), status: Status::InputError };
        }
        let g = inst.graph();
        output += &format!(
            "{} n={} m={} delta={} crossings={}\n",
            inst.id,
            g.vertex_count(),
            g.edge_count(),
            g.delta(),
            inst.drawing.crossings().len()
        );
    }
    for (id, e) in &corpus.skipped {
        output += &format!("{id} skipped: {e}\n");
    }
    Report { output, status: Status::Success }
}
