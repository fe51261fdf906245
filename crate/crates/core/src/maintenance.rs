//! The maintenance contract, the replay loop that drives a maintainer over an
//! edit script, and the per-step instrumentation it records.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::baselines::SolverError;
use crate::graph::{bfs_distances, DynamicGraph, EditOp, EditScript, GraphError, TrackedGraphView, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    VertexCover,
    DominatingSet,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionSnapshot {
    pub problem: Problem,
    pub members: BTreeSet<VertexId>,
}

impl SolutionSnapshot {
    pub fn new(problem: Problem, members: BTreeSet<VertexId>) -> Self {
        Self { problem, members }
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Checks the solution against `g`. Custom solutions only need to be
    /// vertices of `g`.
    pub fn is_valid_for(&self, g: &DynamicGraph) -> bool {
        if !self.members.iter().all(|&v| g.contains(v)) {
            return false;
        }
        match self.problem {
            Problem::VertexCover => is_vertex_cover(g, &self.members),
            Problem::DominatingSet => is_dominating_set(g, &self.members),
            Problem::Custom => true,
        }
    }
}

pub fn is_vertex_cover(g: &DynamicGraph, cover: &BTreeSet<VertexId>) -> bool {
    g.edges()
        .all(|(u, v)| cover.contains(&u) || cover.contains(&v))
}

pub fn is_dominating_set(g: &DynamicGraph, set: &BTreeSet<VertexId>) -> bool {
    g.vertices()
        .all(|v| set.contains(&v) || g.neighbors(v).any(|w| set.contains(&w)))
}

/// Work bound a maintainer claims for a single step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WorkBound {
    Constant(usize),
    /// `work <= c * (deg(u) + deg(v) + 1)` over the edit endpoints.
    DegreeLinear { c: usize },
    Fpt { k: usize },
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaintainerSpec {
    pub claimed_radius: usize,
    pub claimed_work_bound: WorkBound,
    /// Ratio the maintainer promises against the optimum, when it promises one.
    pub target_ratio: Option<(u64, u64)>,
}

/// What a maintainer reports back about one step, beyond the graph queries
/// the view already logged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepWork {
    /// Vertices whose maintainer state was read.
    pub state_reads: BTreeSet<VertexId>,
    /// Vertices whose maintainer state changed.
    pub writes: BTreeSet<VertexId>,
    /// Number of individual state writes.
    pub write_count: usize,
}

impl StepWork {
    pub fn read(&mut self, v: VertexId) {
        self.state_reads.insert(v);
    }

    pub fn write(&mut self, v: VertexId) {
        self.writes.insert(v);
        self.write_count += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaintainerError {
    #[error("maintainer state corrupt: {0}")]
    CorruptState(String),
    #[error("maintainer does not support op {0}")]
    Unsupported(EditOp),
}

/// A maintenance algorithm: turns a solution for `G_i` into one for `G_{i+1}`.
pub trait Maintainer {
    fn name(&self) -> &'static str;
    fn spec(&self) -> MaintainerSpec;
    fn problem(&self) -> Problem;
    /// Builds the starting solution for `g` (not instrumented).
    fn init(&mut self, g: &DynamicGraph);
    /// Reacts to `op`, which has already been applied to the viewed graph.
    fn on_edit(&mut self, g_after: &TrackedGraphView<'_>, op: &EditOp) -> Result<StepWork, MaintainerError>;
    fn solution(&self) -> SolutionSnapshot;
}

/// Exact optimum oracle. Calls are measurement only and never count towards
/// a maintainer's work or locality.
pub trait Oracle {
    fn optimum(&self, g: &DynamicGraph) -> Result<usize, SolverError>;
}

/// Hop distance of a touched vertex from the edit site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Radius {
    Hops(usize),
    Unreachable,
}

impl Radius {
    pub fn within(self, r: usize) -> bool {
        matches!(self, Radius::Hops(h) if h <= r)
    }
}

impl Serialize for Radius {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Radius::Hops(h) => s.serialize_u64(*h as u64),
            Radius::Unreachable => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    pub step_index: usize,
    pub op: EditOp,
    pub touched_read: BTreeSet<VertexId>,
    pub touched_write: BTreeSet<VertexId>,
    pub work_units: usize,
    pub locality_radius: Radius,
    pub solution_size: usize,
    pub optimum_size: Option<usize>,
}

impl StepReport {
    pub fn touched(&self) -> BTreeSet<VertexId> {
        self.touched_read.union(&self.touched_write).copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub maintainer: &'static str,
    pub spec: MaintainerSpec,
    pub initial_size: usize,
    pub initial_optimum: Option<usize>,
    pub steps: Vec<StepReport>,
    pub max_ratio: Option<Ratio<u64>>,
    pub max_locality: Radius,
    pub max_work: usize,
    pub final_solution: SolutionSnapshot,
    /// Solutions for `G_0 ..= G_m`, when requested.
    pub history: Option<Vec<SolutionSnapshot>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Validate the maintained solution after every step.
    pub validate: bool,
    /// Keep every intermediate solution in [`RunReport::history`].
    pub record_history: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            validate: true,
            record_history: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("initial graph has {found} vertices, script expects {expected}")]
    InitialMismatch { expected: usize, found: usize },
    #[error("step {step}: {source}")]
    Precondition { step: usize, source: GraphError },
    #[error("step {step}: maintainer produced an invalid solution")]
    InvalidSolution { step: usize },
    #[error("step {step}: {source}")]
    Maintainer { step: usize, source: MaintainerError },
    #[error("step {step}: oracle failed: {source}")]
    Oracle { step: usize, source: SolverError },
}

/// Replays `script` from `g0`, driving `maintainer` one edit at a time.
pub fn run(
    g0: &DynamicGraph,
    script: &EditScript,
    maintainer: &mut dyn Maintainer,
    oracle: Option<&dyn Oracle>,
    opts: RunOptions,
) -> Result<RunReport, RunError> {
    if g0.vertex_count() != script.initial_n {
        return Err(RunError::InitialMismatch {
            expected: script.initial_n,
            found: g0.vertex_count(),
        });
    }
    let mut g = g0.clone();
    maintainer.init(&g);
    let initial = maintainer.solution();
    if opts.validate && !initial.is_valid_for(&g) {
        return Err(RunError::InvalidSolution { step: 0 });
    }
    let initial_optimum = oracle
        .map(|o| o.optimum(&g))
        .transpose()
        .map_err(|source| RunError::Oracle { step: 0, source })?;
    let mut history = opts.record_history.then(|| vec![initial.clone()]);

    let mut steps = Vec::with_capacity(script.ops.len());
    for (i, op) in script.ops.iter().enumerate() {
        let step = i + 1;
        g.apply(op)
            .map_err(|source| RunError::Precondition { step, source })?;
        let view = TrackedGraphView::new(&g);
        let work = maintainer
            .on_edit(&view, op)
            .map_err(|source| RunError::Maintainer { step, source })?;
        let solution = maintainer.solution();
        if opts.validate && !solution.is_valid_for(&g) {
            return Err(RunError::InvalidSolution { step });
        }
        let optimum_size = oracle
            .map(|o| o.optimum(&g))
            .transpose()
            .map_err(|source| RunError::Oracle { step, source })?;

        let mut touched_read = view.read_log();
        touched_read.extend(work.state_reads.iter().copied());
        let touched_write = work.writes.clone();
        let locality_radius = locality(&g, op, touched_read.union(&touched_write));
        steps.push(StepReport {
            step_index: step,
            op: *op,
            touched_read,
            touched_write,
            work_units: view.query_work() + work.write_count,
            locality_radius,
            solution_size: solution.size(),
            optimum_size,
        });
        if let Some(h) = history.as_mut() {
            h.push(solution);
        }
    }

    let mut report = RunReport {
        maintainer: maintainer.name(),
        spec: maintainer.spec(),
        initial_size: initial.size(),
        initial_optimum,
        max_locality: steps
            .iter()
            .map(|s| s.locality_radius)
            .max()
            .unwrap_or(Radius::Hops(0)),
        max_work: steps.iter().map(|s| s.work_units).max().unwrap_or(0),
        steps,
        max_ratio: None,
        final_solution: maintainer.solution(),
        history,
    };
    report.max_ratio = max_ratio(&report).ok();
    Ok(report)
}

/// Largest distance from the edit site (in the post-edit graph) over the
/// touched vertices. Site vertices that no longer exist count as distance 0.
fn locality<'a>(
    g_after: &DynamicGraph,
    op: &EditOp,
    touched: impl Iterator<Item = &'a VertexId>,
) -> Radius {
    let sites: BTreeSet<VertexId> = op.endpoints().into_iter().collect();
    let mut dist = None;
    let mut worst = Radius::Hops(0);
    for v in touched {
        let r = if sites.contains(v) {
            Radius::Hops(0)
        } else {
            let d = dist.get_or_insert_with(|| bfs_distances(g_after, &sites));
            d.get(v).map_or(Radius::Unreachable, |&h| Radius::Hops(h))
        };
        worst = worst.max(r);
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepClass {
    Divergent,
    Other,
}

/// A step is divergent when the optimum drops but the maintained size does
/// not, or the optimum holds while the maintained size grows.
pub fn classify_step(prev_size: usize, new_size: usize, prev_opt: usize, new_opt: usize) -> StepClass {
    let divergent = (new_opt < prev_opt && new_size >= prev_size)
        || (new_opt == prev_opt && new_size > prev_size);
    if divergent {
        StepClass::Divergent
    } else {
        StepClass::Other
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatioError {
    #[error("oracle value missing at step {0}")]
    MissingOracle(usize),
    #[error("step {0}: optimum is 0 but the solution is not empty")]
    Unbounded(usize),
    #[error("union is only defined for vertex cover")]
    UnsupportedProblem,
    #[error("got {solutions} solutions for {graphs} graphs")]
    LengthMismatch { solutions: usize, graphs: usize },
}

fn ratio_of(step: usize, size: usize, opt: Option<usize>) -> Result<Ratio<u64>, RatioError> {
    match opt {
        None => Err(RatioError::MissingOracle(step)),
        Some(0) if size == 0 => Ok(Ratio::from_integer(1)),
        Some(0) => Err(RatioError::Unbounded(step)),
        Some(o) => Ok(Ratio::new(size as u64, o as u64)),
    }
}

/// Exact `max γ_i / γ*_i` over the run, including the starting solution.
/// An empty solution against an optimum of 0 counts as ratio 1.
pub fn max_ratio(report: &RunReport) -> Result<Ratio<u64>, RatioError> {
    let mut best = ratio_of(0, report.initial_size, report.initial_optimum)?;
    for s in &report.steps {
        best = best.max(ratio_of(s.step_index, s.solution_size, s.optimum_size)?);
    }
    Ok(best)
}

/// Union of per-snapshot vertex covers, and whether it covers every graph.
pub fn union_permanent(
    solutions: &[SolutionSnapshot],
    graphs: &[DynamicGraph],
) -> Result<(BTreeSet<VertexId>, bool), RatioError> {
    if solutions.len() != graphs.len() {
        return Err(RatioError::LengthMismatch {
            solutions: solutions.len(),
            graphs: graphs.len(),
        });
    }
    if solutions.iter().any(|s| s.problem != Problem::VertexCover) {
        return Err(RatioError::UnsupportedProblem);
    }
    let members: BTreeSet<VertexId> = solutions
        .iter()
        .flat_map(|s| s.members.iter().copied())
        .collect();
    let valid = graphs.iter().all(|g| is_vertex_cover(g, &members));
    Ok((members, valid))
}

/// JSON-lines rendering: one object per step, then a summary object.
pub fn to_jsonl(report: &RunReport) -> String {
    let mut out = String::new();
    for s in &report.steps {
        let line = json!({
            "step": s.step_index,
            "op": s.op.to_string(),
            "gamma": s.solution_size,
            "gamma_opt": s.optimum_size,
            "work": s.work_units,
            "radius": s.locality_radius,
            "touched": s.touched(),
        });
        writeln!(out, "{line}").unwrap();
    }
    let summary = json!({
        "max_ratio": report.max_ratio.map(|r| r.to_string()),
        "max_work": report.max_work,
        "max_radius": report.max_locality,
    });
    writeln!(out, "{summary}").unwrap();
    out
}

/// CSV rendering with columns `step,gamma,gamma_opt,ratio,work,radius`.
/// Missing values are left empty; ratios are exact fractions.
pub fn to_csv(report: &RunReport) -> String {
    let mut out = String::from("step,gamma,gamma_opt,ratio,work,radius\n");
    for s in &report.steps {
        let opt = s.optimum_size.map(|o| o.to_string()).unwrap_or_default();
        let ratio = ratio_of(s.step_index, s.solution_size, s.optimum_size)
            .map(|r| r.to_string())
            .unwrap_or_default();
        let radius = match s.locality_radius {
            Radius::Hops(h) => h.to_string(),
            Radius::Unreachable => String::new(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{}",
            s.step_index, s.solution_size, opt, ratio, s.work_units, radius
        )
        .unwrap();
    }
    out
}
