//! Exact oracles and from-scratch baselines: Buss kernelization, exact vertex
//! cover and dominating set, and the shrink-greedy dominating set maintainer.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{DynamicGraph, EditOp, TrackedGraphView, VertexId};
use crate::maintenance::{
    Maintainer, MaintainerError, MaintainerSpec, Oracle, Problem, SolutionSnapshot, StepWork,
    WorkBound,
};

/// Default node-expansion cap for the exact solvers.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("search budget of {0} node expansions exceeded")]
    BudgetExceeded(u64),
    #[error("oracle not applicable: {0}")]
    NotApplicable(String),
}

// ---------------------------------------------------------------------------
// Buss kernel

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Reduced,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelResult {
    pub forced: BTreeSet<VertexId>,
    pub kernel: DynamicGraph,
    pub residual_budget: usize,
    pub verdict: Verdict,
}

/// Buss kernelization for vertex cover with budget `k`.
///
/// Vertices of degree above the residual budget go into `forced`; isolated
/// vertices are dropped. `No` means no cover of size `<= k` exists. `Reduced`
/// only means the kernel is small: `g` has a cover of size `<= k` iff the
/// kernel has one of size `<= residual_budget`.
pub fn buss_kernelize(g: &DynamicGraph, k: usize) -> KernelResult {
    let mut h = g.clone();
    let mut forced = BTreeSet::new();
    let mut budget = k;
    let mut verdict = Verdict::Reduced;
    loop {
        let Some(v) = h.vertices().find(|&v| h.degree(v) > budget) else {
            break;
        };
        if budget == 0 {
            verdict = Verdict::No;
            break;
        }
        forced.insert(v);
        budget -= 1;
        h = h.without(&[v].into());
    }
    let isolated: BTreeSet<VertexId> = h.vertices().filter(|&v| h.degree(v) == 0).collect();
    let kernel = h.without(&isolated);
    if kernel.edge_count() > budget * budget {
        verdict = Verdict::No;
    }
    KernelResult {
        forced,
        kernel,
        residual_budget: budget,
        verdict,
    }
}

// ---------------------------------------------------------------------------
// Dense bitset helpers for the exact searches

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// Graph relabelled to `0..n` with bitset adjacency.
struct Compact {
    ids: Vec<VertexId>,
    adj: Vec<Bits>,
}

impl Compact {
    fn new(g: &DynamicGraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut adj = vec![Bits::empty(n); n];
        for (u, v) in g.edges() {
            adj[index[&u]].insert(index[&v]);
            adj[index[&v]].insert(index[&u]);
        }
        Self { ids, adj }
    }

    fn n(&self) -> usize {
        self.ids.len()
    }
}

// ---------------------------------------------------------------------------
// Exact vertex cover

struct VcSearch<'a> {
    g: &'a Compact,
    nodes: u64,
    limit: u64,
}

impl VcSearch<'_> {
    /// Decides whether the graph induced by `alive` has a cover of size `<= k`,
    /// appending one to `chosen` if so.
    fn solve(&mut self, alive: &Bits, mut k: usize, chosen: &mut Vec<usize>) -> Result<bool, SolverError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(SolverError::BudgetExceeded(self.limit));
        }
        let mark = chosen.len();
        let mut alive = alive.clone();
        let (best, best_deg) = loop {
            let mut edges2 = 0;
            let mut best = None;
            let mut best_deg = 0;
            let mut forced = None;
            for v in alive.iter() {
                let d = self.g.adj[v].and_count(&alive);
                edges2 += d;
                if d > k && forced.is_none() {
                    forced = Some(v);
                }
                if d > best_deg {
                    best_deg = d;
                    best = Some(v);
                }
            }
            if edges2 == 0 {
                return Ok(true);
            }
            if k == 0 {
                chosen.truncate(mark);
                return Ok(false);
            }
            if let Some(v) = forced {
                chosen.push(v);
                alive.remove(v);
                k -= 1;
                continue;
            }
            if edges2 / 2 > k * k {
                chosen.truncate(mark);
                return Ok(false);
            }
            break (best.unwrap(), best_deg);
        };

        let inner = chosen.len();
        let mut without = alive.clone();
        without.remove(best);
        chosen.push(best);
        if self.solve(&without, k - 1, chosen)? {
            return Ok(true);
        }
        chosen.truncate(inner);

        if best_deg <= k {
            let nbrs = self.g.adj[best].and(&alive);
            chosen.extend(nbrs.iter());
            let mut rest = alive.minus(&nbrs);
            rest.remove(best);
            if self.solve(&rest, k - best_deg, chosen)? {
                return Ok(true);
            }
        }
        chosen.truncate(mark);
        Ok(false)
    }
}

/// Minimum vertex cover by iterative deepening over a bounded search tree,
/// with the Buss rule applied at every node.
///
/// Branches on a maximum-degree vertex (smallest id on ties): the vertex
/// first, then its whole neighbourhood.
pub fn vc_exact(g: &DynamicGraph) -> Result<SolutionSnapshot, SolverError> {
    vc_exact_with_budget(g, DEFAULT_NODE_BUDGET)
}

pub fn vc_exact_with_budget(g: &DynamicGraph, node_limit: u64) -> Result<SolutionSnapshot, SolverError> {
    let compact = Compact::new(g);
    let n = compact.n();
    // a greedy maximal matching's size is a lower bound on any cover
    let mut matched = Bits::empty(n);
    let mut lower = 0;
    for u in 0..n {
        if matched.contains(u) {
            continue;
        }
        if let Some(v) = compact.adj[u].iter().find(|&v| !matched.contains(v)) {
            matched.insert(u);
            matched.insert(v);
            lower += 1;
        }
    }
    let mut search = VcSearch {
        g: &compact,
        nodes: 0,
        limit: node_limit,
    };
    let all = Bits::full(n);
    for k in lower..=n {
        let mut chosen = Vec::new();
        if search.solve(&all, k, &mut chosen)? {
            let members = chosen.into_iter().map(|i| compact.ids[i]).collect();
            return Ok(SolutionSnapshot::new(Problem::VertexCover, members));
        }
    }
    unreachable!("the whole vertex set is a cover")
}

// ---------------------------------------------------------------------------
// Exact dominating set

fn components(g: &DynamicGraph) -> Vec<BTreeSet<VertexId>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in g.vertices() {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = BTreeSet::from([s]);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if seen.insert(w) {
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Centre of a star component (any vertex adjacent to all others), if the
/// component is a star. Single vertices and single edges count as stars.
fn star_centre(g: &DynamicGraph, comp: &BTreeSet<VertexId>) -> Option<VertexId> {
    let n = comp.len();
    let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
    if edges != n - 1 {
        return None;
    }
    comp.iter().copied().find(|&v| g.degree(v) == n - 1)
}

struct DsSearch<'a> {
    g: &'a Compact,
    closed: Vec<Bits>,
    nodes: u64,
    limit: u64,
}

impl DsSearch<'_> {
    fn solve(&mut self, dominated: &Bits, left: usize, chosen: &mut Vec<usize>) -> Result<bool, SolverError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(SolverError::BudgetExceeded(self.limit));
        }
        let n = self.g.n();
        let Some(u) = (0..n).find(|&v| !dominated.contains(v)) else {
            return Ok(true);
        };
        if left == 0 {
            return Ok(false);
        }
        // any vertex dominates at most max_closed vertices
        let missing = n - dominated.count();
        let reach = self.closed.iter().map(Bits::count).max().unwrap_or(1);
        if missing > left * reach {
            return Ok(false);
        }
        let candidates: Vec<usize> = self.closed[u].iter().collect();
        for c in candidates {
            chosen.push(c);
            let mut next = dominated.clone();
            for w in self.closed[c].iter() {
                next.insert(w);
            }
            if self.solve(&next, left - 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

fn ds_component(g: &DynamicGraph, comp: &BTreeSet<VertexId>, limit: u64, used: &mut u64) -> Result<BTreeSet<VertexId>, SolverError> {
    if let Some(c) = star_centre(g, comp) {
        return Ok([c].into());
    }
    let outside: BTreeSet<VertexId> = g.vertices().filter(|v| !comp.contains(v)).collect();
    let sub = g.without(&outside);
    let compact = Compact::new(&sub);
    let n = compact.n();
    let closed: Vec<Bits> = (0..n)
        .map(|v| {
            let mut b = compact.adj[v].clone();
            b.insert(v);
            b
        })
        .collect();
    let mut search = DsSearch {
        g: &compact,
        closed,
        nodes: 0,
        limit: limit.saturating_sub(*used),
    };
    for size in 1..=n {
        let mut chosen = Vec::new();
        let found = search.solve(&Bits::empty(n), size, &mut chosen);
        if found.is_err() {
            *used += search.nodes;
        }
        if found? {
            *used += search.nodes;
            return Ok(chosen.into_iter().map(|i| compact.ids[i]).collect());
        }
    }
    unreachable!("the whole component dominates itself")
}

/// Minimum dominating set, solved per connected component. Star components
/// (including isolated vertices) are answered directly; the rest by
/// iterative-deepening search branching on the closed neighbourhood of the
/// lowest undominated vertex.
pub fn ds_exact(g: &DynamicGraph) -> Result<SolutionSnapshot, SolverError> {
    ds_exact_with_budget(g, DEFAULT_NODE_BUDGET)
}

pub fn ds_exact_with_budget(g: &DynamicGraph, node_limit: u64) -> Result<SolutionSnapshot, SolverError> {
    let mut used = 0;
    let mut members = BTreeSet::new();
    for comp in components(g) {
        members.extend(ds_component(g, &comp, node_limit, &mut used)?);
    }
    Ok(SolutionSnapshot::new(Problem::DominatingSet, members))
}

/// Dominating set optimum when every component is a star; errors otherwise.
pub fn ds_star_analytic(g: &DynamicGraph) -> Result<usize, SolverError> {
    let comps = components(g);
    for c in &comps {
        if star_centre(g, c).is_none() {
            return Err(SolverError::NotApplicable(format!(
                "component containing {} is not a star",
                c.first().unwrap()
            )));
        }
    }
    Ok(comps.len())
}

#[derive(Debug, Clone, Copy)]
pub struct VcExactOracle {
    pub node_limit: u64,
}

impl Default for VcExactOracle {
    fn default() -> Self {
        Self {
            node_limit: DEFAULT_NODE_BUDGET,
        }
    }
}

impl Oracle for VcExactOracle {
    fn optimum(&self, g: &DynamicGraph) -> Result<usize, SolverError> {
        vc_exact_with_budget(g, self.node_limit).map(|s| s.size())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DsExactOracle {
    pub node_limit: u64,
}

impl Default for DsExactOracle {
    fn default() -> Self {
        Self {
            node_limit: DEFAULT_NODE_BUDGET,
        }
    }
}

impl Oracle for DsExactOracle {
    fn optimum(&self, g: &DynamicGraph) -> Result<usize, SolverError> {
        ds_exact_with_budget(g, self.node_limit).map(|s| s.size())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StarAnalyticOracle;

impl Oracle for StarAnalyticOracle {
    fn optimum(&self, g: &DynamicGraph) -> Result<usize, SolverError> {
        ds_star_analytic(g)
    }
}

// ---------------------------------------------------------------------------
// Shrink-greedy dominating set maintainer

/// Starts from the whole vertex set. When an edge appears, an endpoint that
/// is a member, has a member neighbour and is nobody's sole dominator leaves
/// the set. When an edge disappears, an endpoint left undominated joins.
/// Members are never re-added otherwise.
#[derive(Debug, Clone, Default)]
pub struct DsShrink {
    pub members: BTreeSet<VertexId>,
}

impl DsShrink {
    pub fn new() -> Self {
        Self::default()
    }

    pub const SPEC: MaintainerSpec = MaintainerSpec {
        claimed_radius: 2,
        claimed_work_bound: WorkBound::Unbounded,
        target_ratio: None,
    };

    /// True if every vertex of `N[x]` stays dominated when `x` leaves.
    fn redundant(&self, view: &TrackedGraphView<'_>, x: VertexId, work: &mut StepWork) -> bool {
        let nbrs = view.neighbors(x);
        let has_member_nbr = nbrs.iter().any(|&y| {
            work.read(y);
            self.members.contains(&y)
        });
        if !has_member_nbr {
            return false;
        }
        nbrs.iter().all(|&y| {
            self.members.contains(&y)
                || view.neighbors(y).into_iter().any(|z| {
                    work.read(z);
                    z != x && self.members.contains(&z)
                })
        })
    }

    fn undominated(&self, view: &TrackedGraphView<'_>, x: VertexId, work: &mut StepWork) -> bool {
        !self.members.contains(&x)
            && !view.neighbors(x).into_iter().any(|y| {
                work.read(y);
                self.members.contains(&y)
            })
    }
}

impl Maintainer for DsShrink {
    fn name(&self) -> &'static str {
        "ds-shrink"
    }

    fn spec(&self) -> MaintainerSpec {
        Self::SPEC
    }

    fn problem(&self) -> Problem {
        Problem::DominatingSet
    }

    fn init(&mut self, g: &DynamicGraph) {
        self.members = g.vertices().collect();
    }

    fn on_edit(&mut self, view: &TrackedGraphView<'_>, op: &EditOp) -> Result<StepWork, MaintainerError> {
        let mut work = StepWork::default();
        for v in op.endpoints() {
            work.read(v);
        }
        match *op {
            EditOp::AddEdge(u, v) => {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                for x in [a, b] {
                    if self.members.contains(&x) && self.redundant(view, x, &mut work) {
                        self.members.remove(&x);
                        work.write(x);
                    }
                }
            }
            EditOp::DelEdge(u, v) => {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                for x in [a, b] {
                    if self.undominated(view, x, &mut work) {
                        self.members.insert(x);
                        work.write(x);
                    }
                }
            }
            EditOp::AddVertex(v) => {
                self.members.insert(v);
                work.write(v);
            }
            EditOp::DelVertex(v) => {
                if self.members.remove(&v) {
                    work.write(v);
                }
            }
        }
        Ok(work)
    }

    fn solution(&self) -> SolutionSnapshot {
        SolutionSnapshot::new(Problem::DominatingSet, self.members.clone())
    }
}
