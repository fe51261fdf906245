//! Dynamic undirected simple graphs and the unit edits that move between them.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer vertex label. Labels are never reused within one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
}

/// A single unit edit between consecutive graphs of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EditOp {
    AddEdge(VertexId, VertexId),
    DelEdge(VertexId, VertexId),
    AddVertex(VertexId),
    DelVertex(VertexId),
}

impl EditOp {
    pub fn add_edge(u: u32, v: u32) -> Self {
        EditOp::AddEdge(VertexId(u), VertexId(v))
    }

    pub fn del_edge(u: u32, v: u32) -> Self {
        EditOp::DelEdge(VertexId(u), VertexId(v))
    }

    /// The vertices the edit is applied at.
    pub fn endpoints(&self) -> Vec<VertexId> {
        match *self {
            EditOp::AddEdge(u, v) | EditOp::DelEdge(u, v) => vec![u, v],
            EditOp::AddVertex(v) | EditOp::DelVertex(v) => vec![v],
        }
    }

    pub fn inverse(&self) -> EditOp {
        match *self {
            EditOp::AddEdge(u, v) => EditOp::DelEdge(u, v),
            EditOp::DelEdge(u, v) => EditOp::AddEdge(u, v),
            EditOp::AddVertex(v) => EditOp::DelVertex(v),
            EditOp::DelVertex(v) => EditOp::AddVertex(v),
        }
    }

    pub fn is_edge_op(&self) -> bool {
        matches!(self, EditOp::AddEdge(..) | EditOp::DelEdge(..))
    }
}

impl fmt::Display for EditOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EditOp::AddEdge(u, v) => write!(f, "AE {u} {v}"),
            EditOp::DelEdge(u, v) => write!(f, "DE {u} {v}"),
            EditOp::AddVertex(v) => write!(f, "AV {v}"),
            EditOp::DelVertex(v) => write!(f, "DV {v}"),
        }
    }
}

/// Mutable undirected simple graph.
///
/// Adjacency is kept in ordered sets so every traversal and every serialized
/// form is deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DynamicGraph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edge_count: usize,
    next_id: u32,
}

impl DynamicGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on vertices `0..n`.
    pub fn edgeless(n: usize) -> Self {
        let mut g = Self::new();
        for i in 0..n as u32 {
            g.adj.insert(VertexId(i), BTreeSet::new());
        }
        g.next_id = n as u32;
        g
    }

    /// Graph on vertices `0..n` with the given edges. Panics on invalid edges;
    /// intended for fixtures and generators that already know the edges are sound.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Self::edgeless(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))
                .unwrap_or_else(|e| panic!("bad fixture edge ({u},{v}): {e}"));
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, n)| n.range(u..).map(move |&v| (u, v)))
    }

    /// True when the vertex labels are exactly `0..n`.
    pub fn is_dense(&self) -> bool {
        self.adj
            .keys()
            .enumerate()
            .all(|(i, v)| v.index() == i)
    }

    /// The smallest label never handed out in this graph.
    pub fn next_vertex_id(&self) -> VertexId {
        VertexId(self.next_id)
    }

    /// Adds a fresh vertex with the next unused label.
    pub fn add_fresh_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_id);
        self.adj.insert(v, BTreeSet::new());
        self.next_id += 1;
        v
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            return Err(GraphError::PreconditionViolation(format!(
                "vertex {v} already present"
            )));
        }
        if v.0 < self.next_id {
            return Err(GraphError::PreconditionViolation(format!(
                "vertex id {v} was already used in this run"
            )));
        }
        self.adj.insert(v, BTreeSet::new());
        self.next_id = v.0 + 1;
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        match self.adj.get(&v) {
            None => Err(GraphError::PreconditionViolation(format!(
                "vertex {v} not present"
            ))),
            Some(n) if !n.is_empty() => Err(GraphError::PreconditionViolation(format!(
                "vertex {v} is not isolated (degree {})",
                n.len()
            ))),
            Some(_) => {
                self.adj.remove(&v);
                Ok(())
            }
        }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::PreconditionViolation(format!(
                "self-loop on {u}"
            )));
        }
        for x in [u, v] {
            if !self.contains(x) {
                return Err(GraphError::PreconditionViolation(format!(
                    "endpoint {x} not present"
                )));
            }
        }
        if self.has_edge(u, v) {
            return Err(GraphError::PreconditionViolation(format!(
                "edge {{{u},{v}}} already present"
            )));
        }
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::PreconditionViolation(format!(
                "edge {{{u},{v}}} not present"
            )));
        }
        self.adj.get_mut(&u).unwrap().remove(&v);
        self.adj.get_mut(&v).unwrap().remove(&u);
        self.edge_count -= 1;
        Ok(())
    }

    /// Applies one edit in place. On error the graph is unchanged.
    pub fn apply(&mut self, op: &EditOp) -> Result<(), GraphError> {
        match *op {
            EditOp::AddEdge(u, v) => self.add_edge(u, v),
            EditOp::DelEdge(u, v) => self.remove_edge(u, v),
            EditOp::AddVertex(v) => self.add_vertex(v),
            EditOp::DelVertex(v) => self.remove_vertex(v),
        }
    }

    /// Undoes `op`, which must have been the last edit applied.
    ///
    /// Vertex re-insertion bypasses the no-reuse rule because the label is
    /// being restored, not handed out anew.
    pub fn revert(&mut self, op: &EditOp) -> Result<(), GraphError> {
        match *op {
            EditOp::DelVertex(v) => {
                if self.contains(v) {
                    return Err(GraphError::PreconditionViolation(format!(
                        "vertex {v} already present"
                    )));
                }
                self.adj.insert(v, BTreeSet::new());
                Ok(())
            }
            EditOp::AddVertex(v) => {
                self.remove_vertex(v)?;
                if self.next_id == v.0 + 1 {
                    self.next_id = v.0;
                }
                Ok(())
            }
            other => self.apply(&other.inverse()),
        }
    }

    /// Induced subgraph on all vertices except `removed`, keeping labels.
    pub fn without(&self, removed: &BTreeSet<VertexId>) -> DynamicGraph {
        let mut adj = BTreeMap::new();
        let mut edge_count = 0;
        for (&u, n) in &self.adj {
            if removed.contains(&u) {
                continue;
            }
            let kept: BTreeSet<VertexId> =
                n.iter().copied().filter(|v| !removed.contains(v)).collect();
            edge_count += kept.len();
            adj.insert(u, kept);
        }
        DynamicGraph {
            adj,
            edge_count: edge_count / 2,
            next_id: self.next_id,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Checks the undirected/simple invariants; used by tests.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut half_edges = 0;
        for (&u, n) in &self.adj {
            if u.0 >= self.next_id {
                return Err(format!("vertex {u} beyond id watermark"));
            }
            for &v in n {
                if u == v {
                    return Err(format!("self-loop at {u}"));
                }
                if !self.adj.get(&v).is_some_and(|m| m.contains(&u)) {
                    return Err(format!("asymmetric adjacency {u}->{v}"));
                }
                half_edges += 1;
            }
        }
        if half_edges != 2 * self.edge_count {
            return Err(format!(
                "edge count {} disagrees with adjacency ({half_edges} half-edges)",
                self.edge_count
            ));
        }
        Ok(())
    }
}

/// Functional form of [`DynamicGraph::apply`].
pub fn apply_edit(g: &DynamicGraph, op: &EditOp) -> Result<DynamicGraph, GraphError> {
    let mut next = g.clone();
    next.apply(op)?;
    Ok(next)
}

/// Ordered unit edits starting from the edgeless graph on `initial_n` vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditScript {
    pub initial_n: usize,
    pub ops: Vec<EditOp>,
}

impl EditScript {
    pub fn initial_graph(&self) -> DynamicGraph {
        DynamicGraph::edgeless(self.initial_n)
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Replays the script from its initial graph, failing at the first bad op.
    pub fn replay(&self) -> Result<DynamicGraph, (usize, GraphError)> {
        let mut g = self.initial_graph();
        for (i, op) in self.ops.iter().enumerate() {
            g.apply(op).map_err(|e| (i, e))?;
        }
        Ok(g)
    }
}

/// Script that builds `target` from the edgeless graph on `|V(target)|`
/// vertices, one edge at a time, in a seed-determined order.
///
/// Non-dense labels are mapped to `0..n` by rank.
pub fn build_script_edge_by_edge(target: &DynamicGraph, order_seed: u64) -> EditScript {
    let rank: BTreeMap<VertexId, u32> = target
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, i as u32))
        .collect();
    let mut ops: Vec<EditOp> = target
        .edges()
        .map(|(u, v)| EditOp::add_edge(rank[&u], rank[&v]))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(order_seed);
    ops.shuffle(&mut rng);
    EditScript {
        initial_n: target.vertex_count(),
        ops,
    }
}

/// Index-addressable set of vertex pairs supporting O(1) insert, remove and
/// uniform choice.
struct PairPool {
    items: Vec<(u32, u32)>,
    pos: BTreeMap<(u32, u32), usize>,
}

impl PairPool {
    fn new() -> Self {
        Self {
            items: Vec::new(),
            pos: BTreeMap::new(),
        }
    }

    fn insert(&mut self, e: (u32, u32)) {
        self.pos.insert(e, self.items.len());
        self.items.push(e);
    }

    fn remove_at(&mut self, i: usize) -> (u32, u32) {
        let e = self.items.swap_remove(i);
        self.pos.remove(&e);
        if let Some(&moved) = self.items.get(i) {
            self.pos.insert(moved, i);
        }
        e
    }

    fn len(&self) -> usize {
        self.items.len()
    }
}

/// Random edge churn over a fixed vertex set `0..n`.
pub fn churn_script(n: usize, steps: usize, p_add: f64, seed: u64) -> Result<EditScript, GraphError> {
    if !(0.0..=1.0).contains(&p_add) {
        return Err(GraphError::Degenerate(format!(
            "p_add {p_add} outside [0, 1]"
        )));
    }
    if n < 2 && steps > 0 {
        return Err(GraphError::Degenerate(format!(
            "no edge operations possible on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut absent = PairPool::new();
    let mut present = PairPool::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            absent.insert((u, v));
        }
    }
    let mut ops = Vec::with_capacity(steps);
    for _ in 0..steps {
        let want_add = rng.gen_bool(p_add);
        let add = if want_add {
            absent.len() > 0
        } else {
            present.len() == 0
        };
        if add {
            let (u, v) = absent.remove_at(rng.gen_range(0..absent.len()));
            present.insert((u, v));
            ops.push(EditOp::add_edge(u, v));
        } else {
            let (u, v) = present.remove_at(rng.gen_range(0..present.len()));
            absent.insert((u, v));
            ops.push(EditOp::del_edge(u, v));
        }
    }
    debug_assert_eq!(absent.len() + present.len(), n * n.saturating_sub(1) / 2);
    Ok(EditScript { initial_n: n, ops })
}

/// Erdős–Rényi style random graph on `0..n`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> DynamicGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = DynamicGraph::edgeless(n);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(VertexId(u), VertexId(v)).unwrap();
            }
        }
    }
    g
}

/// Hop distance from the nearest source to `target`; `None` when unreachable.
pub fn distance_from(
    g: &DynamicGraph,
    sources: &BTreeSet<VertexId>,
    target: VertexId,
) -> Result<Option<usize>, GraphError> {
    for &s in sources.iter().chain(std::iter::once(&target)) {
        if !g.contains(s) {
            return Err(GraphError::UnknownVertex(s));
        }
    }
    Ok(bfs_distances(g, sources).get(&target).copied())
}

/// Multi-source BFS; vertices absent from the map are unreachable.
/// Sources not in the graph are ignored.
pub fn bfs_distances(g: &DynamicGraph, sources: &BTreeSet<VertexId>) -> BTreeMap<VertexId, usize> {
    let mut dist = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &s in sources {
        if g.contains(s) && dist.insert(s, 0).is_none() {
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for w in g.neighbors(u) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// True iff every vertex has degree exactly `deg`.
pub fn is_regular(g: &DynamicGraph, deg: usize) -> bool {
    g.vertices().all(|v| g.degree(v) == deg)
}

/// Read-instrumented view over a graph.
///
/// Every query logs the queried vertex and charges work units: one per query,
/// plus one per adjacency entry handed back by [`TrackedGraphView::neighbors`].
pub struct TrackedGraphView<'g> {
    graph: &'g DynamicGraph,
    read_log: RefCell<BTreeSet<VertexId>>,
    work: Cell<usize>,
}

impl<'g> TrackedGraphView<'g> {
    pub fn new(graph: &'g DynamicGraph) -> Self {
        Self {
            graph,
            read_log: RefCell::new(BTreeSet::new()),
            work: Cell::new(0),
        }
    }

    fn log(&self, v: VertexId, units: usize) {
        self.read_log.borrow_mut().insert(v);
        self.work.set(self.work.get() + units);
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.log(v, 1);
        self.graph.contains(v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.log(v, 1);
        self.graph.degree(v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.log(u, 1);
        self.read_log.borrow_mut().insert(v);
        self.graph.has_edge(u, v)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let n: Vec<VertexId> = self.graph.neighbors(v).collect();
        self.log(v, 1 + n.len());
        n
    }

    pub fn read_log(&self) -> BTreeSet<VertexId> {
        self.read_log.borrow().clone()
    }

    pub fn query_work(&self) -> usize {
        self.work.get()
    }

    pub fn reset(&self) {
        self.read_log.borrow_mut().clear();
        self.work.set(0);
    }

    /// Uninstrumented access for measurement code only.
    pub fn untracked(&self) -> &'g DynamicGraph {
        self.graph
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    #[test]
    fn add_then_delete_edge() {
        let g = DynamicGraph::edgeless(3);
        let g1 = apply_edit(&g, &EditOp::add_edge(1, 2)).unwrap();
        assert!(g1.has_edge(v(2), v(1)));
        assert_eq!(g1.edge_count(), 1);
        let g2 = apply_edit(&g1, &EditOp::del_edge(1, 2)).unwrap();
        assert_eq!(g2, g);
    }

    #[test]
    fn delete_isolated_vertex() {
        let mut g = DynamicGraph::new();
        g.add_vertex(v(1)).unwrap();
        g.apply(&EditOp::DelVertex(v(1))).unwrap();
        assert_eq!(g.vertex_count(), 0);
    }

    #[test]
    fn preconditions_are_named() {
        let g = DynamicGraph::from_edges(3, &[(0, 1)]);
        let err = apply_edit(&g, &EditOp::add_edge(0, 1)).unwrap_err();
        assert!(err.to_string().contains("already present"), "{err}");
        assert!(apply_edit(&g, &EditOp::add_edge(2, 2)).is_err());
        assert!(apply_edit(&g, &EditOp::del_edge(1, 2)).is_err());
        assert!(apply_edit(&g, &EditOp::DelVertex(v(0))).is_err());
        assert!(apply_edit(&g, &EditOp::AddVertex(v(2))).is_err());
        assert!(apply_edit(&g, &EditOp::add_edge(0, 9)).is_err());
    }

    #[test]
    fn deleted_ids_are_not_reused() {
        let mut g = DynamicGraph::edgeless(3);
        g.apply(&EditOp::DelVertex(v(2))).unwrap();
        assert!(g.add_vertex(v(2)).is_err());
        assert_eq!(g.add_fresh_vertex(), v(3));
    }

    #[test]
    fn edge_by_edge_triangle() {
        let tri = DynamicGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let s = build_script_edge_by_edge(&tri, 0);
        assert_eq!(s.initial_n, 3);
        assert_eq!(s.ops.len(), 3);
        assert_eq!(s.replay().unwrap(), tri);
    }

    #[test]
    fn edge_by_edge_edgeless() {
        let s = build_script_edge_by_edge(&DynamicGraph::edgeless(5), 3);
        assert_eq!(s.initial_n, 5);
        assert!(s.ops.is_empty());
    }

    #[test]
    fn edge_by_edge_seeds_permute_same_multiset() {
        let path = DynamicGraph::from_edges(4, &[(1, 2), (2, 3)]);
        let mut a = build_script_edge_by_edge(&path, 0).ops;
        let mut b = build_script_edge_by_edge(&path, 1).ops;
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn churn_single_forced_op() {
        for seed in 0..5 {
            let s = churn_script(2, 1, 1.0, seed).unwrap();
            assert_eq!(s.ops, vec![EditOp::add_edge(0, 1)]);
        }
    }

    #[test]
    fn churn_is_deterministic_and_valid() {
        let a = churn_script(10, 1000, 0.5, 7).unwrap();
        let b = churn_script(10, 1000, 0.5, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.ops.len(), 1000);
        let mut g = a.initial_graph();
        for op in &a.ops {
            g.apply(op).unwrap();
        }
    }

    #[test]
    fn churn_degenerate() {
        assert!(matches!(
            churn_script(1, 1, 0.5, 0),
            Err(GraphError::Degenerate(_))
        ));
        assert!(churn_script(1, 0, 0.5, 0).unwrap().ops.is_empty());
    }

    #[test]
    fn distances() {
        let star = DynamicGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let src: BTreeSet<_> = [v(0)].into();
        assert_eq!(distance_from(&star, &src, v(3)).unwrap(), Some(1));
        assert_eq!(distance_from(&star, &src, v(0)).unwrap(), Some(0));
        let path = DynamicGraph::from_edges(5, &[(1, 2), (2, 3), (3, 4)]);
        let src: BTreeSet<_> = [v(1)].into();
        assert_eq!(distance_from(&path, &src, v(4)).unwrap(), Some(3));
        assert_eq!(distance_from(&path, &src, v(0)).unwrap(), None);
        assert_eq!(
            distance_from(&path, &src, v(9)),
            Err(GraphError::UnknownVertex(v(9)))
        );
    }

    #[test]
    fn regularity() {
        let tri = DynamicGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(is_regular(&tri, 2));
        let star = DynamicGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(!is_regular(&star, 1));
        let mut edges = vec![];
        for a in 0..6 {
            for b in a + 1..6 {
                edges.push((a, b));
            }
        }
        assert!(is_regular(&DynamicGraph::from_edges(6, &edges), 5));
        assert!(is_regular(&DynamicGraph::new(), 7));
    }

    #[test]
    fn view_logs_only_queried_vertices() {
        let g = DynamicGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let view = TrackedGraphView::new(&g);
        assert!(view.read_log().is_empty());
        let n = view.neighbors(v(1));
        assert_eq!(n, vec![v(0), v(2)]);
        assert_eq!(view.read_log(), [v(1)].into());
        assert_eq!(view.query_work(), 3);
        view.degree(v(3));
        assert_eq!(view.read_log(), [v(1), v(3)].into());
        view.reset();
        assert!(view.read_log().is_empty());
        assert_eq!(view.query_work(), 0);
    }

    #[test]
    fn revert_restores_vertex_ops() {
        let mut g = DynamicGraph::edgeless(2);
        let before = g.clone();
        g.apply(&EditOp::DelVertex(v(1))).unwrap();
        g.revert(&EditOp::DelVertex(v(1))).unwrap();
        assert_eq!(g, before);
        g.apply(&EditOp::AddVertex(v(2))).unwrap();
        g.revert(&EditOp::AddVertex(v(2))).unwrap();
        assert_eq!(g, before);
    }
}
