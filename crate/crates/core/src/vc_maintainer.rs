//! 1-local maintenance of a maximal matching, whose matched vertices form a
//! 2-approximate vertex cover.
//!
//! Each vertex's only state is its pair-vertex. An edge addition between two
//! uncovered vertices matches them. Deleting a matching edge frees both
//! endpoints; each (in ascending id order) grabs its smallest-id uncovered
//! neighbour as a new pair-vertex, or leaves the cover if it has none.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::graph::{DynamicGraph, EditOp, TrackedGraphView, VertexId};
use crate::maintenance::{
    Maintainer, MaintainerError, MaintainerSpec, Problem, SolutionSnapshot, StepWork, WorkBound,
};

/// Per-step work is at most `WORK_CONSTANT * (deg(u) + deg(v) + 1)`.
///
/// A deletion scans both endpoint neighbourhoods (`deg + 1` units each) and
/// performs at most six state writes.
pub const WORK_CONSTANT: usize = 8;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchingCover {
    pair: BTreeMap<VertexId, VertexId>,
}

impl MatchingCover {
    /// Greedy maximal matching over edges in ascending `(u, v)` order.
    pub fn init(g: &DynamicGraph) -> Self {
        let mut pair = BTreeMap::new();
        for (u, v) in g.edges() {
            if !pair.contains_key(&u) && !pair.contains_key(&v) {
                pair.insert(u, v);
                pair.insert(v, u);
            }
        }
        Self { pair }
    }

    pub fn partner(&self, v: VertexId) -> Option<VertexId> {
        self.pair.get(&v).copied()
    }

    pub fn is_covered(&self, v: VertexId) -> bool {
        self.pair.contains_key(&v)
    }

    pub fn matching(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.pair
            .iter()
            .filter(|(u, v)| u < v)
            .map(|(&u, &v)| (u, v))
    }

    pub fn cover(&self) -> SolutionSnapshot {
        SolutionSnapshot::new(Problem::VertexCover, self.pair.keys().copied().collect())
    }

    /// `u v` per matched pair with `u < v`, sorted.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.matching() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    fn link(&mut self, u: VertexId, v: VertexId, work: &mut StepWork) {
        self.pair.insert(u, v);
        self.pair.insert(v, u);
        work.write(u);
        work.write(v);
    }

    fn unlink(&mut self, u: VertexId, v: VertexId, work: &mut StepWork) {
        self.pair.remove(&u);
        self.pair.remove(&v);
        work.write(u);
        work.write(v);
    }

    /// Full audit: symmetric, realizable in `g`, no isolated cover vertices,
    /// and maximal.
    pub fn check_invariants(&self, g: &DynamicGraph) -> Result<(), String> {
        for (&u, &v) in &self.pair {
            if self.pair.get(&v) != Some(&u) {
                return Err(format!("pair map not symmetric at {u} -> {v}"));
            }
            if !g.has_edge(u, v) {
                return Err(format!("matched pair {{{u},{v}}} is not an edge"));
            }
        }
        for (u, v) in g.edges() {
            if !self.is_covered(u) && !self.is_covered(v) {
                return Err(format!("edge {{{u},{v}}} has no covered endpoint"));
            }
        }
        Ok(())
    }

    /// Applies the local update rule for `op`.
    pub fn on_edit(
        &mut self,
        g_after: &TrackedGraphView<'_>,
        op: &EditOp,
    ) -> Result<StepWork, MaintainerError> {
        let mut work = StepWork::default();
        for v in op.endpoints() {
            work.read(v);
            if let Some(p) = self.partner(v) {
                if self.partner(p) != Some(v) {
                    return Err(MaintainerError::CorruptState(format!(
                        "{v} paired with {p} but not vice versa"
                    )));
                }
            }
        }
        match *op {
            EditOp::AddEdge(u, v) => {
                if !self.is_covered(u) && !self.is_covered(v) {
                    self.link(u, v, &mut work);
                }
            }
            EditOp::DelEdge(u, v) => {
                if self.partner(u) == Some(v) {
                    self.unlink(u, v, &mut work);
                    let (a, b) = if u < v { (u, v) } else { (v, u) };
                    for x in [a, b] {
                        let fresh = g_after.neighbors(x).into_iter().find(|&w| {
                            work.read(w);
                            !self.is_covered(w)
                        });
                        if let Some(w) = fresh {
                            self.link(x, w, &mut work);
                        }
                    }
                }
            }
            EditOp::AddVertex(_) => {}
            EditOp::DelVertex(v) => {
                if self.is_covered(v) {
                    return Err(MaintainerError::CorruptState(format!(
                        "deleted vertex {v} was in the cover"
                    )));
                }
            }
        }
        Ok(work)
    }
}

/// [`Maintainer`] wrapper around [`MatchingCover`].
#[derive(Debug, Clone, Default)]
pub struct VcMatching {
    pub state: MatchingCover,
}

impl VcMatching {
    pub fn new() -> Self {
        Self::default()
    }

    pub const SPEC: MaintainerSpec = MaintainerSpec {
        claimed_radius: 1,
        claimed_work_bound: WorkBound::DegreeLinear { c: WORK_CONSTANT },
        target_ratio: Some((2, 1)),
    };
}

impl Maintainer for VcMatching {
    fn name(&self) -> &'static str {
        "vc-matching"
    }

    fn spec(&self) -> MaintainerSpec {
        Self::SPEC
    }

    fn problem(&self) -> Problem {
        Problem::VertexCover
    }

    fn init(&mut self, g: &DynamicGraph) {
        self.state = MatchingCover::init(g);
    }

    fn on_edit(&mut self, g_after: &TrackedGraphView<'_>, op: &EditOp) -> Result<StepWork, MaintainerError> {
        self.state.on_edit(g_after, op)
    }

    fn solution(&self) -> SolutionSnapshot {
        self.state.cover()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn step(state: &mut MatchingCover, g: &mut DynamicGraph, op: EditOp) -> StepWork {
        g.apply(&op).unwrap();
        let view = TrackedGraphView::new(g);
        let w = state.on_edit(&view, &op).unwrap();
        state.check_invariants(g).unwrap();
        w
    }

    #[test]
    fn init_examples() {
        assert_eq!(MatchingCover::init(&DynamicGraph::edgeless(4)).cover().size(), 0);
        let e = MatchingCover::init(&DynamicGraph::from_edges(3, &[(1, 2)]));
        assert_eq!(e.partner(v(1)), Some(v(2)));
        assert_eq!(e.cover().members, [v(1), v(2)].into());
        let p4 = DynamicGraph::from_edges(5, &[(1, 2), (2, 3), (3, 4)]);
        let s = MatchingCover::init(&p4);
        assert_eq!(s.dump(), "1 2\n3 4\n");
        assert_eq!(s.cover().size(), 4);
        s.check_invariants(&p4).unwrap();
    }

    #[test]
    fn addition_pairs_uncovered_endpoints() {
        let mut g = DynamicGraph::edgeless(3);
        let mut s = MatchingCover::default();
        step(&mut s, &mut g, EditOp::add_edge(1, 2));
        assert_eq!(s.partner(v(1)), Some(v(2)));
        assert_eq!(s.cover().members, [v(1), v(2)].into());
    }

    #[test]
    fn deletion_repairs_with_smallest_uncovered_neighbour() {
        let mut g = DynamicGraph::from_edges(4, &[(1, 2), (1, 3)]);
        let mut s = MatchingCover::init(&g);
        assert_eq!(s.dump(), "1 2\n");
        step(&mut s, &mut g, EditOp::del_edge(1, 2));
        assert_eq!(s.dump(), "1 3\n");
        assert_eq!(s.cover().members, [v(1), v(3)].into());
    }

    #[test]
    fn triangle_trace() {
        let mut g = DynamicGraph::edgeless(4);
        let mut s = MatchingCover::default();
        step(&mut s, &mut g, EditOp::add_edge(1, 2));
        step(&mut s, &mut g, EditOp::add_edge(2, 3));
        assert_eq!(s.cover().members, [v(1), v(2)].into());
        step(&mut s, &mut g, EditOp::add_edge(1, 3));
        assert_eq!(s.cover().members, [v(1), v(2)].into());
    }

    #[test]
    fn second_endpoint_sees_first_repair() {
        // 0-1 matched; 2 is adjacent to both. After deleting {0,1}, vertex 0
        // takes 2, so 1 finds nothing uncovered and leaves the cover.
        let mut g = DynamicGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        let mut s = MatchingCover::init(&g);
        assert_eq!(s.dump(), "0 1\n");
        step(&mut s, &mut g, EditOp::del_edge(0, 1));
        assert_eq!(s.dump(), "0 2\n");
    }

    #[test]
    fn non_matching_deletion_is_a_no_op() {
        let mut g = DynamicGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let mut s = MatchingCover::init(&g);
        let before = s.clone();
        let w = step(&mut s, &mut g, EditOp::del_edge(1, 2));
        assert_eq!(s, before);
        assert_eq!(w.write_count, 0);
    }

    #[test]
    fn vertex_ops_leave_state_alone() {
        let mut g = DynamicGraph::from_edges(2, &[(0, 1)]);
        let mut s = MatchingCover::init(&g);
        step(&mut s, &mut g, EditOp::AddVertex(v(2)));
        step(&mut s, &mut g, EditOp::DelVertex(v(2)));
        assert_eq!(s.dump(), "0 1\n");
    }

    #[test]
    fn corrupt_state_is_reported() {
        let mut g = DynamicGraph::from_edges(3, &[(0, 1)]);
        let mut s = MatchingCover::default();
        s.pair.insert(v(0), v(1));
        g.apply(&EditOp::del_edge(0, 1)).unwrap();
        let view = TrackedGraphView::new(&g);
        assert!(matches!(
            s.on_edit(&view, &EditOp::del_edge(0, 1)),
            Err(MaintainerError::CorruptState(_))
        ));
    }

    #[test]
    fn cover_sizes() {
        let mut s = MatchingCover::default();
        assert_eq!(s.cover().size(), 0);
        let mut w = StepWork::default();
        for k in 0..5u32 {
            s.link(v(2 * k), v(2 * k + 1), &mut w);
            assert_eq!(s.cover().size(), 2 * (k as usize + 1));
        }
    }
}
