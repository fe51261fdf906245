use std::collections::BTreeSet;

use serde::Serialize;

use super::gadget::{degree_audit, reduce, ApproxBudget, ReductionInstance, Role};
use super::srmc::{find_clique, SrmcInstance};
use super::ReductionError;
use crate::graph::{DynamicGraph, VertexId};

/// Default node-expansion cap for [`verify_deletion`].
pub const DEFAULT_DELETION_BUDGET: u64 = 200_000_000;

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

/// Exact search for a deletion set that leaves an `r`-regular graph.
///
/// Sizes are tried in ascending order. Within a size, vertices are decided in
/// ascending label order with "delete" tried before "keep", so the first set
/// found is the lexicographically smallest minimum one. Forced decisions are
/// propagated from the degree constraints: a kept vertex `x` must lose
/// exactly `deg(x) - r` neighbours.
struct DeletionSearch {
    adj: Vec<Vec<usize>>,
    need: Vec<i64>,
    state: Vec<u8>,
    /// Deleted neighbours per vertex.
    hit: Vec<i64>,
    /// Undecided neighbours per vertex.
    open: Vec<i64>,
    /// Vertices not deleted whose `hit` differs from `need`.
    unsatisfied: usize,
    deleted: usize,
    target: usize,
    trail: Vec<usize>,
    queue: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl DeletionSearch {
    fn new(g: &DynamicGraph, ids: &[VertexId], r: usize) -> Self {
        let index = |v: VertexId| ids.binary_search(&v).unwrap();
        let adj: Vec<Vec<usize>> = ids
            .iter()
            .map(|&v| g.neighbors(v).map(index).collect())
            .collect();
        let need: Vec<i64> = adj.iter().map(|a| a.len() as i64 - r as i64).collect();
        let open = adj.iter().map(|a| a.len() as i64).collect();
        let unsatisfied = need.iter().filter(|&&n| n != 0).count();
        Self {
            state: vec![UNDECIDED; adj.len()],
            hit: vec![0; adj.len()],
            open,
            need,
            adj,
            unsatisfied,
            deleted: 0,
            target: 0,
            trail: Vec::new(),
            queue: Vec::new(),
            nodes: 0,
            limit: u64::MAX,
        }
    }

    fn satisfied(&self, x: usize) -> bool {
        self.state[x] == IN || self.hit[x] == self.need[x]
    }

    fn assign(&mut self, v: usize, val: u8) -> bool {
        if self.state[v] != UNDECIDED {
            return self.state[v] == val;
        }
        let before = self.satisfied(v);
        self.state[v] = val;
        if !before && self.satisfied(v) {
            self.unsatisfied -= 1;
        }
        self.trail.push(v);
        if val == IN {
            self.deleted += 1;
        }
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            self.open[w] -= 1;
            if val == IN {
                let before = self.satisfied(w);
                self.hit[w] += 1;
                match (before, self.satisfied(w)) {
                    (true, false) => self.unsatisfied += 1,
                    (false, true) => self.unsatisfied -= 1,
                    _ => {}
                }
            }
            self.queue.push(w);
        }
        self.queue.push(v);
        self.deleted <= self.target
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let val = self.state[v];
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                self.open[w] += 1;
                if val == IN {
                    let before = self.satisfied(w);
                    self.hit[w] -= 1;
                    match (before, self.satisfied(w)) {
                        (true, false) => self.unsatisfied += 1,
                        (false, true) => self.unsatisfied -= 1,
                        _ => {}
                    }
                }
            }
            let before = self.satisfied(v);
            self.state[v] = UNDECIDED;
            if before && !self.satisfied(v) {
                self.unsatisfied += 1;
            }
            if val == IN {
                self.deleted -= 1;
            }
        }
    }

    fn check(&mut self, x: usize) -> bool {
        let slots = (self.target - self.deleted) as i64;
        let (need, hit, open) = (self.need[x], self.hit[x], self.open[x]);
        match self.state[x] {
            OUT => {
                if need < 0 || hit > need || hit + open < need || need - hit > slots {
                    return false;
                }
                if open > 0 && (hit == need || hit + open == need) {
                    let val = if hit == need { OUT } else { IN };
                    for i in 0..self.adj[x].len() {
                        let w = self.adj[x][i];
                        if self.state[w] == UNDECIDED && !self.assign(w, val) {
                            return false;
                        }
                    }
                }
                true
            }
            UNDECIDED => {
                let keep_impossible = need < 0 || hit > need || hit + open < need || need - hit > slots;
                if keep_impossible {
                    self.assign(x, IN)
                } else if slots == 0 {
                    self.assign(x, OUT)
                } else {
                    true
                }
            }
            _ => true,
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(x) = self.queue.pop() {
            if !self.check(x) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, from: usize) -> Result<bool, ReductionError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(ReductionError::BudgetExceeded(format!(
                "deletion search exceeded {} nodes",
                self.limit
            )));
        }
        if self.deleted == self.target {
            // every remaining vertex is kept
            return Ok(self.unsatisfied == 0);
        }
        let Some(v) = (from..self.adj.len()).find(|&v| self.state[v] == UNDECIDED) else {
            return Ok(false);
        };
        let mark = self.trail.len();
        for val in [IN, OUT] {
            if self.assign(v, val) && self.propagate() && self.dfs(v + 1)? {
                return Ok(true);
            }
            self.queue.clear();
            self.undo_to(mark);
        }
        Ok(false)
    }

    fn solve_exact_size(&mut self, t: usize) -> Result<Option<Vec<usize>>, ReductionError> {
        self.target = t;
        self.queue.extend(0..self.adj.len());
        let found = self.propagate() && self.dfs(0)?;
        let out = found.then(|| {
            (0..self.adj.len())
                .filter(|&v| self.state[v] == IN)
                .collect()
        });
        self.queue.clear();
        self.undo_to(0);
        Ok(out)
    }
}

/// Smallest deletion set (at most `max_deletions` vertices) leaving an
/// `r`-regular graph, or `None` when no such set exists.
pub fn verify_deletion(g: &DynamicGraph, r: usize, max_deletions: usize) -> Result<Option<BTreeSet<VertexId>>, ReductionError> {
    verify_deletion_with_budget(g, r, max_deletions, DEFAULT_DELETION_BUDGET)
}

pub fn verify_deletion_with_budget(
    g: &DynamicGraph,
    r: usize,
    max_deletions: usize,
    node_limit: u64,
) -> Result<Option<BTreeSet<VertexId>>, ReductionError> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let mut search = DeletionSearch::new(g, &ids, r);
    for t in 0..=max_deletions.min(ids.len()) {
        search.limit = node_limit.saturating_sub(search.nodes);
        let used = search.nodes;
        search.nodes = 0;
        let res = search.solve_exact_size(t);
        search.nodes += used;
        if let Some(set) = res? {
            return Ok(Some(set.into_iter().map(|i| ids[i]).collect()));
        }
    }
    Ok(None)
}

/// Maps a deletion witness back to a multicoloured clique of the source.
///
/// The witness must consist of exactly one class copy per class plus, for
/// every pair of classes, both halves of the couple encoding the edge between
/// the chosen copies.
pub fn decode_witness(red: &ReductionInstance, witness: &BTreeSet<VertexId>) -> Option<Vec<u32>> {
    let inst = &red.source;
    let mut pick = vec![None; inst.k];
    let mut couples = BTreeSet::new();
    for &v in witness {
        match red.role(v) {
            Role::ClassCopy { class, original } => {
                if pick[class].replace(original).is_some() {
                    return None;
                }
            }
            Role::Pair { edge, .. } => {
                couples.insert((v, edge));
            }
            _ => return None,
        }
    }
    let pick: Vec<u32> = pick.into_iter().collect::<Option<_>>()?;
    if !inst.is_multicolored_clique(&pick) {
        return None;
    }
    let expected = red.selection_for(&pick);
    (expected == *witness).then_some(pick)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub k: usize,
    pub s: usize,
    pub d: usize,
    pub k_prime: usize,
    pub r: usize,
    pub vertices: usize,
    pub edges: usize,
    pub degree_audit_ok: bool,
    pub clique: Option<Vec<u32>>,
    pub witness: Option<Vec<u32>>,
    pub clique_found: bool,
    pub deletion_found: bool,
    pub consistent: bool,
    /// The deletion witness decodes to a multicoloured clique (false when
    /// there is no witness).
    pub witness_maps_back: bool,
}

/// Runs both brute-force oracles on `inst` and its reduction and compares.
pub fn equivalence_check(inst: &SrmcInstance, budget: ApproxBudget) -> Result<EquivalenceReport, ReductionError> {
    let red = reduce(inst, budget)?;
    equivalence_for(&red, DEFAULT_DELETION_BUDGET)
}

pub(crate) fn equivalence_for(red: &ReductionInstance, node_limit: u64) -> Result<EquivalenceReport, ReductionError> {
    let inst = &red.source;
    let clique = find_clique(inst)?;
    let witness = verify_deletion_with_budget(&red.graph, red.regular_degree, red.k_prime, node_limit)?;
    let witness_maps_back = witness
        .as_ref()
        .is_some_and(|w| decode_witness(red, w).is_some());
    Ok(EquivalenceReport {
        k: inst.k,
        s: inst.s,
        d: inst.d,
        k_prime: red.k_prime,
        r: red.regular_degree,
        vertices: red.graph.vertex_count(),
        edges: red.graph.edge_count(),
        degree_audit_ok: degree_audit(red).ok,
        clique_found: clique.is_some(),
        deletion_found: witness.is_some(),
        consistent: clique.is_some() == witness.is_some(),
        witness_maps_back,
        clique,
        witness: witness.map(|w| w.into_iter().map(|v| v.0).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_regular;
    use crate::reduction::gen_srmc;

    /// Plain size-ascending lexicographic subset enumeration.
    fn brute(g: &DynamicGraph, r: usize, max: usize) -> Option<BTreeSet<VertexId>> {
        let ids: Vec<VertexId> = g.vertices().collect();
        fn combos(n: usize, t: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
            if cur.len() == t {
                return f(cur);
            }
            for i in start..n {
                cur.push(i);
                if combos(n, t, i + 1, cur, f) {
                    return true;
                }
                cur.pop();
            }
            false
        }
        for t in 0..=max.min(ids.len()) {
            let mut found = None;
            combos(ids.len(), t, 0, &mut Vec::new(), &mut |c| {
                let set: BTreeSet<VertexId> = c.iter().map(|&i| ids[i]).collect();
                if is_regular(&g.without(&set), r) {
                    found = Some(set);
                    true
                } else {
                    false
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    #[test]
    fn agrees_with_plain_enumeration_on_small_graphs() {
        for seed in 0..150 {
            let n = 4 + (seed % 6) as usize;
            let g = crate::graph::random_graph(n, 0.5, seed);
            for r in 0..4 {
                let max = 3.min(n);
                assert_eq!(
                    verify_deletion(&g, r, max).unwrap(),
                    brute(&g, r, max),
                    "seed {seed} n {n} r {r}"
                );
            }
        }
    }

    #[test]
    fn regular_graph_needs_nothing() {
        let c5 = DynamicGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert_eq!(verify_deletion(&c5, 2, 0).unwrap(), Some(BTreeSet::new()));
        assert_eq!(verify_deletion(&c5, 3, 2).unwrap(), None);
    }

    #[test]
    fn worked_instance_witness() {
        let inst = gen_srmc(2, 2, 1, 1, true).unwrap();
        let red = reduce(&inst, ApproxBudget::IDENTITY).unwrap();
        assert_eq!(verify_deletion(&red.graph, 5, 3).unwrap(), None);
        let w = verify_deletion(&red.graph, 5, 4).unwrap().unwrap();
        let clique = decode_witness(&red, &w).unwrap();
        assert_eq!(Some(clique.clone()), inst.planted);
        assert_eq!(w, red.selection_for(&clique));
    }

    #[test]
    fn budget_is_enforced() {
        let inst = gen_srmc(2, 2, 1, 1, true).unwrap();
        let red = reduce(&inst, ApproxBudget::IDENTITY).unwrap();
        assert!(matches!(
            verify_deletion_with_budget(&red.graph, 5, 4, 10),
            Err(ReductionError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn decode_rejects_padding() {
        let inst = gen_srmc(2, 2, 1, 1, true).unwrap();
        let red = reduce(&inst, ApproxBudget::IDENTITY).unwrap();
        let pad = red
            .graph
            .vertices()
            .find(|&v| red.role(v).is_padding())
            .unwrap();
        assert_eq!(decode_witness(&red, &[pad].into()), None);
    }
}
