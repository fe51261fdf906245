//! Reference implementations used only by tests. Deliberately naive and
//! independent of the library's solvers.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use dynmaint::graph::{DynamicGraph, VertexId};

pub fn ids(g: &DynamicGraph) -> Vec<VertexId> {
    g.vertices().collect()
}

/// Size of a smallest subset satisfying `ok`, by enumerating all masks.
fn min_subset(g: &DynamicGraph, ok: impl Fn(&DynamicGraph, u64, &[VertexId]) -> bool) -> usize {
    let vs = ids(g);
    assert!(vs.len() <= 20, "exhaustive search on {} vertices", vs.len());
    (0u64..1 << vs.len())
        .filter(|&m| ok(g, m, &vs))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

fn bit(vs: &[VertexId], m: u64, v: VertexId) -> bool {
    let i = vs.iter().position(|&x| x == v).unwrap();
    m >> i & 1 == 1
}

pub fn brute_vc(g: &DynamicGraph) -> usize {
    let edges: Vec<_> = g.edges().collect();
    min_subset(g, |_, m, vs| {
        edges.iter().all(|&(u, v)| bit(vs, m, u) || bit(vs, m, v))
    })
}

pub fn brute_ds(g: &DynamicGraph) -> usize {
    min_subset(g, |g, m, vs| {
        vs.iter().all(|&v| bit(vs, m, v) || g.neighbors(v).any(|w| bit(vs, m, w)))
    })
}

pub fn covers(g: &DynamicGraph, set: &BTreeSet<VertexId>) -> bool {
    g.edges().all(|(u, v)| set.contains(&u) || set.contains(&v))
}

pub fn dominates(g: &DynamicGraph, set: &BTreeSet<VertexId>) -> bool {
    g.vertices()
        .all(|v| set.contains(&v) || g.neighbors(v).any(|w| set.contains(&w)))
}

/// Hop distances from the nearest of `sources`.
pub fn bfs(g: &DynamicGraph, sources: &[VertexId]) -> BTreeMap<VertexId, usize> {
    let mut dist = BTreeMap::new();
    let mut q = VecDeque::new();
    for &s in sources {
        if g.contains(s) && dist.insert(s, 0).is_none() {
            q.push_back(s);
        }
    }
    while let Some(u) = q.pop_front() {
        let du = dist[&u];
        for w in g.neighbors(u) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(du + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

/// Symmetric, realised by edges of `g`, and maximal.
pub fn check_matching(g: &DynamicGraph, pairs: &[(VertexId, VertexId)]) -> Result<(), String> {
    let mut mate = BTreeMap::new();
    for &(u, v) in pairs {
        if !g.has_edge(u, v) {
            return Err(format!("{u}-{v} is not an edge"));
        }
        if mate.insert(u, v).is_some() || mate.insert(v, u).is_some() {
            return Err(format!("{u}-{v} shares an endpoint with another pair"));
        }
    }
    for (u, v) in g.edges() {
        if !mate.contains_key(&u) && !mate.contains_key(&v) {
            return Err(format!("edge {u}-{v} could extend the matching"));
        }
    }
    Ok(())
}
