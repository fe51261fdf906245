mod common;

use std::collections::BTreeSet;

use dynmaint::graph::{
    apply_edit, build_script_edge_by_edge, churn_script, distance_from, random_graph,
    DynamicGraph, EditOp, EditScript, TrackedGraphView, VertexId,
};
use dynmaint::io::{parse_graph, parse_script, write_graph, write_script};
use proptest::prelude::*;

/// Turns raw choices into a valid mixed script: edge toggles, fresh vertices,
/// and deletions of isolated vertices.
fn mixed_ops(n: usize, choices: &[(u8, u32, u32)]) -> (DynamicGraph, Vec<EditOp>) {
    let g0 = DynamicGraph::edgeless(n);
    let mut g = g0.clone();
    let mut ops = Vec::new();
    for &(kind, a, b) in choices {
        let vs: Vec<VertexId> = g.vertices().collect();
        let op = match kind % 8 {
            0 => EditOp::AddVertex(g.next_vertex_id()),
            1 => match vs.iter().find(|&&v| g.degree(v) == 0) {
                Some(&v) => EditOp::DelVertex(v),
                None => continue,
            },
            _ if vs.len() >= 2 => {
                let u = vs[a as usize % vs.len()];
                let w = vs[b as usize % vs.len()];
                if u == w {
                    continue;
                }
                if g.has_edge(u, w) {
                    EditOp::DelEdge(u, w)
                } else {
                    EditOp::AddEdge(u, w)
                }
            }
            _ => continue,
        };
        g.apply(&op).unwrap();
        ops.push(op);
    }
    (g0, ops)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_hold_after_every_edit(n in 0usize..12, choices in prop::collection::vec((any::<u8>(), any::<u32>(), any::<u32>()), 0..400)) {
        let (g0, ops) = mixed_ops(n, &choices);
        let mut g = g0.clone();
        for op in &ops {
            g = apply_edit(&g, op).unwrap();
            prop_assert_eq!(g.check_invariants(), Ok(()));
        }
    }

    #[test]
    fn reverting_restores_the_start(n in 0usize..12, choices in prop::collection::vec((any::<u8>(), any::<u32>(), any::<u32>()), 0..300)) {
        let (g0, ops) = mixed_ops(n, &choices);
        let mut g = g0.clone();
        for op in &ops {
            g.apply(op).unwrap();
        }
        for op in ops.iter().rev() {
            g.revert(op).unwrap();
        }
        prop_assert_eq!(
            g.vertices().collect::<Vec<_>>(),
            g0.vertices().collect::<Vec<_>>()
        );
        prop_assert_eq!(g.edge_count(), 0);
        prop_assert_eq!(g.next_vertex_id(), g0.next_vertex_id());
    }

    #[test]
    fn edge_by_edge_replays_target(n in 1usize..16, p in 0.0f64..1.0, seed: u64, order: u64) {
        let target = random_graph(n, p, seed);
        let script = build_script_edge_by_edge(&target, order);
        prop_assert_eq!(script.initial_n, n);
        prop_assert_eq!(script.len(), target.edge_count());
        prop_assert!(script.ops.iter().all(|op| matches!(op, EditOp::AddEdge(..))));
        let g = script.replay().unwrap();
        prop_assert_eq!(g.edges().collect::<Vec<_>>(), target.edges().collect::<Vec<_>>());
    }

    #[test]
    fn files_round_trip(n in 1usize..15, p in 0.0f64..1.0, seed: u64) {
        let g = random_graph(n, p, seed);
        let text = write_graph(&g).unwrap();
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
        let s = churn_script(n.max(2), 50, 0.6, seed).unwrap();
        prop_assert_eq!(parse_script(&write_script(&s)).unwrap(), s);
    }

    #[test]
    fn distance_matches_reference(n in 1usize..14, p in 0.0f64..0.5, seed: u64, src: u32, dst: u32) {
        let g = random_graph(n, p, seed);
        let s = VertexId(src % n as u32);
        let t = VertexId(dst % n as u32);
        let expect = common::bfs(&g, &[s]).get(&t).copied();
        prop_assert_eq!(distance_from(&g, &BTreeSet::from([s]), t).unwrap(), expect);
    }
}

#[test]
fn ten_thousand_mixed_ops() {
    let choices: Vec<(u8, u32, u32)> = (0..12_000u32)
        .map(|i| {
            let h = i.wrapping_mul(2_654_435_761);
            ((h >> 24) as u8, h, h.rotate_left(11))
        })
        .collect();
    let (g0, ops) = mixed_ops(15, &choices);
    assert!(ops.len() >= 10_000, "only {} ops", ops.len());
    let mut g = g0;
    for op in &ops {
        g.apply(op).unwrap();
        g.check_invariants().unwrap();
    }
}

#[test]
fn churn_prefixes_are_valid_scripts() {
    let s = churn_script(10, 1000, 0.5, 7).unwrap();
    assert_eq!(s, churn_script(10, 1000, 0.5, 7).unwrap());
    let mut g = s.initial_graph();
    for op in &s.ops {
        g.apply(op).unwrap();
    }
    assert_eq!(
        churn_script(2, 1, 1.0, 3).unwrap().ops,
        vec![EditOp::add_edge(0, 1)]
    );
}

#[test]
fn churn_degenerate_inputs() {
    assert!(churn_script(1, 1, 0.5, 0).is_err());
    assert!(churn_script(1, 0, 0.5, 0).is_ok());
    assert!(churn_script(5, 10, 1.5, 0).is_err());
}

#[test]
fn path_scripts_differ_only_in_order() {
    let path = DynamicGraph::from_edges(3, &[(0, 1), (1, 2)]);
    let sort = |s: EditScript| {
        let mut ops: Vec<String> = s.ops.iter().map(|o| o.to_string()).collect();
        ops.sort();
        ops
    };
    assert_eq!(
        sort(build_script_edge_by_edge(&path, 0)),
        sort(build_script_edge_by_edge(&path, 1))
    );
}

#[test]
fn tracked_view_logs_only_queries() {
    let g = DynamicGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3)]);
    let view = TrackedGraphView::new(&g);
    assert!(view.read_log().is_empty());
    view.degree(VertexId(2));
    view.has_edge(VertexId(0), VertexId(1));
    assert_eq!(
        view.read_log(),
        [0, 1, 2].map(VertexId).into_iter().collect()
    );
    view.reset();
    assert_eq!(view.neighbors(VertexId(1)), vec![VertexId(0), VertexId(2)]);
    assert_eq!(view.read_log(), BTreeSet::from([VertexId(1)]));
    assert_eq!(view.query_work(), 3);
}
