use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::Serialize;

use super::{compute_r, ReductionError, SrmcInstance};
use crate::graph::{DynamicGraph, VertexId};

/// Approximation budget `g(k) = a*k + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ApproxBudget {
    pub a: usize,
    pub b: usize,
}

impl ApproxBudget {
    pub const IDENTITY: ApproxBudget = ApproxBudget { a: 1, b: 0 };

    pub fn new(a: usize, b: usize) -> Result<Self, ReductionError> {
        if a == 0 {
            return Err(ReductionError::InfeasibleParameters(
                "approximation budget needs a >= 1 so that g(k) >= k".into(),
            ));
        }
        Ok(Self { a, b })
    }

    pub fn eval(&self, k: usize) -> usize {
        self.a * k + self.b
    }
}

impl Default for ApproxBudget {
    fn default() -> Self {
        Self::IDENTITY
    }
}

/// What a vertex of the constructed graph stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "kebab-case")]
pub enum Role {
    /// Copy of source vertex `original` in class `class`.
    ClassCopy { class: usize, original: u32 },
    /// Half of the couple encoding source edge `edge` between classes
    /// `i < j`; hangs off the copy of `base`, one of the edge's endpoints.
    Pair {
        i: usize,
        j: usize,
        edge: (u32, u32),
        base: u32,
    },
    /// Degree padding for class copy `class`.
    PaddingClass { class: usize },
    /// Degree padding for the `side` half of the pair gadget between `i < j`.
    PaddingPair { i: usize, j: usize, side: usize },
    /// Member of a broken clique raising the degree of `owner`.
    FillerClique { owner: VertexId },
}

impl Role {
    pub fn is_filler(&self) -> bool {
        matches!(self, Role::FillerClique { .. })
    }

    pub fn is_padding(&self) -> bool {
        matches!(self, Role::PaddingClass { .. } | Role::PaddingPair { .. })
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::ClassCopy { class, original } => write!(f, "class-copy {class} {original}"),
            Role::Pair { i, j, edge, base } => {
                write!(f, "pair {i} {j} {} {} {base}", edge.0, edge.1)
            }
            Role::PaddingClass { class } => write!(f, "padding-v2 {class}"),
            Role::PaddingPair { i, j, side } => write!(f, "padding-p2 {i} {j} {side}"),
            Role::FillerClique { owner } => write!(f, "filler-clique {owner}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub source: SrmcInstance,
    pub graph: DynamicGraph,
    /// Deletions a yes-instance needs: one class copy per class and both
    /// halves of one couple per class pair, `k + 2·C(k,2)`.
    pub k_prime: usize,
    pub regular_degree: usize,
    pub budget: ApproxBudget,
    /// Role of vertex `v`, indexed by `v`.
    pub provenance: Vec<Role>,
    /// Total filler-clique vertices hanging off each padding vertex.
    pub filler_mass: Vec<(VertexId, usize)>,
}

impl ReductionInstance {
    pub fn role(&self, v: VertexId) -> Role {
        self.provenance[v.index()]
    }

    /// Deletion set encoding a multicoloured clique: its class copies plus,
    /// for each pair of classes, the couple of the edge between them.
    pub fn selection_for(&self, clique: &[u32]) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<VertexId> = clique.iter().map(|&v| VertexId(v)).collect();
        let picked: BTreeSet<u32> = clique.iter().copied().collect();
        for (id, role) in self.provenance.iter().enumerate() {
            if let Role::Pair { edge, .. } = role {
                if picked.contains(&edge.0) && picked.contains(&edge.1) {
                    out.insert(VertexId(id as u32));
                }
            }
        }
        out
    }
}

/// Vertex-count bookkeeping during construction.
struct Builder {
    g: DynamicGraph,
    roles: Vec<Role>,
}

impl Builder {
    fn vertex(&mut self, role: Role) -> VertexId {
        let v = self.g.add_fresh_vertex();
        debug_assert_eq!(v.index(), self.roles.len());
        self.roles.push(role);
        v
    }

    fn edge(&mut self, u: VertexId, v: VertexId) {
        self.g.add_edge(u, v).expect("gadget edges are fresh");
    }

    /// Clique on `size` fresh filler vertices owned by `owner`.
    fn clique(&mut self, size: usize, owner: VertexId) -> Vec<VertexId> {
        let vs: Vec<VertexId> = (0..size)
            .map(|_| self.vertex(Role::FillerClique { owner }))
            .collect();
        for a in 0..size {
            for b in a + 1..size {
                self.edge(vs[a], vs[b]);
            }
        }
        vs
    }
}

/// Builds the regular-subgraph deletion instance `(G', k')` for `inst`.
///
/// Labels are laid out as: class copies (same labels as the source), pair
/// vertices, class padding, pair padding, then filler cliques.
pub fn reduce(inst: &SrmcInstance, budget: ApproxBudget) -> Result<ReductionInstance, ReductionError> {
    inst.validate()?;
    let (k, s, d) = (inst.k, inst.s, inst.d);
    let r = compute_r(k, s, d)?;
    let k_prime = k + k * (k - 1);
    let mut b = Builder {
        g: DynamicGraph::new(),
        roles: Vec::new(),
    };

    for i in 0..k {
        for original in inst.class(i) {
            b.vertex(Role::ClassCopy { class: i, original });
        }
    }
    for i in 0..k {
        let class: Vec<u32> = inst.class(i).collect();
        for (x, &u) in class.iter().enumerate() {
            for &v in &class[x + 1..] {
                b.edge(VertexId(u), VertexId(v));
            }
        }
    }

    // sides[(i, j)] = (side-i pair vertices, side-j pair vertices)
    let mut sides = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut side_i = Vec::new();
            let mut side_j = Vec::new();
            for &(u, v) in &inst.edges {
                if inst.class_of(u) != i || inst.class_of(v) != j {
                    continue;
                }
                let pu = b.vertex(Role::Pair { i, j, edge: (u, v), base: u });
                let pv = b.vertex(Role::Pair { i, j, edge: (u, v), base: v });
                b.edge(VertexId(u), pu);
                b.edge(pu, pv);
                b.edge(VertexId(v), pv);
                side_i.push(pu);
                side_j.push(pv);
            }
            for side in [&side_i, &side_j] {
                for (x, &p) in side.iter().enumerate() {
                    for &q in &side[x + 1..] {
                        if base_of(&b.roles, p) != base_of(&b.roles, q) {
                            b.edge(p, q);
                        }
                    }
                }
            }
            sides.push(((i, j), side_i, side_j));
        }
    }

    let class_pad = (r + 1)
        .checked_sub((s - 1) + d * (k - 1))
        .filter(|&c| c > 0)
        .ok_or_else(|| ReductionError::InfeasibleParameters("no room for class padding".into()))?;
    let pair_pad = (r - 1)
        .checked_sub((s - 1) * d)
        .filter(|&c| c > 0)
        .ok_or_else(|| ReductionError::InfeasibleParameters("no room for pair padding".into()))?;

    let mut padding = Vec::new();
    for i in 0..k {
        for _ in 0..class_pad {
            let p = b.vertex(Role::PaddingClass { class: i });
            for u in inst.class(i) {
                b.edge(p, VertexId(u));
            }
            padding.push(p);
        }
    }
    for ((i, j), side_i, side_j) in &sides {
        for (side, members) in [(*i, side_i), (*j, side_j)] {
            for _ in 0..pair_pad {
                let p = b.vertex(Role::PaddingPair { i: *i, j: *j, side });
                for &q in members {
                    b.edge(p, q);
                }
                padding.push(p);
            }
        }
    }

    let clique_size = r + 1;
    let mass_target = budget.eval(k_prime) + 1;
    let mut filler_mass = Vec::with_capacity(padding.len());
    for &p in &padding {
        let deficit = (r + 1).checked_sub(b.g.degree(p)).ok_or_else(|| {
            ReductionError::InfeasibleParameters(format!(
                "padding vertex {p} already has degree {} > r + 1 = {}",
                b.g.degree(p),
                r + 1
            ))
        })?;
        if deficit % 2 == 1 {
            return Err(ReductionError::InfeasibleParameters(format!(
                "padding vertex {p} has odd degree deficit {deficit}"
            )));
        }
        let mut last = None;
        let mut mass = 0;
        for _ in 0..deficit / 2 {
            let c = b.clique(clique_size, p);
            b.g.remove_edge(c[0], c[1]).unwrap();
            b.edge(c[0], p);
            b.edge(c[1], p);
            mass += clique_size;
            last = Some(c);
        }
        // grow a chain off the last attached clique until the mass target is met
        while let Some(old) = last.as_ref().filter(|_| mass < mass_target) {
            let (x, y) = (old[2], old[3]);
            let c = b.clique(clique_size, p);
            b.g.remove_edge(x, y).unwrap();
            b.g.remove_edge(c[0], c[1]).unwrap();
            b.edge(x, c[0]);
            b.edge(y, c[1]);
            mass += clique_size;
            last = Some(c);
        }
        filler_mass.push((p, mass));
    }

    Ok(ReductionInstance {
        source: inst.clone(),
        graph: b.g,
        k_prime,
        regular_degree: r,
        budget,
        provenance: b.roles,
        filler_mass,
    })
}

fn base_of(roles: &[Role], v: VertexId) -> u32 {
    match roles[v.index()] {
        Role::Pair { base, .. } => base,
        other => panic!("{v} is not a pair vertex: {other}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeAudit {
    pub ok: bool,
    /// Vertices whose degree is off: `(vertex, degree, expected)`.
    pub violations: Vec<(VertexId, usize, usize)>,
}

/// Filler vertices must have degree `r`, every other vertex `r + 1`.
pub fn degree_audit(red: &ReductionInstance) -> DegreeAudit {
    let r = red.regular_degree;
    let violations: Vec<_> = red
        .graph
        .vertices()
        .filter_map(|v| {
            let want = if red.role(v).is_filler() { r } else { r + 1 };
            let got = red.graph.degree(v);
            (got != want).then_some((v, got, want))
        })
        .collect();
    DegreeAudit {
        ok: violations.is_empty(),
        violations,
    }
}

/// Provenance sidecar: one line `id role fields...` per vertex.
pub fn write_provenance(red: &ReductionInstance) -> String {
    let mut out = String::new();
    for (id, role) in red.provenance.iter().enumerate() {
        writeln!(out, "{id} {role}").unwrap();
    }
    out
}
