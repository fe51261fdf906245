use std::collections::BTreeSet;

use rand::seq::{index::sample, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{compute_r, ReductionError};
use crate::graph::DynamicGraph;

/// `k` colour classes of `s` vertices each; class `i` holds labels
/// `i*s .. (i+1)*s`. Every vertex has exactly `d` neighbours in each other
/// class and none in its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrmcInstance {
    pub k: usize,
    pub s: usize,
    pub d: usize,
    /// Cross-class edges `(u, v)` with `u < v`.
    pub edges: BTreeSet<(u32, u32)>,
    /// One vertex per class forming a multicoloured clique, if one was planted.
    pub planted: Option<Vec<u32>>,
}

impl SrmcInstance {
    /// Validates and wraps a hand-built instance.
    pub fn new(k: usize, s: usize, d: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, ReductionError> {
        let edges: BTreeSet<(u32, u32)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        let inst = Self {
            k,
            s,
            d,
            edges,
            planted: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn class_of(&self, v: u32) -> usize {
        v as usize / self.s
    }

    pub fn class(&self, i: usize) -> std::ops::Range<u32> {
        (i * self.s) as u32..((i + 1) * self.s) as u32
    }

    pub fn classes(&self) -> Vec<std::ops::Range<u32>> {
        (0..self.k).map(|i| self.class(i)).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.k * self.s
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.contains(&e)
    }

    pub fn graph(&self) -> DynamicGraph {
        let edges: Vec<(u32, u32)> = self.edges.iter().copied().collect();
        DynamicGraph::from_edges(self.vertex_count(), &edges)
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        let n = self.vertex_count() as u32;
        let mut per_class = vec![vec![0usize; self.k]; n as usize];
        for &(u, v) in &self.edges {
            if v >= n {
                return Err(ReductionError::NotRegular(format!("edge ({u},{v}) leaves 0..{n}")));
            }
            let (cu, cv) = (self.class_of(u), self.class_of(v));
            if cu == cv {
                return Err(ReductionError::NotRegular(format!(
                    "edge ({u},{v}) lies inside class {cu}"
                )));
            }
            per_class[u as usize][cv] += 1;
            per_class[v as usize][cu] += 1;
        }
        for v in 0..n {
            let own = self.class_of(v);
            for (j, &c) in per_class[v as usize].iter().enumerate() {
                if j != own && c != self.d {
                    return Err(ReductionError::NotRegular(format!(
                        "vertex {v} has {c} neighbours in class {j}, expected {}",
                        self.d
                    )));
                }
            }
        }
        Ok(())
    }

    /// True if `pick` holds one vertex per class, pairwise adjacent.
    pub fn is_multicolored_clique(&self, pick: &[u32]) -> bool {
        pick.len() == self.k
            && pick
                .iter()
                .enumerate()
                .all(|(i, &v)| self.class_of(v) == i)
            && pick
                .iter()
                .enumerate()
                .all(|(a, &u)| pick[a + 1..].iter().all(|&v| self.adjacent(u, v)))
    }
}

/// Random instance whose bipartite graph between each class pair is a union
/// of `d` edge-disjoint perfect matchings.
///
/// The matchings are shifted copies `x -> tau[(rho[x] + c_t) mod s]` for
/// distinct offsets `c_t`, so they never share an edge. When `planted`, one
/// vertex per class is chosen and `tau` is adjusted so the first matching of
/// every pair joins the two chosen vertices.
pub fn gen_srmc(k: usize, s: usize, d: usize, seed: u64, planted: bool) -> Result<SrmcInstance, ReductionError> {
    compute_r(k, s, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen: Option<Vec<usize>> = planted.then(|| (0..k).map(|_| rng.gen_range(0..s)).collect());
    let mut edges = BTreeSet::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut rho: Vec<usize> = (0..s).collect();
            let mut tau: Vec<usize> = (0..s).collect();
            rho.shuffle(&mut rng);
            tau.shuffle(&mut rng);
            let offsets: Vec<usize> = sample(&mut rng, s, d).into_vec();
            if let Some(p) = &chosen {
                let slot = (rho[p[i]] + offsets[0]) % s;
                let at = tau.iter().position(|&x| x == p[j]).unwrap();
                tau.swap(slot, at);
            }
            for &c in &offsets {
                for x in 0..s {
                    let y = tau[(rho[x] + c) % s];
                    edges.insert(((i * s + x) as u32, (j * s + y) as u32));
                }
            }
        }
    }
    let inst = SrmcInstance {
        k,
        s,
        d,
        edges,
        planted: chosen.map(|p| p.iter().enumerate().map(|(i, &x)| (i * s + x) as u32).collect()),
    };
    inst.validate()
        .map_err(|e| ReductionError::InfeasibleParameters(e.to_string()))?;
    Ok(inst)
}

/// Search space cap for [`find_clique`], in candidate tuples.
pub const CLIQUE_BUDGET: f64 = 1e7;

/// Lexicographically first multicoloured `k`-clique, by backtracking over the
/// class cross product.
pub fn find_clique(inst: &SrmcInstance) -> Result<Option<Vec<u32>>, ReductionError> {
    let space = (inst.s as f64).powi(inst.k as i32);
    if space > CLIQUE_BUDGET {
        return Err(ReductionError::BudgetExceeded(format!(
            "s^k = {space} candidate tuples exceeds {CLIQUE_BUDGET}"
        )));
    }
    fn extend(inst: &SrmcInstance, pick: &mut Vec<u32>) -> bool {
        let i = pick.len();
        if i == inst.k {
            return true;
        }
        for v in inst.class(i) {
            if pick.iter().all(|&u| inst.adjacent(u, v)) {
                pick.push(v);
                if extend(inst, pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    let mut pick = Vec::with_capacity(inst.k);
    Ok(extend(inst, &mut pick).then_some(pick))
}
