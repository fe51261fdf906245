//! Independent runs fanned out over a thread pool. With the `parallel`
//! feature off everything runs on the calling thread, in input order.

use serde::Serialize;

use crate::baselines::VcExactOracle;
use crate::graph::churn_script;
use crate::maintenance::{run, RunOptions};
use crate::reduction::{
    equivalence_check, gen_srmc, ApproxBudget, EquivalenceReport, ReductionError,
};
use crate::vc_maintainer::VcMatching;

/// Applies `f` to every item. Output order matches input order either way.
#[cfg(feature = "parallel")]
pub fn map_batch<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_batch<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    map_batch_sequential(items, f)
}

pub fn map_batch_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChurnJob {
    pub n: usize,
    pub steps: usize,
    pub p_add: f64,
    pub seed: u64,
    /// Ask the exact vertex cover oracle at every step.
    pub with_oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChurnSummary {
    pub seed: u64,
    pub steps: usize,
    pub final_size: usize,
    pub max_work: usize,
    /// `None` if some touched vertex was unreachable from the edit site.
    pub max_radius: Option<usize>,
    /// Largest `γ/γ*` as `"p/q"`, when the oracle ran.
    pub max_ratio: Option<String>,
}

/// Drives the matching-based vertex cover maintainer over one churn script.
pub fn churn_job(job: &ChurnJob) -> Result<ChurnSummary, String> {
    let script = churn_script(job.n, job.steps, job.p_add, job.seed).map_err(|e| e.to_string())?;
    let oracle = VcExactOracle::default();
    let mut m = VcMatching::new();
    let report = run(
        &script.initial_graph(),
        &script,
        &mut m,
        job.with_oracle.then_some(&oracle as _),
        RunOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    Ok(ChurnSummary {
        seed: job.seed,
        steps: report.steps.len(),
        final_size: report.final_solution.size(),
        max_work: report.max_work,
        max_radius: match report.max_locality {
            crate::maintenance::Radius::Hops(h) => Some(h),
            crate::maintenance::Radius::Unreachable => None,
        },
        max_ratio: report.max_ratio.map(|r| r.to_string()),
    })
}

pub fn churn_batch(jobs: &[ChurnJob]) -> Vec<Result<ChurnSummary, String>> {
    map_batch(jobs, churn_job)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridCase {
    pub k: usize,
    pub s: usize,
    pub d: usize,
    pub seed: u64,
    pub planted: bool,
}

/// Every combination of the given parameters, planted and unplanted.
pub fn grid(ks: &[usize], ss: &[usize], ds: &[usize], seeds: std::ops::Range<u64>) -> Vec<GridCase> {
    let mut out = Vec::new();
    for &k in ks {
        for &s in ss {
            for &d in ds {
                for seed in seeds.clone() {
                    for planted in [true, false] {
                        out.push(GridCase {
                            k,
                            s,
                            d,
                            seed,
                            planted,
                        });
                    }
                }
            }
        }
    }
    out
}

pub fn grid_case(c: &GridCase) -> Result<EquivalenceReport, ReductionError> {
    let inst = gen_srmc(c.k, c.s, c.d, c.seed, c.planted)?;
    equivalence_check(&inst, ApproxBudget::IDENTITY)
}

pub fn reduction_grid(cases: &[GridCase]) -> Vec<Result<EquivalenceReport, ReductionError>> {
    map_batch(cases, grid_case)
}
