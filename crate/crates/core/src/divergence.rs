//! Adversarial edit sequences that push a bounded maintainer's ratio up, and
//! exact checks of the divergence bounds they realise.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::baselines::{DsExactOracle, DsShrink, StarAnalyticOracle};
use crate::graph::{DynamicGraph, EditOp, EditScript, VertexId};
use crate::maintenance::{
    classify_step, run, RatioError, RunError, RunOptions, RunReport, StepClass,
};

#[derive(Debug, Error)]
pub enum DivergenceError {
    #[error("star needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Ratio(#[from] RatioError),
    #[error(transparent)]
    Run(#[from] RunError),
    #[error("invalid parameters: {0}")]
    Parameters(String),
}

/// Edgeless start on `n` vertices plus the `n - 1` edges of a star centred
/// at vertex 0 (the smallest label, so the shrink rule drops it first).
pub fn star_script(n: usize) -> Result<(DynamicGraph, EditScript, VertexId), DivergenceError> {
    if n < 3 {
        return Err(DivergenceError::TooSmall(n));
    }
    let ops = (1..n as u32).map(|leaf| EditOp::add_edge(0, leaf)).collect();
    Ok((
        DynamicGraph::edgeless(n),
        EditScript { initial_n: n, ops },
        VertexId(0),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRow {
    pub step: usize,
    pub gamma: usize,
    pub gamma_opt: usize,
    pub class: StepClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivergenceReport {
    pub rows: Vec<StepRow>,
    pub divergent_steps: usize,
    pub initial_size: usize,
    pub initial_opt: usize,
    pub final_size: usize,
    pub final_opt: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub final_ratio: Ratio<u64>,
    #[serde(serialize_with = "ser_ratio")]
    pub bound_rhs: Ratio<u64>,
    pub bound_holds: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Counts divergent steps and checks `γ/γ* >= 1 + d/γ*` at the end of the run.
pub fn analyze_divergence(run: &RunReport) -> Result<DivergenceReport, DivergenceError> {
    let initial_opt = run.initial_optimum.ok_or(RatioError::MissingOracle(0))?;
    let mut prev = (run.initial_size, initial_opt);
    let mut rows = Vec::with_capacity(run.steps.len());
    for s in &run.steps {
        let opt = s
            .optimum_size
            .ok_or(RatioError::MissingOracle(s.step_index))?;
        let class = classify_step(prev.0, s.solution_size, prev.1, opt);
        rows.push(StepRow {
            step: s.step_index,
            gamma: s.solution_size,
            gamma_opt: opt,
            class,
        });
        prev = (s.solution_size, opt);
    }
    let (final_size, final_opt) = prev;
    if final_opt == 0 {
        return Err(RatioError::Unbounded(run.steps.len()).into());
    }
    let divergent_steps = rows
        .iter()
        .filter(|r| r.class == StepClass::Divergent)
        .count();
    let final_ratio = Ratio::new(final_size as u64, final_opt as u64);
    let bound_rhs = Ratio::from_integer(1) + Ratio::new(divergent_steps as u64, final_opt as u64);
    Ok(DivergenceReport {
        rows,
        divergent_steps,
        initial_size: run.initial_size,
        initial_opt,
        final_size,
        final_opt,
        final_ratio,
        bound_holds: final_ratio >= bound_rhs,
        bound_rhs,
    })
}

/// Ratio after one divergent step from `γ = A·γ*` that adds one vertex while
/// the optimum stays put: `A + 1/γ*`.
pub fn single_step_ratio(a: Ratio<u64>, opt: u64) -> Ratio<u64> {
    assert!(opt >= 1, "optimum must be positive");
    a + Ratio::new(1, opt)
}

/// Runs the shrink maintainer over the star on `n` vertices with the
/// analytic star oracle.
pub fn star_experiment(n: usize) -> Result<(RunReport, DivergenceReport), DivergenceError> {
    let (g0, script, _) = star_script(n)?;
    let mut m = DsShrink::new();
    let report = run(&g0, &script, &mut m, Some(&StarAnalyticOracle), RunOptions::default())?;
    let div = analyze_divergence(&report)?;
    Ok((report, div))
}

/// An instance and script for the shrink maintainer that reaches
/// `γ = A·γ*` with `γ* = opt` and then takes exactly one divergent step.
///
/// The graph is a disjoint union of a triangle and `opt - 1` adversarial
/// stars. The triangle is built so only its middle vertex stays a member;
/// deleting one of its edges strands a non-member, which rejoins while the
/// optimum stays 1. Returns the start graph and the script; the divergent
/// step is the last op.
pub fn single_step_witness(a: Ratio<u64>, opt: u64) -> Result<(DynamicGraph, EditScript), DivergenceError> {
    if opt == 0 || a < Ratio::from_integer(1) {
        return Err(DivergenceError::Parameters(format!(
            "need A >= 1 and optimum >= 1, got A = {a}, optimum = {opt}"
        )));
    }
    let target = a * Ratio::from_integer(opt);
    if !target.is_integer() {
        return Err(DivergenceError::Parameters(format!(
            "A * optimum = {target} is not an integer solution size"
        )));
    }
    let total_leaves = target.to_integer() - 1;
    let stars = opt - 1;
    let mut leaves_per_star = vec![0u64; stars as usize];
    if stars > 0 {
        for i in 0..total_leaves {
            leaves_per_star[(i % stars) as usize] += 1;
        }
    } else if total_leaves != 0 {
        return Err(DivergenceError::Parameters(
            "with optimum 1 only A = 1 is reachable".into(),
        ));
    }

    let mut ops = vec![
        EditOp::add_edge(0, 1),
        EditOp::add_edge(1, 2),
        EditOp::add_edge(0, 2),
    ];
    let mut next = 3u32;
    for &leaves in &leaves_per_star {
        let centre = next;
        for l in 1..=leaves as u32 {
            ops.push(EditOp::add_edge(centre, centre + l));
        }
        next = centre + leaves as u32 + 1;
    }
    ops.push(EditOp::del_edge(1, 2));
    let n = next as usize;
    Ok((DynamicGraph::edgeless(n), EditScript { initial_n: n, ops }))
}

/// Runs [`single_step_witness`] through the shrink maintainer with the exact
/// dominating-set oracle.
pub fn single_step_experiment(a: Ratio<u64>, opt: u64) -> Result<RunReport, DivergenceError> {
    let (g0, script) = single_step_witness(a, opt)?;
    let mut m = DsShrink::new();
    Ok(run(
        &g0,
        &script,
        &mut m,
        Some(&DsExactOracle::default()),
        RunOptions::default(),
    )?)
}

/// Human-readable step table.
pub fn render_table(report: &DivergenceReport) -> String {
    let mut out = format!("{:>6} {:>6} {:>6}  class\n", "step", "gamma", "opt");
    out.push_str(&format!(
        "{:>6} {:>6} {:>6}  -\n",
        0, report.initial_size, report.initial_opt
    ));
    for r in &report.rows {
        let class = match r.class {
            StepClass::Divergent => "divergent",
            StepClass::Other => "other",
        };
        out.push_str(&format!(
            "{:>6} {:>6} {:>6}  {class}\n",
            r.step, r.gamma, r.gamma_opt
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, d: u64) -> Ratio<u64> {
        Ratio::new(n, d)
    }

    #[test]
    fn star_script_shapes() {
        let (_, s, c) = star_script(3).unwrap();
        assert_eq!(c, VertexId(0));
        assert_eq!(s.ops, vec![EditOp::add_edge(0, 1), EditOp::add_edge(0, 2)]);
        let (_, s, _) = star_script(10).unwrap();
        assert_eq!(s.ops.len(), 9);
        let g = s.replay().unwrap();
        assert_eq!(g.degree(VertexId(0)), 9);
        assert!((1..10).all(|l| g.degree(VertexId(l)) == 1));
        assert!(matches!(star_script(2), Err(DivergenceError::TooSmall(2))));
    }

    #[test]
    fn star_ten() {
        let (_, d) = star_experiment(10).unwrap();
        assert_eq!(d.final_size, 9);
        assert_eq!(d.final_opt, 1);
        assert_eq!(d.divergent_steps, 8);
        assert_eq!(d.bound_rhs, q(9, 1));
        assert!(d.bound_holds);
        assert_eq!(d.rows[0].class, StepClass::Other);
    }

    #[test]
    fn star_four_is_tight() {
        let (_, d) = star_experiment(4).unwrap();
        assert_eq!((d.final_size, d.final_opt, d.divergent_steps), (3, 1, 2));
        assert_eq!(d.bound_rhs, q(3, 1));
        assert_eq!(d.final_ratio, d.bound_rhs);
        assert!(d.bound_holds);
    }

    #[test]
    fn single_step_values() {
        assert_eq!(single_step_ratio(q(2, 1), 5), q(11, 5));
        assert_eq!(single_step_ratio(q(1, 1), 1), q(2, 1));
        assert_eq!(single_step_ratio(q(3, 2), 4), q(7, 4));
    }

    #[test]
    fn witness_rejects_unreachable_parameters() {
        assert!(single_step_witness(q(3, 2), 1).is_err());
        assert!(single_step_witness(q(1, 2), 4).is_err());
        assert!(single_step_witness(q(2, 1), 0).is_err());
    }

    #[test]
    fn witness_hits_target_then_diverges() {
        for (a, opt) in [(q(2, 1), 5), (q(1, 1), 1), (q(3, 1), 2), (q(3, 2), 4)] {
            let r = single_step_experiment(a, opt).unwrap();
            let n = r.steps.len();
            let before = &r.steps[n - 2];
            let after = &r.steps[n - 1];
            assert_eq!(before.optimum_size, Some(opt as usize));
            assert_eq!(
                Ratio::new(before.solution_size as u64, opt),
                a,
                "A = {a}, opt = {opt}"
            );
            assert_eq!(
                classify_step(
                    before.solution_size,
                    after.solution_size,
                    opt as usize,
                    after.optimum_size.unwrap()
                ),
                StepClass::Divergent
            );
            assert_eq!(
                Ratio::new(after.solution_size as u64, after.optimum_size.unwrap() as u64),
                single_step_ratio(a, opt)
            );
        }
    }
}
