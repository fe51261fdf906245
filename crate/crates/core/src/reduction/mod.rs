//! Gadget reduction from Strongly Regular Multicolored Clique to
//! (approximate) Vertex Deletion to Regular Subgraph, with brute-force
//! oracles for both sides.

mod gadget;
mod srmc;
mod verify;

pub use gadget::{
    degree_audit, reduce, write_provenance, ApproxBudget, DegreeAudit, ReductionInstance, Role,
};
pub use srmc::{find_clique, gen_srmc, SrmcInstance};
pub use verify::{
    decode_witness, equivalence_check, verify_deletion, verify_deletion_with_budget,
    EquivalenceReport, DEFAULT_DELETION_BUDGET,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("class size s = {0} is odd; only even class sizes are supported")]
    OddClassSize(usize),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("instance is not strongly regular: {0}")]
    NotRegular(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// Smallest `r > max{(s-1) + d(k-1), 2 + (s-1)d}` whose parity differs from `s`.
pub fn compute_r(k: usize, s: usize, d: usize) -> Result<usize, ReductionError> {
    if k < 2 {
        return Err(ReductionError::InfeasibleParameters(format!(
            "need k >= 2, got {k}"
        )));
    }
    if s < 2 {
        return Err(ReductionError::InfeasibleParameters(format!(
            "need s >= 2, got {s}"
        )));
    }
    if s % 2 == 1 {
        return Err(ReductionError::OddClassSize(s));
    }
    if d == 0 || d > s {
        return Err(ReductionError::InfeasibleParameters(format!(
            "need 1 <= d <= s, got d = {d}, s = {s}"
        )));
    }
    let floor = ((s - 1) + d * (k - 1)).max(2 + (s - 1) * d);
    let mut r = floor + 1;
    if r % 2 == s % 2 {
        r += 1;
    }
    Ok(r)
}
