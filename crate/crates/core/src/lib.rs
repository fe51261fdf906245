//! Solution maintenance on dynamic graphs: instrumented replay of edit
//! scripts, a 1-local vertex cover maintainer, exact oracles, divergence
//! experiments, and the gadget reduction to regular-subgraph deletion.

pub mod baselines;
pub mod batch;
pub mod divergence;
pub mod graph;
pub mod io;
pub mod maintenance;
pub mod reduction;
pub mod vc_maintainer;

pub use graph::{DynamicGraph, EditOp, EditScript, GraphError, VertexId};
pub use maintenance::{run, Maintainer, Oracle, RunOptions, RunReport};
