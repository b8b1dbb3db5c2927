//! Exact solvers for the partition matroid interdiction problem.
//!
//! A leader and a follower share a weighted ground set, each with their own
//! partition matroid. The leader blocks an independent set first; the
//! follower then collects a maximum-weight independent set among the
//! unblocked elements; the leader wants that value small. This crate ships:
//!
//! - the validated data model and the follower's exact best response
//!   ([`model`]),
//! - two brute-force oracles used as ground truth ([`oracle`]),
//! - a duality-based exact solver, polynomial for a fixed number of follower
//!   groups and usable with arbitrary leader matroids ([`dual`]),
//! - a dynamic-programming exact solver, polynomial for a fixed number of
//!   leader groups ([`dp`]),
//! - a greedy heuristic that is provably exact for a single follower group
//!   with distinct weights ([`greedy`]),
//! - instance generators, including the independent-set hardness reduction
//!   ([`generator`], [`reduction`]),
//! - JSON/graph file formats and an LP-format single-level export
//!   ([`format`], [`ilp`]).
//!
//! All solver arithmetic is exact: rational weights are scaled once to a
//! common integer grid and every comparison is integer equality.

pub mod dp;
pub mod dual;
pub mod error;
pub mod format;
pub mod generator;
pub mod graph;
pub mod greedy;
pub mod ilp;
pub mod matroid;
pub mod model;
pub mod oracle;
pub mod reduction;
pub mod samples;
mod weight;

pub use dp::{solve_dp, solve_dp_detailed, DpConfig, DpSolution, DpState, DpStats, StageAction};
pub use dual::{
    dual_expr, dual_inner_value, solve_dual, solve_dual_detailed, BreakpointVector, DualConfig,
    DualSolution, DualStats,
};
pub use error::{Error, Result};
pub use format::{parse_graph, parse_instance, serialize_graph, serialize_instance};
pub use generator::{gen_random, GenParams};
pub use graph::Graph;
pub use greedy::{
    greedy_gap_family, solve_greedy, solve_greedy_with, GapPoint, GreedySolution, TieBreak,
};
pub use ilp::export_ilp;
pub use matroid::{max_weight_independent_set, Matroid, PartitionMatroid, TesterMatroid};
pub use model::{
    follower_best_response, marginal_decrease, psi, sort_weights, validate_instance,
    BlockingDecision, FollowerResponse, Instance, MarginalIndex, RawInstance, RawWeight,
    SolveResult, SolverKind, SortedInstance,
};
pub use oracle::{
    mis_brute_force, solve_oracle_full, solve_oracle_leader, MisResult, OracleConfig,
};
pub use reduction::{pair_index, reduce_mis, ReducedInstance};
pub use weight::Weight;
