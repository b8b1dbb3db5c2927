//! Leader-side greedy heuristic.
//!
//! Starts from the empty blocking decision and repeatedly adds the element
//! with the steepest marginal decrease of the follower's value, as long as
//! the leader matroid permits. With a single follower capacity constraint and
//! distinct weights this is exact (for any leader matroid); with two or more
//! follower groups it can be arbitrarily far from the optimum, which
//! [`greedy_gap_family`] demonstrates on a worst-case family.

use crate::dual::solve_dual;
use crate::matroid::{Matroid, PartitionMatroid};
use crate::model::{
    BlockingDecision, MarginalIndex, SolveResult, SolverKind, SortedInstance,
};
use crate::samples::example1_instance;

/// How to resolve ties between equally steep marginals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Prefer the larger weight, then the smaller original index. With one
    /// follower group this blocks the elements the follower would actually
    /// take, keeping traces canonical.
    #[default]
    LargestWeight,
    /// Prefer the smallest original index.
    SmallestIndex,
}

/// Work counters for the greedy loop.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GreedyStats {
    pub iterations: u64,
    pub independence_tests: u64,
    pub marginal_evaluations: u64,
}

#[derive(Debug, Clone)]
pub struct GreedySolution {
    pub result: SolveResult,
    /// True iff the follower has a single group and all weights are
    /// distinct, in which case the result is guaranteed optimal.
    pub exact: bool,
    /// Follower's value after each greedy step, starting from the empty
    /// decision; non-increasing.
    pub trace: Vec<i64>,
    pub stats: GreedyStats,
}

pub fn solve_greedy<M: Matroid>(sorted: &SortedInstance, matroid: &M) -> GreedySolution {
    solve_greedy_with(sorted, matroid, TieBreak::default())
}

pub fn solve_greedy_with<M: Matroid>(
    sorted: &SortedInstance,
    matroid: &M,
    tie_break: TieBreak,
) -> GreedySolution {
    let n = sorted.n();
    debug_assert_eq!(matroid.ground_size(), n);
    let mut x = BlockingDecision::zeros(n);
    let mut state = matroid.empty_state();
    let mut stats = GreedyStats::default();

    let mut current = crate::model::psi(sorted, &x).expect("dimensions match by construction");
    let mut trace = vec![current];

    loop {
        let index = MarginalIndex::new(sorted, &x).expect("dimensions match by construction");
        let mut best: Option<(i64, i64, usize)> = None; // (marginal, weight, element)
        for i in 0..n {
            if x.get(i) {
                continue;
            }
            stats.independence_tests += 1;
            if !matroid.can_add(&mut state, i) {
                continue;
            }
            stats.marginal_evaluations += 1;
            let marginal = index
                .decrease(sorted, &x, i)
                .expect("candidate is unblocked and in range");
            let weight = sorted.scaled_weight_of(i);
            let better = match best {
                None => true,
                Some((bm, bw, _)) => {
                    marginal < bm
                        || (marginal == bm
                            && tie_break == TieBreak::LargestWeight
                            && weight > bw)
                    // ascending scan keeps the smallest index on full ties
                }
            };
            if better {
                best = Some((marginal, weight, i));
            }
        }
        let Some((marginal, _, pick)) = best else { break };
        matroid.add(&mut state, pick);
        x.set(pick, true);
        current += marginal;
        trace.push(current);
        stats.iterations += 1;
    }

    let result = SolveResult::from_decision(sorted, x, SolverKind::Greedy)
        .expect("dimensions match by construction");
    assert_eq!(
        result.objective, current,
        "incremental marginals diverged from the follower best response"
    );
    let exact = sorted.base().num_follower_groups() == 1
        && (1..n).all(|p| sorted.weight_at(p) != sorted.weight_at(p + 1));
    GreedySolution {
        result,
        exact,
        trace,
        stats,
    }
}

/// One point of the worst-case family: the big weight `m`, what the greedy
/// walk reaches and the true optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapPoint {
    pub m: u64,
    pub greedy_value: i64,
    pub optimal_value: i64,
}

/// Instantiates the two-follower-group worst case for each `m` and solves it
/// with both the greedy walk and the exact dual solver. The ratio
/// `greedy / optimal` equals `(m + 1) / 3`, so no constant-factor guarantee
/// survives even two follower groups.
pub fn greedy_gap_family(m_values: &[u64]) -> Vec<GapPoint> {
    m_values
        .iter()
        .map(|&m| {
            assert!(m > 3, "the family needs m above the small weights");
            let sorted = crate::model::sort_weights(example1_instance(m))
                .expect("sample instance is valid");
            let matroid = PartitionMatroid::from_instance(sorted.base());
            let greedy = solve_greedy(&sorted, &matroid);
            let optimal = solve_dual(&sorted, &matroid).expect("within default budgets");
            GapPoint {
                m,
                greedy_value: greedy.result.objective,
                optimal_value: optimal.objective,
            }
        })
        .collect()
}
