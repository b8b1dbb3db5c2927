//! Backward dynamic program over leader residual budgets.
//!
//! The objective splits into one term per follower group, so the solve runs
//! in `k_f` stages. A state is the vector of leader budgets still unspent; a
//! stage action picks how many elements to block inside each intersection of
//! the stage's follower group with a leader group. Within one intersection it
//! is never worse to block the heaviest elements first (swapping a blocked
//! lighter element for an unblocked heavier one keeps leader feasibility and
//! cannot raise the follower's value), so actions range over prefixes only.

use crate::error::{Error, Result};
use crate::model::{BlockingDecision, SolveResult, SolverKind, SortedInstance};

/// Residual leader budgets at the start of a stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpState {
    pub residual: Vec<u64>,
}

/// Per-leader-group counts of blocked elements within one stage; count `c`
/// always blocks the `c` largest-weight elements of the intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageAction {
    pub counts: Vec<u64>,
}

/// Memory cap for [`solve_dp`].
#[derive(Debug, Clone)]
pub struct DpConfig {
    /// Maximum number of states per value table.
    pub max_states: u64,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig { max_states: 1 << 26 }
    }
}

/// Work counters, exposed for complexity regression tests.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    /// States per value table.
    pub states: u64,
    /// `(state, action)` pairs explored at each stage.
    pub stage_action_pairs: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct DpSolution {
    pub result: SolveResult,
    pub stats: DpStats,
}

/// Applies a stage action to a state: componentwise budget subtraction.
pub fn transition(state: &DpState, action: &StageAction) -> Result<DpState> {
    if state.residual.len() != action.counts.len() {
        return Err(Error::DimensionMismatch {
            expected: state.residual.len(),
            got: action.counts.len(),
        });
    }
    let mut residual = Vec::with_capacity(state.residual.len());
    for (g, (&r, &c)) in state.residual.iter().zip(&action.counts).enumerate() {
        if c > r {
            return Err(Error::BudgetUnderflow { group: g });
        }
        residual.push(r - c);
    }
    Ok(DpState { residual })
}

/// One stage of the solve: the members of follower group `k` annotated with
/// their leader group and their rank in the weight-descending order of their
/// intersection.
struct Stage {
    /// `(sorted position, original index, leader group, intersection rank)`
    /// in descending position order.
    members: Vec<(usize, usize, usize, u64)>,
    /// `|F_k ∩ L_g|` per leader group `g`.
    inter_len: Vec<u64>,
    budget: u64,
}

impl Stage {
    fn new(sorted: &SortedInstance, k: usize) -> Stage {
        let instance = sorted.base();
        let k_l = instance.num_leader_groups();
        let mut inter_len = vec![0u64; k_l];
        let mut members = Vec::with_capacity(sorted.follower_positions(k).len());
        for &pos in sorted.follower_positions(k).iter().rev() {
            let orig = sorted.original_of(pos);
            let g = instance.leader_group_of(orig);
            members.push((pos, orig, g, inter_len[g]));
            inter_len[g] += 1;
        }
        Stage {
            members,
            inter_len,
            budget: instance.follower_budgets()[k],
        }
    }

    /// Follower's value within this stage's group after blocking the top
    /// `counts[g]` elements of each intersection.
    fn value(&self, sorted: &SortedInstance, counts: &[u64]) -> i64 {
        let mut total = 0i64;
        let mut taken = 0u64;
        if self.budget == 0 {
            return 0;
        }
        for &(pos, _, g, rank) in &self.members {
            if rank >= counts[g] {
                total += sorted.weight_at(pos);
                taken += 1;
                if taken == self.budget {
                    break;
                }
            }
        }
        total
    }
}

/// Follower's profit within follower group `k` under a prefix-blocking stage
/// action: the sum of the top `f_k` unblocked weights of the group.
pub fn stage_psi(sorted: &SortedInstance, k: usize, action: &StageAction) -> Result<i64> {
    let instance = sorted.base();
    if k >= instance.num_follower_groups() {
        return Err(Error::IndexOutOfRange {
            index: k,
            n: instance.num_follower_groups(),
        });
    }
    if action.counts.len() != instance.num_leader_groups() {
        return Err(Error::DimensionMismatch {
            expected: instance.num_leader_groups(),
            got: action.counts.len(),
        });
    }
    let stage = Stage::new(sorted, k);
    for (g, (&c, &len)) in action.counts.iter().zip(&stage.inter_len).enumerate() {
        let cap = len.min(instance.leader_budgets()[g]);
        if c > cap {
            return Err(Error::InvalidAction {
                reason: format!("count {c} for leader group {g} exceeds {cap}"),
            });
        }
    }
    Ok(stage.value(sorted, &action.counts))
}

/// Mixed-radix encoding of residual-budget vectors into dense table indices.
struct StateCodec {
    radices: Vec<u64>,
    strides: Vec<u64>,
    size: u64,
}

impl StateCodec {
    fn new(budgets: &[u64], max_states: u64) -> Result<StateCodec> {
        let mut size: u128 = 1;
        for &l in budgets {
            size = size.saturating_mul(l as u128 + 1);
        }
        if size > max_states as u128 {
            return Err(Error::MemoryBudgetExceeded {
                required: size,
                budget: max_states,
            });
        }
        let radices: Vec<u64> = budgets.iter().map(|&l| l + 1).collect();
        let mut strides = vec![1u64; radices.len()];
        for g in (0..radices.len().saturating_sub(1)).rev() {
            strides[g] = strides[g + 1] * radices[g + 1];
        }
        Ok(StateCodec {
            radices,
            strides,
            size: size as u64,
        })
    }

    fn encode(&self, r: &[u64]) -> usize {
        r.iter()
            .zip(&self.strides)
            .map(|(&v, &s)| v * s)
            .sum::<u64>() as usize
    }

    fn decode(&self, mut index: u64) -> Vec<u64> {
        let mut r = vec![0u64; self.radices.len()];
        for g in (0..self.radices.len()).rev() {
            r[g] = index % self.radices[g];
            index /= self.radices[g];
        }
        r
    }
}

pub fn solve_dp(sorted: &SortedInstance) -> Result<SolveResult> {
    Ok(solve_dp_detailed(sorted, &DpConfig::default())?.result)
}

/// Runs the backward pass over all residual-budget states, keeping the value
/// tables of two consecutive stages live plus one compact argmin table per
/// stage for the forward reconstruction. Ties between equal-value actions go
/// to the lexicographically smallest count vector.
pub fn solve_dp_detailed(sorted: &SortedInstance, config: &DpConfig) -> Result<DpSolution> {
    let instance = sorted.base();
    let k_f = instance.num_follower_groups();
    let budgets = instance.leader_budgets();
    let codec = StateCodec::new(budgets, config.max_states)?;
    let num_states = codec.size;

    let stages: Vec<Stage> = (0..k_f).map(|k| Stage::new(sorted, k)).collect();

    let mut value_next: Vec<i64> = Vec::new();
    let mut argmin: Vec<Vec<u64>> = vec![Vec::new(); k_f];
    let mut pairs = vec![0u64; k_f];

    for k in (0..k_f).rev() {
        let stage = &stages[k];
        let last = k == k_f - 1;
        let mut value_cur = vec![0i64; num_states as usize];
        let mut arg_cur = vec![0u64; num_states as usize];

        let mut counts = vec![0u64; budgets.len()];
        let mut next_r = vec![0u64; budgets.len()];
        for s in 0..num_states {
            let r = codec.decode(s);
            let caps: Vec<u64> = r
                .iter()
                .zip(&stage.inter_len)
                .map(|(&ri, &len)| ri.min(len))
                .collect();

            counts.fill(0);
            let mut best = i64::MAX;
            let mut best_action = 0u64;
            loop {
                pairs[k] += 1;
                let mut v = stage.value(sorted, &counts);
                if !last {
                    for (t, (&ri, &ci)) in next_r.iter_mut().zip(r.iter().zip(&counts)) {
                        *t = ri - ci;
                    }
                    v += value_next[codec.encode(&next_r)];
                }
                // lexicographic enumeration + strict improvement keeps the
                // lexicographically smallest argmin among ties
                if v < best {
                    best = v;
                    best_action = codec.encode(&counts) as u64;
                }
                let mut done = true;
                for g in (0..counts.len()).rev() {
                    counts[g] += 1;
                    if counts[g] <= caps[g] {
                        done = false;
                        break;
                    }
                    counts[g] = 0;
                }
                if done {
                    break;
                }
            }
            value_cur[s as usize] = best;
            arg_cur[s as usize] = best_action;
        }
        value_next = value_cur;
        argmin[k] = arg_cur;
    }

    // forward reconstruction from the full budgets
    let full: Vec<u64> = budgets.to_vec();
    let objective = value_next[codec.encode(&full)];
    let mut x = BlockingDecision::zeros(sorted.n());
    let mut r = full;
    for (k, stage) in stages.iter().enumerate() {
        let counts = codec.decode(argmin[k][codec.encode(&r)]);
        let mut remaining = counts.clone();
        for &(_, orig, g, rank) in &stage.members {
            if rank < counts[g] {
                x.set(orig, true);
                remaining[g] -= 1;
            }
        }
        debug_assert!(remaining.iter().all(|&c| c == 0));
        for (ri, ci) in r.iter_mut().zip(&counts) {
            *ri -= ci;
        }
    }

    let result = SolveResult::from_decision(sorted, x, SolverKind::Dp)?;
    assert_eq!(
        result.objective, objective,
        "dp value table disagrees with the follower best response"
    );
    Ok(DpSolution {
        result,
        stats: DpStats {
            states: num_states,
            stage_action_pairs: pairs,
        },
    })
}
