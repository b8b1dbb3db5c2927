//! Duality-based exact solver.
//!
//! For a fixed blocking decision the follower's problem splits per group into
//! a fractional uniform-matroid LP whose dual collapses to a one-dimensional
//! minimization over breakpoints `j` of the sorted weight vector: the dual
//! variable of the cardinality constraint only needs to take values
//! `beta_0..beta_n`. Enumerating the breakpoint vector `j` (one coordinate
//! per follower group) turns the whole min-max problem into
//! `(n+1)^{k_f}` maximum-weight independent set problems over the leader
//! matroid, each solved by a greedy scan over the pre-sorted weights.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::model::{BlockingDecision, SolveResult, SolverKind, SortedInstance};

/// Per-follower-group breakpoint positions, each in `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakpointVector {
    pub positions: Vec<usize>,
}

/// Tuning knobs for [`solve_dual`].
#[derive(Debug, Clone)]
pub struct DualConfig {
    /// Maximum number of breakpoint vectors to enumerate.
    pub max_breakpoint_vectors: u64,
    /// Skip breakpoints whose weight repeats the previous position; the
    /// skipped expressions are exact duplicates, so the optimal value is
    /// unchanged. Off by default to keep the enumeration literal.
    pub dedupe_breakpoints: bool,
    /// Worker threads for the breakpoint enumeration. The reduction is a
    /// deterministic `(value, rank)` minimum, so results do not depend on
    /// the thread count.
    pub threads: usize,
}

impl Default for DualConfig {
    fn default() -> Self {
        DualConfig {
            max_breakpoint_vectors: 10_000_000,
            dedupe_breakpoints: false,
            threads: 1,
        }
    }
}

/// Work counters, exposed for complexity regression tests.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualStats {
    /// Breakpoint vectors evaluated.
    pub breakpoint_vectors: u64,
    /// Elements visited across all inner greedy scans.
    pub element_visits: u64,
}

/// Result of [`solve_dual_detailed`]: the solution plus the minimizing
/// breakpoint vector and work counters.
#[derive(Debug, Clone)]
pub struct DualSolution {
    pub result: SolveResult,
    pub breakpoints: BreakpointVector,
    pub stats: DualStats,
}

/// The group-`k` dual expression at breakpoint `j`:
/// `beta_j * f_k + sum over members of F_k at positions above j of
/// (beta_i - beta_j) * (1 - x_i)`.
pub fn dual_expr(sorted: &SortedInstance, k: usize, j: usize, x: &BlockingDecision) -> i64 {
    let w_j = sorted.weight_at(j);
    let f = sorted.base().follower_budgets()[k] as i64;
    let mut total = w_j * f;
    for &pos in sorted.follower_positions(k).iter().rev() {
        if pos <= j {
            break; // positions are ascending, so the tail is done
        }
        if !x.get(sorted.original_of(pos)) {
            total += sorted.weight_at(pos) - w_j;
        }
    }
    total
}

/// Evaluates the dual bound at a fixed `x`: for each follower group the
/// minimum of [`dual_expr`] over all breakpoints, summed. By strong duality
/// this equals `psi(x)` exactly.
pub fn dual_inner_value(sorted: &SortedInstance, x: &BlockingDecision) -> Result<i64> {
    if x.len() != sorted.n() {
        return Err(Error::DimensionMismatch {
            expected: sorted.n(),
            got: x.len(),
        });
    }
    let mut total = 0i64;
    for k in 0..sorted.base().num_follower_groups() {
        total += (0..=sorted.n())
            .map(|j| dual_expr(sorted, k, j, x))
            .min()
            .expect("breakpoint range is never empty");
    }
    Ok(total)
}

/// Precomputed per-group tables for the breakpoint enumeration.
struct DualContext<'a, M> {
    sorted: &'a SortedInstance,
    matroid: &'a M,
    /// Per group: members as `(scaled weight, original index)` sorted by
    /// weight descending, index ascending — the greedy scan order.
    members: Vec<Vec<(i64, usize)>>,
    /// Per group, per breakpoint `j`: sum of member weights at positions
    /// above `j`.
    weight_above: Vec<Vec<i64>>,
    /// Per group, per breakpoint `j`: count of member positions above `j`.
    count_above: Vec<Vec<i64>>,
}

impl<'a, M: Matroid> DualContext<'a, M> {
    fn new(sorted: &'a SortedInstance, matroid: &'a M) -> Self {
        let n = sorted.n();
        let k_f = sorted.base().num_follower_groups();

        let mut members = Vec::with_capacity(k_f);
        for k in 0..k_f {
            let mut list: Vec<(i64, usize)> = sorted
                .follower_positions(k)
                .iter()
                .map(|&pos| (sorted.weight_at(pos), sorted.original_of(pos)))
                .collect();
            list.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            members.push(list);
        }

        let mut weight_above = vec![vec![0i64; n + 1]; k_f];
        let mut count_above = vec![vec![0i64; n + 1]; k_f];
        for j in (0..n).rev() {
            let k = sorted.base().follower_group_of(sorted.original_of(j + 1));
            for g in 0..k_f {
                weight_above[g][j] = weight_above[g][j + 1];
                count_above[g][j] = count_above[g][j + 1];
            }
            weight_above[k][j] += sorted.weight_at(j + 1);
            count_above[k][j] += 1;
        }

        DualContext {
            sorted,
            matroid,
            members,
            weight_above,
            count_above,
        }
    }

    /// Constant part of the objective for breakpoint vector `j`: the value of
    /// the dual expressions at `x = 0`.
    fn constant(&self, j: &[usize]) -> i64 {
        let mut total = 0i64;
        for (k, &jk) in j.iter().enumerate() {
            let w = self.sorted.weight_at(jk);
            let f = self.sorted.base().follower_budgets()[k] as i64;
            total += w * f + self.weight_above[k][jk] - w * self.count_above[k][jk];
        }
        total
    }

    /// Members of group `k` with a strictly positive gain at breakpoint `jk`:
    /// the prefix of the weight-descending member list above `beta_jk`.
    fn prefix_len(&self, k: usize, jk: usize) -> usize {
        let w = self.sorted.weight_at(jk);
        self.members[k].partition_point(|m| m.0 > w)
    }

    /// Solves the inner maximum-weight independent set for breakpoint vector
    /// `j` by merging the per-group pre-sorted gain lists, and returns the
    /// objective value. When `out` is provided, also records the chosen `x`.
    fn evaluate(&self, j: &[usize], visits: &mut u64, mut out: Option<&mut Vec<bool>>) -> i64 {
        let k_f = j.len();
        let mut limits = Vec::with_capacity(k_f);
        let mut cursors = vec![0usize; k_f];
        for (k, &jk) in j.iter().enumerate() {
            limits.push(self.prefix_len(k, jk));
        }

        let mut state = self.matroid.empty_state();
        let mut total_gain = 0i64;
        loop {
            // argmax over cursor heads by (gain desc, original index asc)
            let mut best: Option<(i64, usize, usize)> = None;
            for k in 0..k_f {
                if cursors[k] < limits[k] {
                    let (w, orig) = self.members[k][cursors[k]];
                    let gain = w - self.sorted.weight_at(j[k]);
                    if best.is_none_or(|(bg, bo, _)| gain > bg || (gain == bg && orig < bo)) {
                        best = Some((gain, orig, k));
                    }
                }
            }
            let Some((gain, orig, k)) = best else { break };
            *visits += 1;
            if self.matroid.can_add(&mut state, orig) {
                self.matroid.add(&mut state, orig);
                total_gain += gain;
                if let Some(bits) = out.as_deref_mut() {
                    bits[orig] = true;
                }
            }
            cursors[k] += 1;
        }
        self.constant(j) - total_gain
    }
}

fn decode_rank(mut rank: u64, base: u64, values: &[usize], k_f: usize) -> Vec<usize> {
    let mut j = vec![0usize; k_f];
    for slot in (0..k_f).rev() {
        j[slot] = values[(rank % base) as usize];
        rank /= base;
    }
    j
}

/// Sequential scan over a contiguous range of breakpoint ranks. Returns the
/// best `(value, rank)` of the range and accumulates visit counts.
fn scan_range<M: Matroid>(
    ctx: &DualContext<'_, M>,
    values: &[usize],
    k_f: usize,
    ranks: std::ops::Range<u64>,
) -> (i64, u64, u64) {
    let base = values.len() as u64;
    let mut best_value = i64::MAX;
    let mut best_rank = 0u64;
    let mut visits = 0u64;
    let mut j = decode_rank(ranks.start, base, values, k_f);
    let mut digits = vec![0u64; k_f];
    {
        let mut r = ranks.start;
        for slot in (0..k_f).rev() {
            digits[slot] = r % base;
            r /= base;
        }
    }
    for rank in ranks {
        let value = ctx.evaluate(&j, &mut visits, None);
        if value < best_value {
            best_value = value;
            best_rank = rank;
        }
        // odometer to the next breakpoint vector
        for slot in (0..k_f).rev() {
            digits[slot] += 1;
            if digits[slot] < base {
                j[slot] = values[digits[slot] as usize];
                break;
            }
            digits[slot] = 0;
            j[slot] = values[0];
        }
    }
    (best_value, best_rank, visits)
}

/// Solves the interdiction problem via the dual breakpoint enumeration.
/// Exact for any leader matroid.
pub fn solve_dual<M: Matroid + Sync>(sorted: &SortedInstance, matroid: &M) -> Result<SolveResult> {
    Ok(solve_dual_detailed(sorted, matroid, &DualConfig::default())?.result)
}

pub fn solve_dual_detailed<M: Matroid + Sync>(
    sorted: &SortedInstance,
    matroid: &M,
    config: &DualConfig,
) -> Result<DualSolution> {
    let n = sorted.n();
    debug_assert_eq!(matroid.ground_size(), n);
    let k_f = sorted.base().num_follower_groups();

    let values: Vec<usize> = if config.dedupe_breakpoints {
        (0..=n)
            .filter(|&j| j == 0 || sorted.weight_at(j) != sorted.weight_at(j - 1))
            .collect()
    } else {
        (0..=n).collect()
    };
    let base = values.len() as u64;
    let total = (base as u128)
        .checked_pow(k_f as u32)
        .ok_or(Error::EnumerationBudgetExceeded {
            required: u128::MAX,
            budget: config.max_breakpoint_vectors,
        })?;
    if total > config.max_breakpoint_vectors as u128 {
        return Err(Error::EnumerationBudgetExceeded {
            required: total,
            budget: config.max_breakpoint_vectors,
        });
    }
    let total = total as u64;

    let ctx = DualContext::new(sorted, matroid);

    let threads = config.threads.max(1).min(total.max(1) as usize);
    let (best_value, best_rank, visits) = if threads <= 1 {
        scan_range(&ctx, &values, k_f, 0..total)
    } else {
        let chunk = total.div_ceil(threads as u64);
        let mut locals = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let ctx = &ctx;
                    let values = &values;
                    let lo = t * chunk;
                    let hi = ((t + 1) * chunk).min(total);
                    scope.spawn(move || scan_range(ctx, values, k_f, lo..hi))
                })
                .collect();
            for handle in handles {
                locals.push(handle.join().expect("dual worker panicked"));
            }
        });
        locals
            .into_iter()
            .reduce(|a, b| {
                let best = if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                    (b.0, b.1)
                } else {
                    (a.0, a.1)
                };
                (best.0, best.1, a.2 + b.2)
            })
            .expect("at least one worker")
    };

    // Re-evaluate the winning breakpoint vector to recover its decision.
    let j = decode_rank(best_rank, base, &values, k_f);
    let mut bits = vec![false; n];
    let mut scratch = 0u64;
    let replay = ctx.evaluate(&j, &mut scratch, Some(&mut bits));
    assert_eq!(replay, best_value, "breakpoint replay diverged");

    let result = SolveResult::from_decision(sorted, BlockingDecision::from_bits(bits), SolverKind::Dual)?;
    assert_eq!(
        result.objective, best_value,
        "dual optimum disagrees with the follower best response"
    );
    Ok(DualSolution {
        result,
        breakpoints: BreakpointVector { positions: j },
        stats: DualStats {
            breakpoint_vectors: total,
            element_visits: visits,
        },
    })
}
