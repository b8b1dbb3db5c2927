//! Problem data model: validated instances, the weight-sorted view, blocking
//! decisions, the follower's exact best response and the closed-form marginal
//! decrease used by the greedy solver.
//!
//! The game: the leader blocks an independent set of its partition matroid,
//! then the follower picks a maximum-weight independent set of its own
//! partition matroid among the unblocked elements. Elements are indexed
//! `0..n` in original order everywhere in the public API; solvers work on the
//! weight-sorted view ([`SortedInstance`]) where position `0` is a sentinel of
//! weight zero and positions `1..=n` carry non-decreasing weights.

use std::collections::BTreeMap;

use crate::error::{Error, PartitionDefect, Result, Side};
use crate::weight::{lcm_checked, Weight, WeightParseError};

/// A weight literal as it arrives from a file or caller.
#[derive(Debug, Clone, PartialEq)]
pub enum RawWeight {
    Integer(i64),
    Decimal(String),
}

/// Unvalidated instance data. Feed it to [`validate_instance`].
#[derive(Debug, Clone, Default)]
pub struct RawInstance {
    pub n: usize,
    pub weights: Vec<RawWeight>,
    pub leader_groups: Vec<Vec<usize>>,
    pub leader_budgets: Vec<u64>,
    pub follower_groups: Vec<Vec<usize>>,
    pub follower_budgets: Vec<u64>,
    pub meta: BTreeMap<String, String>,
}

/// A validated, normalized problem instance.
///
/// Both group families partition `0..n`, weights are nonnegative rationals and
/// budgets are clamped to their group sizes. Immutable after construction and
/// safe to share across concurrent solver invocations.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    n: usize,
    weights: Vec<Weight>,
    leader_groups: Vec<Vec<usize>>,
    leader_budgets: Vec<u64>,
    follower_groups: Vec<Vec<usize>>,
    follower_budgets: Vec<u64>,
    leader_group_of: Vec<usize>,
    follower_group_of: Vec<usize>,
    meta: BTreeMap<String, String>,
}

fn check_partition(
    n: usize,
    groups: &[Vec<usize>],
    budgets: &[u64],
    side: Side,
) -> Result<Vec<usize>> {
    if groups.len() != budgets.len() {
        return Err(Error::BudgetCountMismatch {
            side,
            groups: groups.len(),
            budgets: budgets.len(),
        });
    }
    let mut group_of = vec![usize::MAX; n];
    for (k, group) in groups.iter().enumerate() {
        for &i in group {
            if i >= n {
                return Err(Error::NonPartition {
                    side,
                    element: i,
                    defect: PartitionDefect::OutOfRange,
                });
            }
            if group_of[i] != usize::MAX {
                return Err(Error::NonPartition {
                    side,
                    element: i,
                    defect: PartitionDefect::Overlapping,
                });
            }
            group_of[i] = k;
        }
    }
    if let Some(i) = group_of.iter().position(|&g| g == usize::MAX) {
        return Err(Error::NonPartition {
            side,
            element: i,
            defect: PartitionDefect::Uncovered,
        });
    }
    Ok(group_of)
}

/// Validates raw data into a normalized [`Instance`].
///
/// Budgets larger than their group are clamped to the group size; group
/// element lists are sorted ascending.
pub fn validate_instance(raw: RawInstance) -> Result<Instance> {
    if raw.n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if raw.weights.len() != raw.n {
        return Err(Error::DimensionMismatch {
            expected: raw.n,
            got: raw.weights.len(),
        });
    }

    let mut weights = Vec::with_capacity(raw.n);
    for (index, w) in raw.weights.iter().enumerate() {
        let parsed = match w {
            RawWeight::Integer(v) => {
                if *v < 0 {
                    return Err(Error::NegativeWeight { index });
                }
                Weight::from_integer(*v as u64)
            }
            RawWeight::Decimal(text) => {
                Weight::parse_decimal(text).map_err(|e| match e {
                    WeightParseError::Negative => Error::NegativeWeight { index },
                    WeightParseError::Malformed => Error::MalformedWeight {
                        index,
                        text: text.clone(),
                    },
                    WeightParseError::TooLarge => Error::ScaleOverflow,
                })?
            }
        };
        weights.push(parsed);
    }

    let leader_group_of = check_partition(raw.n, &raw.leader_groups, &raw.leader_budgets, Side::Leader)?;
    let follower_group_of =
        check_partition(raw.n, &raw.follower_groups, &raw.follower_budgets, Side::Follower)?;

    let mut leader_groups = raw.leader_groups;
    let mut follower_groups = raw.follower_groups;
    for g in leader_groups.iter_mut().chain(follower_groups.iter_mut()) {
        g.sort_unstable();
    }
    let leader_budgets = leader_groups
        .iter()
        .zip(raw.leader_budgets)
        .map(|(g, b)| b.min(g.len() as u64))
        .collect();
    let follower_budgets = follower_groups
        .iter()
        .zip(raw.follower_budgets)
        .map(|(g, b)| b.min(g.len() as u64))
        .collect();

    Ok(Instance {
        n: raw.n,
        weights,
        leader_groups,
        leader_budgets,
        follower_groups,
        follower_budgets,
        leader_group_of,
        follower_group_of,
        meta: raw.meta,
    })
}

impl Instance {
    /// Convenience constructor for integer weights.
    pub fn with_integer_weights(
        weights: &[u64],
        leader_groups: Vec<Vec<usize>>,
        leader_budgets: Vec<u64>,
        follower_groups: Vec<Vec<usize>>,
        follower_budgets: Vec<u64>,
    ) -> Result<Instance> {
        validate_instance(RawInstance {
            n: weights.len(),
            weights: weights.iter().map(|&w| RawWeight::Integer(w as i64)).collect(),
            leader_groups,
            leader_budgets,
            follower_groups,
            follower_budgets,
            meta: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn leader_groups(&self) -> &[Vec<usize>] {
        &self.leader_groups
    }

    pub fn leader_budgets(&self) -> &[u64] {
        &self.leader_budgets
    }

    pub fn follower_groups(&self) -> &[Vec<usize>] {
        &self.follower_groups
    }

    pub fn follower_budgets(&self) -> &[u64] {
        &self.follower_budgets
    }

    pub fn num_leader_groups(&self) -> usize {
        self.leader_groups.len()
    }

    pub fn num_follower_groups(&self) -> usize {
        self.follower_groups.len()
    }

    /// Leader group index of element `i`.
    pub fn leader_group_of(&self, i: usize) -> usize {
        self.leader_group_of[i]
    }

    /// Follower group index of element `i`.
    pub fn follower_group_of(&self, i: usize) -> usize {
        self.follower_group_of[i]
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut BTreeMap<String, String> {
        &mut self.meta
    }

    /// True when all weights are pairwise distinct (the premise under which
    /// the greedy solver is exact for a single follower group).
    pub fn weights_distinct(&self) -> bool {
        let mut sorted: Vec<&Weight> = self.weights.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// The leader's binary blocking decision over the ground set, in original
/// element indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingDecision {
    bits: Vec<bool>,
}

impl BlockingDecision {
    pub fn zeros(n: usize) -> Self {
        BlockingDecision { bits: vec![false; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BlockingDecision { bits }
    }

    pub fn from_blocked(n: usize, blocked: &[usize]) -> Result<Self> {
        let mut bits = vec![false; n];
        for &i in blocked {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            bits[i] = true;
        }
        Ok(BlockingDecision { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, blocked: bool) {
        self.bits[i] = blocked;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn blocked_indices(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    /// `self + e_i`, for probing one-element extensions.
    pub fn with(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.bits[i] = true;
        out
    }

    /// Leader feasibility: at most `l_k` blocked elements per leader group.
    pub fn is_feasible(&self, instance: &Instance) -> bool {
        if self.bits.len() != instance.n() {
            return false;
        }
        let mut counts = vec![0u64; instance.num_leader_groups()];
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                counts[instance.leader_group_of(i)] += 1;
            }
        }
        counts
            .iter()
            .zip(instance.leader_budgets())
            .all(|(c, l)| c <= l)
    }
}

/// The follower's optimal selection against a blocking decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FollowerResponse {
    /// Binary selection in original indexing; elementwise `y <= 1 - x`.
    pub y: Vec<bool>,
    /// Exact scaled-integer objective value of the selection.
    pub value: i64,
}

impl FollowerResponse {
    pub fn picked_indices(&self) -> Vec<usize> {
        self.y
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }
}

/// Which algorithm produced a [`SolveResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    OracleFull,
    OracleLeader,
    Dual,
    Dp,
    Greedy,
}

impl SolverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::OracleFull => "oracle-full",
            SolverKind::OracleLeader => "oracle-leader",
            SolverKind::Dual => "dual",
            SolverKind::Dp => "dp",
            SolverKind::Greedy => "greedy",
        }
    }
}

impl std::fmt::Display for SolverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A solver's output: the optimal value, one optimal blocking decision and
/// the follower's best response to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// Exact scaled-integer optimal objective.
    pub objective: i64,
    pub x_opt: BlockingDecision,
    pub response: FollowerResponse,
    pub solver: SolverKind,
}

impl SolveResult {
    /// Builds a result from a decision, recomputing the follower response so
    /// `objective == response.value` holds by construction.
    pub fn from_decision(
        sorted: &SortedInstance,
        x_opt: BlockingDecision,
        solver: SolverKind,
    ) -> Result<SolveResult> {
        let response = follower_best_response(sorted, &x_opt)?;
        Ok(SolveResult {
            objective: response.value,
            x_opt,
            response,
            solver,
        })
    }
}

/// Weight-sorted view of an [`Instance`] on an exact integer grid.
///
/// Position `0` is a sentinel of weight zero; positions `1..=n` hold the
/// elements in non-decreasing weight order, ties broken by ascending original
/// index. `scale` is the least common denominator by which every rational
/// weight was multiplied to become an exact integer.
#[derive(Debug, Clone)]
pub struct SortedInstance {
    base: Instance,
    /// `order[p]` = original index of the element at sorted position `p`,
    /// for `p` in `1..=n`; `order[0]` is unused.
    order: Vec<usize>,
    /// `sorted_weights[p]` = scaled weight at position `p`; entry 0 is 0.
    sorted_weights: Vec<i64>,
    /// Inverse of `order`: original index -> sorted position in `1..=n`.
    position_of: Vec<usize>,
    scale: u64,
    /// Per follower group: member sorted positions, ascending.
    follower_positions: Vec<Vec<usize>>,
}

/// Builds the sorted view, scaling all weights to exact integers.
///
/// Fails with [`Error::ScaleOverflow`] when the common-denominator scaling
/// would let any accumulated solver quantity exceed a 63-bit signed
/// magnitude; the check enforced here is `4 * n * max_scaled_weight <=
/// i64::MAX`, which bounds every sum and big-M constant the solvers form.
pub fn sort_weights(instance: Instance) -> Result<SortedInstance> {
    let n = instance.n();

    let mut scale: u64 = 1;
    for w in instance.weights() {
        scale = lcm_checked(scale, w.denominator()).ok_or(Error::ScaleOverflow)?;
    }

    let mut scaled = Vec::with_capacity(n);
    let mut max_scaled: u128 = 0;
    for w in instance.weights() {
        let s = w.scaled(scale);
        max_scaled = max_scaled.max(s);
        scaled.push(s);
    }
    let budget = (n as u128)
        .checked_mul(max_scaled)
        .and_then(|v| v.checked_mul(4))
        .ok_or(Error::ScaleOverflow)?;
    if budget > i64::MAX as u128 {
        return Err(Error::ScaleOverflow);
    }

    let mut by_weight: Vec<usize> = (0..n).collect();
    // stable: ties keep ascending original index
    by_weight.sort_by_key(|&i| scaled[i]);

    let mut order = vec![usize::MAX; n + 1];
    let mut sorted_weights = vec![0i64; n + 1];
    let mut position_of = vec![0usize; n];
    for (p, &i) in by_weight.iter().enumerate() {
        let pos = p + 1;
        order[pos] = i;
        sorted_weights[pos] = scaled[i] as i64;
        position_of[i] = pos;
    }

    let mut follower_positions = vec![Vec::new(); instance.num_follower_groups()];
    for pos in 1..=n {
        follower_positions[instance.follower_group_of(order[pos])].push(pos);
    }

    Ok(SortedInstance {
        base: instance,
        order,
        sorted_weights,
        position_of,
        scale,
        follower_positions,
    })
}

impl SortedInstance {
    pub fn new(instance: Instance) -> Result<Self> {
        sort_weights(instance)
    }

    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Scaled weight at sorted position `j`, valid for `j` in `0..=n`.
    pub fn weight_at(&self, j: usize) -> i64 {
        self.sorted_weights[j]
    }

    pub fn sorted_weights(&self) -> &[i64] {
        &self.sorted_weights
    }

    /// Original element index at sorted position `pos` in `1..=n`.
    pub fn original_of(&self, pos: usize) -> usize {
        debug_assert!(pos >= 1 && pos <= self.n());
        self.order[pos]
    }

    /// Sorted position (`1..=n`) of original element `i`.
    pub fn position_of(&self, i: usize) -> usize {
        self.position_of[i]
    }

    /// Scaled weight of original element `i`.
    pub fn scaled_weight_of(&self, i: usize) -> i64 {
        self.sorted_weights[self.position_of[i]]
    }

    /// Sorted positions (ascending) of the members of follower group `k`.
    pub fn follower_positions(&self, k: usize) -> &[usize] {
        &self.follower_positions[k]
    }
}

fn check_dimensions(sorted: &SortedInstance, x: &BlockingDecision) -> Result<()> {
    if x.len() != sorted.n() {
        return Err(Error::DimensionMismatch {
            expected: sorted.n(),
            got: x.len(),
        });
    }
    Ok(())
}

/// The follower's exact best response to `x`: within each follower group,
/// the `f_k` unblocked elements of largest weight (fewer if fewer remain).
///
/// Optimal because each group is a uniform matroid, so the block-diagonal
/// greedy choice is exact. `x` need not be leader-feasible.
pub fn follower_best_response(
    sorted: &SortedInstance,
    x: &BlockingDecision,
) -> Result<FollowerResponse> {
    check_dimensions(sorted, x)?;
    let mut y = vec![false; sorted.n()];
    let mut value: i64 = 0;
    for k in 0..sorted.base().num_follower_groups() {
        let budget = sorted.base().follower_budgets()[k];
        if budget == 0 {
            continue;
        }
        let mut taken = 0u64;
        for &pos in sorted.follower_positions(k).iter().rev() {
            let orig = sorted.original_of(pos);
            if !x.get(orig) {
                y[orig] = true;
                value += sorted.weight_at(pos);
                taken += 1;
                if taken == budget {
                    break;
                }
            }
        }
    }
    Ok(FollowerResponse { y, value })
}

/// The follower's optimal value against `x`.
pub fn psi(sorted: &SortedInstance, x: &BlockingDecision) -> Result<i64> {
    Ok(follower_best_response(sorted, x)?.value)
}

/// Sorted positions of the `f`-th and `(f+1)`-th unblocked members of group
/// `k` counted from the largest weight; 0 when no such member exists.
fn group_thresholds(sorted: &SortedInstance, x: &BlockingDecision, k: usize, f: u64) -> (usize, usize) {
    let mut j_f = 0usize;
    let mut j_f1 = 0usize;
    let mut count = 0u64;
    for &pos in sorted.follower_positions(k).iter().rev() {
        if !x.get(sorted.original_of(pos)) {
            count += 1;
            if count == f {
                j_f = pos;
            } else if count == f + 1 {
                j_f1 = pos;
                break;
            }
        }
    }
    (j_f, j_f1)
}

fn marginal_from_thresholds(
    sorted: &SortedInstance,
    pos_i: usize,
    j_f: usize,
    j_f1: usize,
) -> i64 {
    if pos_i >= j_f {
        sorted.weight_at(j_f1) - sorted.weight_at(pos_i)
    } else {
        0
    }
}

/// Exact marginal decrease `psi(x + e_i) - psi(x)` in `O(|F_k|)` time, where
/// `F_k` is the follower group of `i`, without re-solving the follower
/// problem: blocking element `i` only matters when `i` is among the group's
/// top `f_k` unblocked weights, in which case the next-best element (sentinel
/// weight 0 if none) substitutes for it.
pub fn marginal_decrease(sorted: &SortedInstance, x: &BlockingDecision, i: usize) -> Result<i64> {
    check_dimensions(sorted, x)?;
    if i >= sorted.n() {
        return Err(Error::IndexOutOfRange { index: i, n: sorted.n() });
    }
    if x.get(i) {
        return Err(Error::AlreadyBlocked { index: i });
    }
    let k = sorted.base().follower_group_of(i);
    let f = sorted.base().follower_budgets()[k];
    if f == 0 {
        return Ok(0);
    }
    let (j_f, j_f1) = group_thresholds(sorted, x, k, f);
    Ok(marginal_from_thresholds(sorted, sorted.position_of(i), j_f, j_f1))
}

/// Per-step cache of the group thresholds so a scan over all candidate
/// elements evaluates each marginal in `O(1)`.
#[derive(Debug)]
pub struct MarginalIndex {
    thresholds: Vec<(usize, usize)>,
}

impl MarginalIndex {
    /// Builds the per-group thresholds for a fixed `x` in `O(n)` total.
    pub fn new(sorted: &SortedInstance, x: &BlockingDecision) -> Result<Self> {
        check_dimensions(sorted, x)?;
        let thresholds = (0..sorted.base().num_follower_groups())
            .map(|k| {
                let f = sorted.base().follower_budgets()[k];
                if f == 0 {
                    (usize::MAX, 0) // marks groups whose marginal is always 0
                } else {
                    group_thresholds(sorted, x, k, f)
                }
            })
            .collect();
        Ok(MarginalIndex { thresholds })
    }

    /// `psi(x + e_i) - psi(x)` for the `x` this index was built from.
    pub fn decrease(&self, sorted: &SortedInstance, x: &BlockingDecision, i: usize) -> Result<i64> {
        if i >= sorted.n() {
            return Err(Error::IndexOutOfRange { index: i, n: sorted.n() });
        }
        if x.get(i) {
            return Err(Error::AlreadyBlocked { index: i });
        }
        let (j_f, j_f1) = self.thresholds[sorted.base().follower_group_of(i)];
        if j_f == usize::MAX {
            return Ok(0);
        }
        Ok(marginal_from_thresholds(sorted, sorted.position_of(i), j_f, j_f1))
    }
}
