//! Leader-side matroid abstraction.
//!
//! Solvers that optimize over the leader's feasible set only need two things:
//! an incremental independence test and the ground set size. The partition
//! form answers each test in `O(1)` with per-group counters; the abstract
//! form wraps a caller-supplied whole-vector tester, which is how arbitrary
//! matroids (graphic, transversal, ...) plug into the duality-based and
//! greedy solvers.

use crate::model::{BlockingDecision, Instance};

/// An independence system for the leader, queried incrementally.
///
/// Implementations must describe a matroid (downward-closed with the exchange
/// property); see [`verify_axioms`] for an exhaustive check on small ground
/// sets.
pub trait Matroid {
    /// Incremental selection state; `Default`-free so implementations can
    /// size it to the ground set.
    type State: Clone;

    fn ground_size(&self) -> usize;

    /// State of the empty selection.
    fn empty_state(&self) -> Self::State;

    /// Whether the selection can be extended with `i`. Must leave `state`
    /// unchanged on return. `i` must not already be selected.
    fn can_add(&self, state: &mut Self::State, i: usize) -> bool;

    /// Extends the selection with `i`; only call after `can_add` succeeded.
    fn add(&self, state: &mut Self::State, i: usize);

    /// Whole-vector independence test.
    fn is_independent(&self, x: &[bool]) -> bool {
        let mut state = self.empty_state();
        for (i, &bit) in x.iter().enumerate() {
            if bit {
                if !self.can_add(&mut state, i) {
                    return false;
                }
                self.add(&mut state, i);
            }
        }
        true
    }
}

/// Partition matroid: at most `budgets[k]` elements from each group.
#[derive(Debug, Clone)]
pub struct PartitionMatroid {
    group_of: Vec<usize>,
    budgets: Vec<u64>,
}

impl PartitionMatroid {
    pub fn new(group_of: Vec<usize>, budgets: Vec<u64>) -> Self {
        debug_assert!(group_of.iter().all(|&g| g < budgets.len()));
        PartitionMatroid { group_of, budgets }
    }

    /// The leader matroid of an instance.
    pub fn from_instance(instance: &Instance) -> Self {
        let group_of = (0..instance.n()).map(|i| instance.leader_group_of(i)).collect();
        PartitionMatroid::new(group_of, instance.leader_budgets().to_vec())
    }
}

impl Matroid for PartitionMatroid {
    type State = Vec<u64>;

    fn ground_size(&self) -> usize {
        self.group_of.len()
    }

    fn empty_state(&self) -> Vec<u64> {
        vec![0; self.budgets.len()]
    }

    fn can_add(&self, state: &mut Vec<u64>, i: usize) -> bool {
        let g = self.group_of[i];
        state[g] < self.budgets[g]
    }

    fn add(&self, state: &mut Vec<u64>, i: usize) {
        state[self.group_of[i]] += 1;
    }

    fn is_independent(&self, x: &[bool]) -> bool {
        let mut counts = vec![0u64; self.budgets.len()];
        for (i, &bit) in x.iter().enumerate() {
            if bit {
                let g = self.group_of[i];
                counts[g] += 1;
                if counts[g] > self.budgets[g] {
                    return false;
                }
            }
        }
        true
    }
}

/// Abstract matroid backed by a whole-vector independence tester.
///
/// Each incremental query costs one tester call on a candidate vector, so the
/// solvers degrade from `O(1)` to `O(phi(n))` per test, matching what an
/// external independence oracle can offer.
pub struct TesterMatroid<F> {
    n: usize,
    tester: F,
}

impl<F: Fn(&[bool]) -> bool> TesterMatroid<F> {
    pub fn new(n: usize, tester: F) -> Self {
        TesterMatroid { n, tester }
    }
}

impl<F: Fn(&[bool]) -> bool> Matroid for TesterMatroid<F> {
    type State = Vec<bool>;

    fn ground_size(&self) -> usize {
        self.n
    }

    fn empty_state(&self) -> Vec<bool> {
        vec![false; self.n]
    }

    fn can_add(&self, state: &mut Vec<bool>, i: usize) -> bool {
        debug_assert!(!state[i]);
        state[i] = true;
        let ok = (self.tester)(state);
        state[i] = false;
        ok
    }

    fn add(&self, state: &mut Vec<bool>, i: usize) {
        state[i] = true;
    }

    fn is_independent(&self, x: &[bool]) -> bool {
        (self.tester)(x)
    }
}

/// Greedy maximum-weight independent set for nonnegative gains.
///
/// Scans elements in non-increasing gain order (ties by ascending index),
/// keeps each element whose addition preserves independence and skips
/// zero-gain elements, which never change the optimum and keep the output
/// canonical. Exact for matroids. Returns the selection and its total gain.
pub fn max_weight_independent_set<M: Matroid>(
    gains: &[i64],
    matroid: &M,
) -> (BlockingDecision, i64) {
    debug_assert_eq!(gains.len(), matroid.ground_size());
    let mut order: Vec<usize> = (0..gains.len()).filter(|&i| gains[i] > 0).collect();
    order.sort_by(|&a, &b| gains[b].cmp(&gains[a]).then(a.cmp(&b)));

    let mut x = BlockingDecision::zeros(gains.len());
    let mut state = matroid.empty_state();
    let mut total = 0i64;
    for i in order {
        if matroid.can_add(&mut state, i) {
            matroid.add(&mut state, i);
            x.set(i, true);
            total += gains[i];
        }
    }
    (x, total)
}

/// Exhaustively checks the matroid axioms on a small ground set: the empty
/// set is independent, independence is downward-closed, and any smaller
/// independent set extends from a larger one (exchange property).
///
/// Intended for tests of externally supplied testers; cost is `O(4^n)`.
pub fn verify_axioms<M: Matroid>(matroid: &M) -> std::result::Result<(), String> {
    let n = matroid.ground_size();
    assert!(n <= 16, "axiom check is exponential; keep the ground set small");
    let to_vec = |mask: u32| -> Vec<bool> { (0..n).map(|i| mask >> i & 1 == 1).collect() };
    let independent: Vec<bool> = (0..1u32 << n)
        .map(|mask| matroid.is_independent(&to_vec(mask)))
        .collect();

    if !independent[0] {
        return Err("empty set is not independent".into());
    }
    for mask in 0..1u32 << n {
        if independent[mask as usize] {
            // downward closure: remove any one element
            for i in 0..n {
                if mask >> i & 1 == 1 && !independent[(mask & !(1 << i)) as usize] {
                    return Err(format!("subset of independent set {mask:#b} is dependent"));
                }
            }
        }
    }
    for a in 0..1u32 << n {
        if !independent[a as usize] {
            continue;
        }
        for b in 0..1u32 << n {
            if !independent[b as usize] || (a.count_ones() >= b.count_ones()) {
                continue;
            }
            let grew = (0..n).any(|i| {
                b >> i & 1 == 1 && a >> i & 1 == 0 && independent[(a | 1 << i) as usize]
            });
            if !grew {
                return Err(format!("exchange fails for {a:#b} against {b:#b}"));
            }
        }
    }
    Ok(())
}
