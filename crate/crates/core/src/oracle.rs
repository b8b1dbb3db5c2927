//! Brute-force ground-truth solvers.
//!
//! These exist to validate every other solver, so they stay deliberately
//! naive: the full oracle enumerates both players exhaustively and never
//! reuses the sorted-greedy argument for the follower side; the leader oracle
//! enumerates only the leader and prices each decision with the exact
//! follower response. Both return the lexicographically smallest optimal
//! blocking decision for reproducible fixtures.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{BlockingDecision, SolveResult, SolverKind, SortedInstance};

/// Size caps for the oracles. Configuration values rather than constants so
/// test suites can tighten them.
#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Hard cap on `n` for the doubly-exhaustive oracle.
    pub max_full_n: usize,
    /// Cap on the number of feasible leader decisions enumerated.
    pub max_leader_decisions: u64,
    /// Cap on vertices for the brute-force independent set solver.
    pub max_mis_vertices: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_full_n: 16,
            max_leader_decisions: 10_000_000,
            max_mis_vertices: 20,
        }
    }
}

/// True iff binary vector `a` precedes `b` lexicographically (bit `i` of a
/// mask is element `i`).
fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    if d == 0 {
        return false;
    }
    a >> d.trailing_zeros() & 1 == 0
}

fn mask_to_decision(mask: u64, n: usize) -> BlockingDecision {
    BlockingDecision::from_bits((0..n).map(|i| mask >> i & 1 == 1).collect())
}

/// Exhaustive min-max: enumerates every feasible leader mask, and for each of
/// them every follower selection among the unblocked elements.
pub fn solve_oracle_full(sorted: &SortedInstance) -> Result<SolveResult> {
    solve_oracle_full_with(sorted, &OracleConfig::default())
}

pub fn solve_oracle_full_with(
    sorted: &SortedInstance,
    config: &OracleConfig,
) -> Result<SolveResult> {
    let n = sorted.n();
    let cap = config.max_full_n.min(20); // value table is 2^n entries
    if n > cap {
        return Err(Error::TooLarge {
            what: "ground set size",
            value: n as u128,
            cap: cap as u128,
        });
    }
    let instance = sorted.base();

    let leader_masks: Vec<u64> = (0..instance.num_leader_groups())
        .map(|k| {
            instance.leader_groups()[k]
                .iter()
                .fold(0u64, |m, &i| m | 1 << i)
        })
        .collect();
    let follower_masks: Vec<u64> = (0..instance.num_follower_groups())
        .map(|k| {
            instance.follower_groups()[k]
                .iter()
                .fold(0u64, |m, &i| m | 1 << i)
        })
        .collect();

    // value[mask] = total scaled weight of the elements in mask
    let mut value = vec![0i64; 1 << n];
    for mask in 1..1u64 << n {
        let low = mask.trailing_zeros() as usize;
        value[mask as usize] =
            value[(mask & (mask - 1)) as usize] + sorted.scaled_weight_of(low);
    }

    let leader_feasible = |x: u64| {
        leader_masks
            .iter()
            .zip(instance.leader_budgets())
            .all(|(m, &l)| (x & m).count_ones() as u64 <= l)
    };
    let follower_feasible = |y: u64| {
        follower_masks
            .iter()
            .zip(instance.follower_budgets())
            .all(|(m, &f)| (y & m).count_ones() as u64 <= f)
    };

    let full = (1u64 << n) - 1;
    let mut best_value = i64::MAX;
    let mut best_mask = 0u64;
    for x in 0..1u64 << n {
        if !leader_feasible(x) {
            continue;
        }
        let free = full & !x;
        let mut best_y = 0i64;
        let mut y = free;
        loop {
            if follower_feasible(y) {
                best_y = best_y.max(value[y as usize]);
            }
            if y == 0 {
                break;
            }
            y = (y - 1) & free;
        }
        if best_y < best_value || (best_y == best_value && lex_less(x, best_mask)) {
            best_value = best_y;
            best_mask = x;
        }
    }

    let result =
        SolveResult::from_decision(sorted, mask_to_decision(best_mask, n), SolverKind::OracleFull)?;
    assert_eq!(
        result.objective, best_value,
        "follower best response disagrees with exhaustive enumeration"
    );
    Ok(result)
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All subset masks of `members` with at most `cap` elements.
fn subsets_up_to(members: &[usize], cap: u64) -> Vec<u64> {
    let mut out = vec![0u64];
    let mut current = Vec::new();
    fn rec(members: &[usize], start: usize, left: u64, current: &mut Vec<usize>, out: &mut Vec<u64>) {
        if left == 0 {
            return;
        }
        for idx in start..members.len() {
            current.push(members[idx]);
            out.push(current.iter().fold(0u64, |m, &i| m | 1 << i));
            rec(members, idx + 1, left - 1, current, out);
            current.pop();
        }
    }
    rec(members, 0, cap, &mut current, &mut out);
    out
}

/// Follower's optimal value against a blocked mask, by per-group greedy over
/// the sorted view.
fn psi_mask(sorted: &SortedInstance, x: u64) -> i64 {
    let instance = sorted.base();
    let mut total = 0i64;
    for k in 0..instance.num_follower_groups() {
        let budget = instance.follower_budgets()[k];
        if budget == 0 {
            continue;
        }
        let mut taken = 0u64;
        for &pos in sorted.follower_positions(k).iter().rev() {
            if x >> sorted.original_of(pos) & 1 == 0 {
                total += sorted.weight_at(pos);
                taken += 1;
                if taken == budget {
                    break;
                }
            }
        }
    }
    total
}

/// Enumerates feasible leader decisions as per-group combinations composed in
/// group order; the follower side is priced by the exact block-diagonal
/// response. Agrees with [`solve_oracle_full`] wherever both apply.
pub fn solve_oracle_leader(sorted: &SortedInstance) -> Result<SolveResult> {
    solve_oracle_leader_with(sorted, &OracleConfig::default())
}

pub fn solve_oracle_leader_with(
    sorted: &SortedInstance,
    config: &OracleConfig,
) -> Result<SolveResult> {
    let n = sorted.n();
    if n > 63 {
        return Err(Error::TooLarge {
            what: "ground set size",
            value: n as u128,
            cap: 63,
        });
    }
    let instance = sorted.base();

    let mut total_decisions: u128 = 1;
    for (group, &budget) in instance.leader_groups().iter().zip(instance.leader_budgets()) {
        let per_group: u128 = (0..=budget).map(|j| binomial(group.len() as u64, j)).sum();
        total_decisions = total_decisions.saturating_mul(per_group);
    }
    if total_decisions > config.max_leader_decisions as u128 {
        return Err(Error::TooLarge {
            what: "feasible leader decisions",
            value: total_decisions,
            cap: config.max_leader_decisions as u128,
        });
    }

    let group_choices: Vec<Vec<u64>> = instance
        .leader_groups()
        .iter()
        .zip(instance.leader_budgets())
        .map(|(group, &budget)| subsets_up_to(group, budget))
        .collect();

    let mut best_value = i64::MAX;
    let mut best_mask = 0u64;
    let mut cursor = vec![0usize; group_choices.len()];
    loop {
        let x = cursor
            .iter()
            .zip(&group_choices)
            .fold(0u64, |m, (&c, choices)| m | choices[c]);
        let value = psi_mask(sorted, x);
        if value < best_value || (value == best_value && lex_less(x, best_mask)) {
            best_value = value;
            best_mask = x;
        }
        // odometer over group choice indices
        let mut done = true;
        for (c, choices) in cursor.iter_mut().zip(&group_choices).rev() {
            *c += 1;
            if *c < choices.len() {
                done = false;
                break;
            }
            *c = 0;
        }
        if done {
            break;
        }
    }

    let result = SolveResult::from_decision(
        sorted,
        mask_to_decision(best_mask, n),
        SolverKind::OracleLeader,
    )?;
    assert_eq!(
        result.objective, best_value,
        "follower best response disagrees with leader-enumeration pricing"
    );
    Ok(result)
}

/// A maximum independent set, by exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisResult {
    pub size: usize,
    /// One maximum independent set; the first encountered in increasing mask
    /// order, i.e. the one using the smallest vertex indices.
    pub witness: Vec<usize>,
}

pub fn mis_brute_force(graph: &Graph) -> Result<MisResult> {
    mis_brute_force_with(graph, &OracleConfig::default())
}

pub fn mis_brute_force_with(graph: &Graph, config: &OracleConfig) -> Result<MisResult> {
    let v = graph.num_vertices();
    let cap = config.max_mis_vertices.min(31);
    if v > cap {
        return Err(Error::TooLarge {
            what: "graph vertices",
            value: v as u128,
            cap: cap as u128,
        });
    }
    let adj = graph.adjacency_masks();
    let mut best_size = 0usize;
    let mut best_mask = 0u32;
    for mask in 0u32..1 << v {
        let size = mask.count_ones() as usize;
        if size <= best_size {
            continue;
        }
        let independent = (0..v).all(|u| mask >> u & 1 == 0 || adj[u] & mask == 0);
        if independent {
            best_size = size;
            best_mask = mask;
        }
    }
    Ok(MisResult {
        size: best_size,
        witness: (0..v).filter(|&u| best_mask >> u & 1 == 1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::sort_weights;
    use crate::samples::{cycle4_graph, example1_instance, figure1_instance};

    #[test]
    fn figure1_optimum() {
        let sorted = sort_weights(figure1_instance()).unwrap();
        let full = solve_oracle_full(&sorted).unwrap();
        assert_eq!(full.objective, 5);
        assert_eq!(full.x_opt.bits(), &[false, true, true, false, false]);
        assert_eq!(full.response.y, vec![false, false, false, false, true]);

        let leader = solve_oracle_leader(&sorted).unwrap();
        assert_eq!(leader.objective, 5);
        assert_eq!(leader.x_opt, full.x_opt);
    }

    #[test]
    fn example1_optimum() {
        let sorted = sort_weights(example1_instance(100)).unwrap();
        let full = solve_oracle_full(&sorted).unwrap();
        assert_eq!(full.objective, 3);
        assert_eq!(full.x_opt.blocked_indices(), vec![3, 4]);
    }

    #[test]
    fn zero_leader_budgets_leave_follower_unblocked() {
        let instance = Instance::with_integer_weights(
            &[4, 1, 7, 2],
            vec![vec![0, 1], vec![2, 3]],
            vec![0, 0],
            vec![vec![0, 2], vec![1, 3]],
            vec![1, 1],
        )
        .unwrap();
        let sorted = sort_weights(instance).unwrap();
        let result = solve_oracle_full(&sorted).unwrap();
        assert_eq!(result.objective, 7 + 2);
        assert!(result.x_opt.blocked_indices().is_empty());
    }

    use crate::model::Instance;

    #[test]
    fn zero_weights_solve_to_zero() {
        let instance = Instance::with_integer_weights(
            &[0, 0, 0],
            vec![vec![0, 1, 2]],
            vec![1],
            vec![vec![0], vec![1, 2]],
            vec![1, 2],
        )
        .unwrap();
        let sorted = sort_weights(instance).unwrap();
        assert_eq!(solve_oracle_leader(&sorted).unwrap().objective, 0);
    }

    #[test]
    fn oracles_agree_on_seeded_instances() {
        use crate::generator::{gen_random, GenParams};
        for seed in 0..40 {
            let params = GenParams {
                n: 4 + (seed as usize % 7),
                k_l: 1 + (seed as usize % 3),
                k_f: 1 + (seed as usize / 2 % 3),
                ..GenParams::default()
            };
            let instance = gen_random(&params, seed).unwrap();
            let sorted = sort_weights(instance).unwrap();
            let full = solve_oracle_full(&sorted).unwrap();
            let leader = solve_oracle_leader(&sorted).unwrap();
            assert_eq!(full.objective, leader.objective, "seed {seed}");
            assert!(full.x_opt.is_feasible(sorted.base()));
            assert!(leader.x_opt.is_feasible(sorted.base()));
        }
    }

    #[test]
    fn caps_are_enforced() {
        let instance = Instance::with_integer_weights(
            &[1; 8],
            vec![(0..8).collect()],
            vec![2],
            vec![(0..8).collect()],
            vec![2],
        )
        .unwrap();
        let sorted = sort_weights(instance).unwrap();
        let tight = OracleConfig {
            max_full_n: 4,
            max_leader_decisions: 10,
            max_mis_vertices: 3,
        };
        assert!(matches!(
            solve_oracle_full_with(&sorted, &tight),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            solve_oracle_leader_with(&sorted, &tight),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            mis_brute_force_with(&cycle4_graph(), &tight),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn mis_known_graphs() {
        let c4 = mis_brute_force(&cycle4_graph()).unwrap();
        assert_eq!(c4.size, 2);
        assert_eq!(c4.witness, vec![0, 2]);

        let edgeless = Graph::new(5, vec![]).unwrap();
        assert_eq!(mis_brute_force(&edgeless).unwrap().size, 5);

        let k4 = Graph::new(
            4,
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(mis_brute_force(&k4).unwrap().size, 1);
    }
}
