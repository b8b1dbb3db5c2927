//! Seeded random instance generation for property tests and benchmarks.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{validate_instance, Instance, RawInstance, RawWeight};

/// Parameters for [`gen_random`]. All ranges are inclusive.
#[derive(Debug, Clone)]
pub struct GenParams {
    pub n: usize,
    pub k_l: usize,
    pub k_f: usize,
    pub leader_budget_range: (u64, u64),
    pub follower_budget_range: (u64, u64),
    pub weight_range: (u64, u64),
    /// Draw weights as a sample of distinct integers, enabling the premise of
    /// the greedy exactness guarantee.
    pub distinct_weights: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 8,
            k_l: 2,
            k_f: 2,
            leader_budget_range: (0, 3),
            follower_budget_range: (0, 3),
            weight_range: (0, 20),
            distinct_weights: false,
        }
    }
}

fn check(params: &GenParams) -> Result<()> {
    let fail = |msg: String| Err(Error::InfeasibleParams(msg));
    if params.n == 0 {
        return fail("n must be positive".into());
    }
    if params.k_l == 0 || params.k_l > params.n {
        return fail(format!("k_l = {} must be in 1..={}", params.k_l, params.n));
    }
    if params.k_f == 0 || params.k_f > params.n {
        return fail(format!("k_f = {} must be in 1..={}", params.k_f, params.n));
    }
    for (name, (lo, hi)) in [
        ("leader_budget_range", params.leader_budget_range),
        ("follower_budget_range", params.follower_budget_range),
        ("weight_range", params.weight_range),
    ] {
        if lo > hi {
            return fail(format!("{name} is empty: ({lo}, {hi})"));
        }
    }
    if params.distinct_weights {
        let span = params.weight_range.1 - params.weight_range.0 + 1;
        if (span as u128) < params.n as u128 {
            return fail(format!(
                "distinct weights need a range of at least {} values, got {span}",
                params.n
            ));
        }
    }
    Ok(())
}

/// Random assignment of `0..n` to `k` groups, then repair so no group is
/// empty: each empty group takes one element from the first group holding at
/// least two.
fn random_partition(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut groups = vec![Vec::new(); k];
    for i in 0..n {
        groups[rng.gen_range(0..k)].push(i);
    }
    for empty in 0..k {
        if groups[empty].is_empty() {
            let donor = (0..k)
                .find(|&g| groups[g].len() >= 2)
                .expect("n >= k guarantees a donor");
            let moved = groups[donor].pop().unwrap();
            groups[empty].push(moved);
        }
    }
    groups
}

/// Deterministic seeded instance generation; identical parameters and seed
/// always produce an identical instance.
pub fn gen_random(params: &GenParams, seed: u64) -> Result<Instance> {
    check(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let weights: Vec<u64> = if params.distinct_weights {
        let (lo, hi) = params.weight_range;
        let span = (hi - lo + 1) as usize;
        rand::seq::index::sample(&mut rng, span, params.n)
            .into_iter()
            .map(|offset| lo + offset as u64)
            .collect()
    } else {
        let (lo, hi) = params.weight_range;
        (0..params.n).map(|_| rng.gen_range(lo..=hi)).collect()
    };

    let leader_groups = random_partition(&mut rng, params.n, params.k_l);
    let follower_groups = random_partition(&mut rng, params.n, params.k_f);
    let leader_budgets = (0..params.k_l)
        .map(|_| rng.gen_range(params.leader_budget_range.0..=params.leader_budget_range.1))
        .collect();
    let follower_budgets = (0..params.k_f)
        .map(|_| rng.gen_range(params.follower_budget_range.0..=params.follower_budget_range.1))
        .collect();

    let mut meta = BTreeMap::new();
    meta.insert("generator".into(), "random".into());
    meta.insert("seed".into(), seed.to_string());
    meta.insert(
        "weights_distinct".into(),
        params.distinct_weights.to_string(),
    );

    validate_instance(RawInstance {
        n: params.n,
        weights: weights.iter().map(|&w| RawWeight::Integer(w as i64)).collect(),
        leader_groups,
        leader_budgets,
        follower_groups,
        follower_budgets,
        meta,
    })
}
