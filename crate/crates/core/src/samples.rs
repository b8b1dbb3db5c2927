//! Small named instances used throughout the tests, fixtures and docs.

use crate::graph::Graph;
use crate::model::Instance;

/// Five elements with weights `1..=5`; leader groups `{0,1}`, `{2,3,4}` and
/// follower groups `{1,2}`, `{0,3,4}`, all budgets 1. The optimal blocking
/// decision is `(0,1,1,0,0)` with objective 5.
pub fn figure1_instance() -> Instance {
    Instance::with_integer_weights(
        &[1, 2, 3, 4, 5],
        vec![vec![0, 1], vec![2, 3, 4]],
        vec![1, 1],
        vec![vec![1, 2], vec![0, 3, 4]],
        vec![1, 1],
    )
    .expect("sample instance is valid")
}

/// The greedy worst-case family: weights `(1, 2, 3, m, m)`, follower groups
/// `{0,1,2}` and `{3,4}` with budget 1 each, one uniform leader group with
/// budget 2. The optimum blocks both `m`-elements for objective 3, while the
/// greedy solver walks to objective `m + 1`.
pub fn example1_instance(m: u64) -> Instance {
    let mut instance = Instance::with_integer_weights(
        &[1, 2, 3, m, m],
        vec![vec![0, 1, 2, 3, 4]],
        vec![2],
        vec![vec![0, 1, 2], vec![3, 4]],
        vec![1, 1],
    )
    .expect("sample instance is valid");
    instance
        .meta_mut()
        .insert("weights_distinct".into(), "false".into());
    instance
}

/// The 4-cycle `v0-v1-v2-v3-v0` with edges ordered `(0,1), (1,2), (2,3),
/// (0,3)`. Its maximum independent set has size 2.
pub fn cycle4_graph() -> Graph {
    Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).expect("sample graph is valid")
}
