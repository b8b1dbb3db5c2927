//! Hardness-reduction instance generation.
//!
//! Maps a maximum-independent-set question `MIS(G) >= q` to an interdiction
//! threshold question: over the ground set of (vertex, edge) pairs with
//! incidence-indicator weights, one leader group per edge and one follower
//! group per vertex (all budgets 1), the graph has an independent set of size
//! `q` iff the interdiction optimum is at most `|V| - q`.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{validate_instance, Instance, RawInstance, RawWeight};

/// A reduced instance together with its decision threshold.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub instance: Instance,
    /// The "yes" bar: the source question answers yes iff the interdiction
    /// optimum is at most this value.
    pub threshold: usize,
}

/// Index of the (vertex, edge) pair in the vertex-major element layout.
pub fn pair_index(v: usize, e: usize, num_edges: usize) -> usize {
    v * num_edges + e
}

/// Builds the interdiction instance equivalent to "does `graph` contain an
/// independent set of at least `q` vertices?".
pub fn reduce_mis(graph: &Graph, q: usize) -> Result<ReducedInstance> {
    let num_v = graph.num_vertices();
    let num_e = graph.num_edges();
    if num_e == 0 {
        return Err(Error::EdgelessGraph);
    }
    if q > num_v {
        return Err(Error::QOutOfRange {
            q,
            num_vertices: num_v,
        });
    }

    let n = num_v * num_e;
    let mut weights = vec![RawWeight::Integer(0); n];
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        weights[pair_index(u, e, num_e)] = RawWeight::Integer(1);
        weights[pair_index(v, e, num_e)] = RawWeight::Integer(1);
    }

    let leader_groups: Vec<Vec<usize>> = (0..num_e)
        .map(|e| (0..num_v).map(|v| pair_index(v, e, num_e)).collect())
        .collect();
    let follower_groups: Vec<Vec<usize>> = (0..num_v)
        .map(|v| (0..num_e).map(|e| pair_index(v, e, num_e)).collect())
        .collect();

    let mut raw = RawInstance {
        n,
        weights,
        leader_groups,
        leader_budgets: vec![1; num_e],
        follower_groups,
        follower_budgets: vec![1; num_v],
        ..RawInstance::default()
    };
    raw.meta.insert("kind".into(), "mis-reduction".into());
    raw.meta.insert("layout".into(), "vertex-major".into());
    raw.meta.insert("num_vertices".into(), num_v.to_string());
    raw.meta.insert("num_edges".into(), num_e.to_string());
    raw.meta.insert("q".into(), q.to_string());
    // binary weights always repeat, so greedy exactness harnesses must skip
    raw.meta.insert("weights_distinct".into(), "false".into());

    Ok(ReducedInstance {
        instance: validate_instance(raw)?,
        threshold: num_v - q,
    })
}
