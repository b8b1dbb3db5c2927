//! Simple undirected graphs for the independent-set reduction.

use crate::error::{Error, Result};

/// An undirected graph with canonical `(u < v)` edges, no self-loops and no
/// duplicates. Edge order is preserved from construction; the reduction keys
/// its leader groups off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut canonical = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= num_vertices {
                return Err(Error::VertexOutOfRange { v: u, num_vertices });
            }
            if v >= num_vertices {
                return Err(Error::VertexOutOfRange { v, num_vertices });
            }
            if u == v {
                return Err(Error::SelfLoop { v });
            }
            canonical.push((u.min(v), u.max(v)));
        }
        let mut seen = canonical.clone();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge { u: w[0].0, v: w[0].1 });
        }
        Ok(Graph {
            num_vertices,
            edges: canonical,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Bitmask of neighbours per vertex; only valid for `num_vertices <= 32`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u32> {
        debug_assert!(self.num_vertices <= 32);
        let mut adj = vec![0u32; self.num_vertices];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_edge_order() {
        let g = Graph::new(3, vec![(2, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::new(2, vec![(0, 2)]),
            Err(Error::VertexOutOfRange { v: 2, .. })
        ));
        assert!(matches!(Graph::new(2, vec![(1, 1)]), Err(Error::SelfLoop { v: 1 })));
        assert!(matches!(
            Graph::new(3, vec![(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge { u: 0, v: 1 })
        ));
    }
}
