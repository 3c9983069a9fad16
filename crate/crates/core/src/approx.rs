//! Linear-time 2-approximation: the internal nodes of a DFS tree.
//!
//! A DFS tree has no cross edges, so every edge joins a vertex to one of its
//! ancestors and is therefore covered by an internal node; the internal nodes
//! induce the connected tree minus its leaves. Matching every internal node
//! on the more populous parity level to one of its children gives a matching
//! of size at least half the output, which bounds the optimum from below.

use crate::error::{Error, Result};
use crate::graph::{dfs_tree, Graph, VertexSet};

/// Connected vertex cover of size at most twice the minimum, rooted at 0.
///
/// A single-vertex graph yields the empty set.
pub fn approx_cvc(g: &Graph) -> Result<VertexSet> {
    match g.n() {
        0 => Err(Error::invalid("empty graph")),
        1 => Ok(VertexSet::new()),
        _ => Ok(dfs_tree(g, 0)?.internal()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_connected, is_connected_vertex_cover};
    use crate::oracle;

    #[test]
    fn examples() {
        assert_eq!(approx_cvc(&Graph::path(2)).unwrap(), VertexSet::from([0]));
        assert_eq!(
            approx_cvc(&Graph::path(3)).unwrap(),
            VertexSet::from([0, 1])
        );
        // rooted at a leaf of K_{1,3}: leaf + center
        let star = Graph::new(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(approx_cvc(&star).unwrap(), VertexSet::from([0, 3]));
        assert_eq!(approx_cvc(&Graph::empty(1)).unwrap(), VertexSet::new());
        assert!(matches!(
            approx_cvc(&Graph::empty(3)),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn within_factor_two_on_small_graphs() {
        for n in 1..=5 {
            for g in oracle::enumerate_connected_graphs(n).unwrap() {
                let w = approx_cvc(&g).unwrap();
                assert!(is_connected(&g));
                assert!(is_connected_vertex_cover(&g, &w), "{g:?}");
                let best = oracle::brute_force(&g, None, n).unwrap().min_size.unwrap();
                assert!(w.len() <= 2 * best, "{g:?}: {} vs {best}", w.len());
            }
        }
    }
}
