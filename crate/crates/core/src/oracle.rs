//! Exhaustive reference implementations used to check the fast solvers, and
//! the empirical checks of the component bound
//!
//! ```text
//! Σ_{V1 vertex cover of G} 2^{|cc(G[V1])|} <= 3 · 2^{|V| - 1}   (G connected)
//! ```
//!
//! which caps the total Steiner work of one compression step.
//!
//! Everything here works on bit masks and deliberately shares no code with
//! the solvers it checks.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{components_of_subset, Graph, RootedTree, VertexSet};
use crate::steiner::SteinerInstance;
use crate::Count;

/// Largest graph [`brute_force`] accepts by default.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

/// Largest graph [`enumerate_connected_graphs`] accepts.
pub const MAX_ENUMERATION_N: usize = 7;

const MAX_BOUND_N: usize = 24;
const MAX_PHI_N: usize = 12;

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn mask_is_cover(g: &Graph, mask: u64) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| mask & (1 << u) != 0 || mask & (1 << v) != 0)
}

/// Number of components of the subgraph induced by `mask`.
fn mask_components(adj: &[u64], mask: u64) -> u32 {
    let mut left = mask;
    let mut count = 0;
    while left != 0 {
        count += 1;
        let mut comp = left & left.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & mask & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        left &= !comp;
    }
    count
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForce {
    /// Smallest connected vertex cover of size at most `k`.
    pub min_size: Option<usize>,
    /// Least weight over connected vertex covers of size at most `k`.
    pub min_weight: Option<f64>,
    /// Number of connected vertex covers of size at most `k`.
    pub count: Count,
}

/// Enumerates all `2^n` vertex subsets. `weights = None` means unit weights.
pub fn brute_force(g: &Graph, weights: Option<&[f64]>, k: usize) -> Result<BruteForce> {
    brute_force_capped(g, weights, k, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_capped(
    g: &Graph,
    weights: Option<&[f64]>,
    k: usize,
    cap: usize,
) -> Result<BruteForce> {
    let n = g.n();
    if n > cap.min(63) {
        return Err(Error::resource(format!(
            "brute force over {n} vertices exceeds the cap of {cap}"
        )));
    }
    if let Some(w) = weights {
        if w.len() != n {
            return Err(Error::invalid("weight vector length differs from n"));
        }
    }
    let adj = adjacency_masks(g);
    let mut min_size: Option<usize> = None;
    let mut min_weight: Option<f64> = None;
    let mut count = 0u64;
    for mask in 0..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size > k || !mask_is_cover(g, mask) || mask_components(&adj, mask) > 1 {
            continue;
        }
        count += 1;
        let weight: f64 = match weights {
            Some(w) => (0..n).filter(|&v| mask & (1 << v) != 0).map(|v| w[v]).sum(),
            None => size as f64,
        };
        min_size = Some(min_size.map_or(size, |s| s.min(size)));
        min_weight = Some(min_weight.map_or(weight, |w| w.min(weight)));
    }
    Ok(BruteForce {
        min_size,
        min_weight,
        count: Count::from(count),
    })
}

/// Exhaustive bipartite Steiner search over all nonterminal subsets of size
/// at most `k`. Returns the least weight with one optimal set of positions,
/// and the number of connecting sets.
pub fn brute_force_steiner(inst: &SteinerInstance, k: usize) -> (Option<(f64, Vec<usize>)>, Count) {
    let u = inst.nonterminals().len();
    assert!(u < 32, "too many nonterminals for exhaustive search");
    let full = inst.full_mask();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut count = 0u64;
    for pick in 0u32..(1 << u) {
        if pick.count_ones() as usize > k {
            continue;
        }
        let chosen: Vec<usize> = (0..u).filter(|&i| pick & (1 << i) != 0).collect();
        // flood from the first terminal across chosen nonterminals
        let mut reached = 1u64;
        let mut used = 0u32;
        loop {
            let before = (reached, used);
            for &i in &chosen {
                if inst.neighborhood(i) & reached != 0 {
                    reached |= inst.neighborhood(i);
                    used |= 1 << i;
                }
            }
            if (reached, used) == before {
                break;
            }
        }
        if reached != full || used != pick {
            continue;
        }
        count += 1;
        let weight: f64 = chosen.iter().map(|&i| inst.weight(i)).sum();
        if best.as_ref().is_none_or(|(w, _)| weight < *w) {
            best = Some((weight, chosen));
        }
    }
    (best, Count::from(count))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBound {
    pub sum: Count,
    pub bound: Count,
    pub holds: bool,
}

/// Sums `2^{|cc(G[V1])|}` over all vertex covers `V1` of a connected graph
/// and compares against `3 · 2^{n-1}`.
pub fn check_component_bound(g: &Graph) -> Result<ComponentBound> {
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("bound needs at least one vertex"));
    }
    if n > MAX_BOUND_N {
        return Err(Error::resource(format!(
            "bound check over {n} vertices exceeds the cap of {MAX_BOUND_N}"
        )));
    }
    let adj = adjacency_masks(g);
    let all = (1u64 << n) - 1;
    if mask_components(&adj, all) != 1 {
        return Err(Error::Disconnected);
    }
    let mut sum = Count::zero();
    for mask in 0..=all {
        if mask_is_cover(g, mask) {
            sum += Count::from(1u64) << mask_components(&adj, mask);
        }
    }
    let bound = Count::from(3u32) << (n - 1);
    Ok(ComponentBound {
        holds: sum <= bound,
        sum,
        bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootLabel {
    /// Root is in `V1` and its component is chosen.
    InIn,
    /// Root is in `V1`, component not chosen.
    InOut,
    /// Root is outside `V1`.
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchLabel {
    A,
    B,
}

/// Encoding of a (vertex cover, chosen components) pair relative to a rooted
/// spanning tree: three choices at the root, two everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhiPrimeCode {
    pub root_label: RootLabel,
    /// Indexed by vertex; `None` exactly at the root.
    pub labels: Vec<Option<BranchLabel>>,
}

/// Encodes `(v1, chosen)` top-down along `tree`.
///
/// For a non-root `v` with parent `p`: if `p ∈ v1` the label records whether
/// `v ∈ v1`; otherwise `v ∈ v1` is forced by the tree edge and the label
/// records whether `v`'s component is chosen.
pub fn phi_prime_encode(
    g: &Graph,
    tree: &RootedTree,
    v1: &VertexSet,
    chosen: &[VertexSet],
) -> Result<PhiPrimeCode> {
    let n = g.n();
    if tree.parent.len() != n || tree.preorder.len() != n {
        return Err(Error::invalid("tree does not span the graph"));
    }
    if v1.iter().any(|v| v >= n) {
        return Err(Error::invalid("cover has out-of-range vertices"));
    }
    let in_v1 = v1.to_mask(n);
    if g.edges().iter().any(|&(u, v)| !in_v1[u] && !in_v1[v]) {
        return Err(Error::invalid("V1 is not a vertex cover"));
    }
    let comps = components_of_subset(g, v1);
    let mut comp_of = vec![usize::MAX; n];
    for (i, c) in comps.iter().enumerate() {
        for v in c.iter() {
            comp_of[v] = i;
        }
    }
    let mut is_chosen = vec![false; comps.len()];
    for c in chosen {
        let idx = comps
            .iter()
            .position(|x| x == c)
            .ok_or_else(|| Error::invalid(format!("{c:?} is not a component of G[V1]")))?;
        is_chosen[idx] = true;
    }
    let picked = |v: usize| is_chosen[comp_of[v]];

    let root = tree.root;
    let root_label = match (in_v1[root], in_v1[root] && picked(root)) {
        (false, _) => RootLabel::Out,
        (true, true) => RootLabel::InIn,
        (true, false) => RootLabel::InOut,
    };
    let mut labels = vec![None; n];
    for &v in &tree.preorder {
        let Some(p) = tree.parent[v] else { continue };
        let a = if in_v1[p] {
            in_v1[v]
        } else {
            debug_assert!(in_v1[v]);
            picked(v)
        };
        labels[v] = Some(if a { BranchLabel::A } else { BranchLabel::B });
    }
    Ok(PhiPrimeCode { root_label, labels })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Injectivity {
    /// Number of (cover, chosen components) pairs encoded.
    pub pairs: u64,
    /// Number of distinct codes among them.
    pub distinct: u64,
}

impl Injectivity {
    pub fn collisions(&self) -> u64 {
        self.pairs - self.distinct
    }
}

/// Encodes every pair for a connected graph over `dfs_tree(g, 0)` and counts
/// distinct codes.
pub fn check_phi_prime_injectivity(g: &Graph) -> Result<Injectivity> {
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("graph has no vertices"));
    }
    if n > MAX_PHI_N {
        return Err(Error::resource(format!(
            "injectivity check over {n} vertices exceeds the cap of {MAX_PHI_N}"
        )));
    }
    let tree = crate::graph::dfs_tree(g, 0)?;
    let mut codes = HashSet::new();
    let mut pairs = 0u64;
    for mask in 0u64..(1 << n) {
        if !mask_is_cover(g, mask) {
            continue;
        }
        let v1: VertexSet = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let comps = components_of_subset(g, &v1);
        for pick in 0u64..(1 << comps.len()) {
            let chosen: Vec<VertexSet> = comps
                .iter()
                .enumerate()
                .filter(|(i, _)| pick & (1 << i) != 0)
                .map(|(_, c)| c.clone())
                .collect();
            codes.insert(phi_prime_encode(g, &tree, &v1, &chosen)?);
            pairs += 1;
        }
    }
    Ok(Injectivity {
        pairs,
        distinct: codes.len() as u64,
    })
}

/// Every labeled connected simple graph on `n` vertices, each exactly once.
pub fn enumerate_connected_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::resource(format!(
            "enumeration over {n} vertices exceeds the cap of {MAX_ENUMERATION_N}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = if n == 0 { 0 } else { 1u64 << pairs.len() };
    Ok((0..total).filter_map(move |bits| {
        let mut adj = vec![0u64; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if bits & (1 << i) != 0 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        if mask_components(&adj, (1 << n) - 1) != 1 {
            return None;
        }
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits & (1 << i) != 0)
            .map(|(_, &e)| e);
        Some(Graph::simplified(n, edges))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::dfs_tree;

    fn vs<const N: usize>(a: [usize; N]) -> VertexSet {
        VertexSet::from(a)
    }

    #[test]
    fn brute_force_examples() {
        let p3 = brute_force(&Graph::path(3), None, 2).unwrap();
        assert_eq!((p3.min_size, p3.min_weight), (Some(1), Some(1.0)));
        assert_eq!(p3.count, Count::from(3u32));

        let k2 = brute_force(&Graph::path(2), None, 2).unwrap();
        assert_eq!((k2.min_size, k2.min_weight), (Some(1), Some(1.0)));
        assert_eq!(k2.count, Count::from(3u32));

        let c4 = brute_force(&Graph::cycle(4), None, 3).unwrap();
        assert_eq!((c4.min_size, c4.min_weight), (Some(3), Some(3.0)));
        assert_eq!(c4.count, Count::from(4u32));
    }

    #[test]
    fn brute_force_weighted_and_capped() {
        let r = brute_force(&Graph::path(3), Some(&[1.0, 5.0, 1.0]), 2).unwrap();
        assert_eq!(r.min_weight, Some(5.0));
        assert!(matches!(
            brute_force(&Graph::empty(21), None, 3),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn brute_force_is_self_consistent() {
        for n in 1..=5 {
            for g in enumerate_connected_graphs(n).unwrap() {
                for k in 0..=n {
                    let r = brute_force(&g, None, k).unwrap();
                    assert_eq!(r.count.is_zero(), r.min_size.is_none());
                    assert_eq!(r.min_size.map(|s| s as f64), r.min_weight);
                }
            }
        }
    }

    #[test]
    fn component_bound_examples() {
        let check = |g: Graph, sum: u32, bound: u32| {
            let r = check_component_bound(&g).unwrap();
            assert_eq!(r.sum, Count::from(sum));
            assert_eq!(r.bound, Count::from(bound));
            assert!(r.holds);
        };
        check(Graph::empty(1), 3, 3);
        check(Graph::path(2), 6, 6);
        check(Graph::complete(3), 8, 12);
        assert!(matches!(
            check_component_bound(&Graph::empty(2)),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn stars_meet_the_bound() {
        for (leaves, expect) in [(0usize, 3u32), (1, 6), (2, 12), (3, 24), (4, 48), (5, 96)] {
            let r = check_component_bound(&Graph::star(leaves)).unwrap();
            assert_eq!(r.sum, Count::from(expect));
            assert_eq!(r.sum, r.bound);
        }
    }

    #[test]
    fn phi_prime_examples() {
        use BranchLabel::*;
        let k2 = Graph::path(2);
        let t = dfs_tree(&k2, 0).unwrap();
        let code = phi_prime_encode(&k2, &t, &vs([0]), &[vs([0])]).unwrap();
        assert_eq!(code.root_label, RootLabel::InIn);
        assert_eq!(code.labels, vec![None, Some(B)]);

        let code = phi_prime_encode(&k2, &t, &vs([1]), &[]).unwrap();
        assert_eq!(code.root_label, RootLabel::Out);
        assert_eq!(code.labels, vec![None, Some(B)]);

        let p3 = Graph::path(3);
        let t = dfs_tree(&p3, 0).unwrap();
        let code = phi_prime_encode(&p3, &t, &vs([0, 2]), &[vs([2])]).unwrap();
        assert_eq!(code.root_label, RootLabel::InOut);
        assert_eq!(code.labels, vec![None, Some(B), Some(A)]);
    }

    #[test]
    fn phi_prime_rejects_non_covers_and_foreign_components() {
        let p3 = Graph::path(3);
        let t = dfs_tree(&p3, 0).unwrap();
        assert!(phi_prime_encode(&p3, &t, &vs([0]), &[]).is_err());
        assert!(phi_prime_encode(&p3, &t, &vs([0, 2]), &[vs([0, 2])]).is_err());
    }

    #[test]
    fn phi_prime_is_injective_on_small_graphs() {
        for n in 1..=4 {
            for g in enumerate_connected_graphs(n).unwrap() {
                let r = check_phi_prime_injectivity(&g).unwrap();
                assert_eq!(r.collisions(), 0, "{g:?}");
                let bound = check_component_bound(&g).unwrap();
                assert_eq!(Count::from(r.pairs), bound.sum);
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        // labeled connected graphs: OEIS A001187
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_connected_graphs(n).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
        assert!(enumerate_connected_graphs(8).is_err());
    }

    #[test]
    fn steiner_oracle_sanity() {
        let inst =
            SteinerInstance::from_masks(vec![0, 1], [(5, 0b11, 2.0), (6, 0b01, 1.0)]).unwrap();
        let (best, count) = brute_force_steiner(&inst, 2);
        assert_eq!(best, Some((2.0, vec![0])));
        assert_eq!(count, Count::from(2u32));
    }
}
