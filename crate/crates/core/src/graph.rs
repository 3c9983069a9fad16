//! Simple undirected graphs over contiguous `0..n` vertex ids, plus the
//! connectivity, contraction and ordering utilities the solvers build on.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Membership vector of length `n`. Panics if a member is `>= n`.
    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    /// Same set shifted to 1-based ids, for messages and reports.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Simple undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    // u < v, sorted lexicographically
    edges: Vec<(usize, usize)>,
    // sorted neighbor lists
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and ids `>= n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_edges(n, list))
    }

    /// Builds a graph dropping self-loops and merging parallel edges.
    /// Ids must be `< n`.
    pub fn simplified(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut list: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| {
                assert!(u < n && v < n, "edge ({u}, {v}) out of range");
                (u.min(v), u.max(v))
            })
            .collect();
        list.sort_unstable();
        list.dedup();
        Self::from_sorted_edges(n, list)
    }

    fn from_sorted_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        Self::simplified(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::simplified(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn complete(n: usize) -> Self {
        Self::simplified(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::simplified(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// `G[s]` relabelled to `0..|s|`, together with the new-to-old id map.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let mut pos = vec![usize::MAX; self.n];
        for (i, v) in s.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        (Graph::simplified(s.len(), edges), s.as_slice().to_vec())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Components of `g[allowed]`, each sorted, ordered by smallest member.
fn components_within(g: &Graph, allowed: &[bool]) -> Vec<VertexSet> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if !allowed[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if allowed[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.push(VertexSet::from(comp));
    }
    out
}

pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    components_within(g, &vec![true; g.n()])
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// Components of the induced subgraph `g[s]`.
pub fn components_of_subset(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    components_within(g, &s.to_mask(g.n()))
}

/// Whether `g[s]` has at most one component. Empty sets count as connected.
pub fn is_connected_subset(g: &Graph, s: &VertexSet) -> bool {
    let Some(start) = s.first() else {
        return true;
    };
    let inside = s.to_mask(g.n());
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == s.len()
}

pub fn is_vertex_cover(g: &Graph, s: &VertexSet) -> bool {
    let inside = s.to_mask(g.n());
    g.edges().iter().all(|&(u, v)| inside[u] || inside[v])
}

pub fn is_connected_vertex_cover(g: &Graph, s: &VertexSet) -> bool {
    is_vertex_cover(g, s) && is_connected_subset(g, s)
}

/// Records which original vertices each vertex of a contracted graph stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    preimage: Vec<VertexSet>,
    image: Vec<usize>,
}

impl ContractionMap {
    pub fn identity(n: usize) -> Self {
        ContractionMap {
            preimage: (0..n).map(VertexSet::singleton).collect(),
            image: (0..n).collect(),
        }
    }

    pub(crate) fn from_preimages(preimage: Vec<VertexSet>, original_n: usize) -> Self {
        let mut image = vec![usize::MAX; original_n];
        for (c, part) in preimage.iter().enumerate() {
            for v in part.iter() {
                image[v] = c;
            }
        }
        ContractionMap { preimage, image }
    }

    /// Original vertices merged into contracted vertex `c`.
    pub fn preimage(&self, c: usize) -> &VertexSet {
        &self.preimage[c]
    }

    pub fn preimages(&self) -> &[VertexSet] {
        &self.preimage
    }

    /// Contracted vertex containing original vertex `v`, if any.
    pub fn image(&self, v: usize) -> Option<usize> {
        self.image.get(v).copied().filter(|&c| c != usize::MAX)
    }

    pub fn len(&self) -> usize {
        self.preimage.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preimage.is_empty()
    }

    /// Union of preimages of a set of contracted vertices.
    pub fn lift(&self, s: &VertexSet) -> VertexSet {
        s.iter().flat_map(|c| self.preimage[c].iter()).collect()
    }
}

/// Contracts each part to a single vertex. Vertices outside every part stay
/// as singletons. Contracted vertices are numbered by their smallest original
/// member; loops are dropped and parallel edges merged.
pub fn contract(g: &Graph, parts: &[VertexSet]) -> Result<(Graph, ContractionMap)> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::invalid("contraction part is empty"));
        }
        for v in part.iter() {
            if v >= g.n() {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
            if owner[v] != usize::MAX {
                return Err(Error::invalid(format!(
                    "contraction parts overlap at vertex {v}"
                )));
            }
            owner[v] = i;
        }
    }

    let mut preimage = Vec::new();
    let mut emitted = vec![false; parts.len()];
    for v in g.vertices() {
        match owner[v] {
            usize::MAX => preimage.push(VertexSet::singleton(v)),
            p if !emitted[p] => {
                emitted[p] = true;
                preimage.push(parts[p].clone());
            }
            _ => {}
        }
    }
    let map = ContractionMap::from_preimages(preimage, g.n());
    let edges = g.edges().iter().map(|&(u, v)| (map.image[u], map.image[v]));
    Ok((Graph::simplified(map.len(), edges), map))
}

/// Spanning tree edges of a connected graph found by BFS from vertex 0.
fn spanning_tree_adjacency(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let mut tree = vec![Vec::new(); g.n()];
    if g.n() == 0 {
        return Ok(tree);
    }
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                tree[u].push(w);
                tree[w].push(u);
                queue.push_back(w);
            }
        }
    }
    if reached != g.n() {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}

/// Orders the vertices so that every suffix `{v_i, ..., v_n}` induces a
/// connected subgraph, by repeatedly peeling the lowest-id leaf of a BFS
/// spanning tree. The first vertex peeled comes first.
pub fn peel_order(g: &Graph) -> Result<Vec<usize>> {
    if g.n() == 0 {
        return Err(Error::invalid("empty graph has no vertex ordering"));
    }
    let tree = spanning_tree_adjacency(g)?;
    let mut degree: Vec<usize> = tree.iter().map(Vec::len).collect();
    let mut removed = vec![false; g.n()];
    let mut leaves: BTreeSet<usize> = g.vertices().filter(|&v| degree[v] <= 1).collect();
    let mut order = Vec::with_capacity(g.n());
    while let Some(v) = leaves.pop_first() {
        removed[v] = true;
        order.push(v);
        for &w in &tree[v] {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    leaves.insert(w);
                }
            }
        }
    }
    debug_assert_eq!(order.len(), g.n());
    Ok(order)
}

/// Like [`peel_order`], but the last `|w|` entries are exactly `w`, where
/// `w` must be a connected vertex cover of the connected graph `g`.
pub fn peel_order_with_suffix(g: &Graph, w: &VertexSet) -> Result<Vec<usize>> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    if w.iter().any(|v| v >= g.n()) {
        return Err(Error::invalid("suffix set has out-of-range vertices"));
    }
    if !is_connected_vertex_cover(g, w) {
        return Err(Error::invalid("suffix set is not a connected vertex cover"));
    }
    if w.is_empty() {
        // only a single vertex graph has an empty connected vertex cover
        return Ok(g.vertices().collect());
    }
    let mut order: Vec<usize> = g.vertices().filter(|&v| !w.contains(v)).collect();
    let (sub, back) = g.induced_subgraph(w);
    order.extend(peel_order(&sub)?.into_iter().map(|i| back[i]));
    Ok(order)
}

/// A rooted spanning tree given by parent pointers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub depth: Vec<usize>,
    /// Vertices in discovery order; parents precede children.
    pub preorder: Vec<usize>,
}

impl RootedTree {
    /// Vertices with at least one child.
    pub fn internal(&self) -> VertexSet {
        self.preorder
            .iter()
            .copied()
            .filter(|&v| !self.children[v].is_empty())
            .collect()
    }

    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        loop {
            if v == a {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }
}

/// Depth-first search tree from `root`, exploring neighbors in increasing id
/// order (the same tree a recursive DFS would produce).
pub fn dfs_tree(g: &Graph, root: usize) -> Result<RootedTree> {
    if root >= g.n() {
        return Err(Error::invalid(format!("root {root} out of range")));
    }
    let n = g.n();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut preorder = Vec::with_capacity(n);
    // (vertex, index of next neighbor to try)
    let mut stack = vec![(root, 0usize)];
    seen[root] = true;
    preorder.push(root);
    while let Some(top) = stack.last_mut() {
        let (u, next) = *top;
        let nbrs = g.neighbors(u);
        if next == nbrs.len() {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let w = nbrs[next];
        if !seen[w] {
            seen[w] = true;
            parent[w] = Some(u);
            children[u].push(w);
            depth[w] = depth[u] + 1;
            preorder.push(w);
            stack.push((w, 0));
        }
    }
    if preorder.len() != n {
        return Err(Error::Disconnected);
    }
    Ok(RootedTree {
        root,
        parent,
        children,
        depth,
        preorder,
    })
}
