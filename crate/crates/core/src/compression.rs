//! The compression step: given a connected vertex cover `Z` of a connected
//! graph, find a minimum-weight connected vertex cover of size at most `k`
//! (or count all of them).
//!
//! Every solution `S` is classified by `Z1 = S ∩ Z`. Fixing `Z1` (and so
//! `Z0 = Z \ Z1`) forces `V1`, the outside vertices with a neighbor in `Z0`,
//! into `S`; what remains is choosing `X ⊆ V0` so that `Z1 ∪ V1 ∪ X` is
//! connected, which is a bipartite Steiner problem whose terminals are the
//! components of `G[Z1 ∪ V1]`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_connected, is_connected_vertex_cover, ContractionMap, Graph, VertexSet};
use crate::steiner::{self, SteinerInstance};
use crate::{Count, DEFAULT_CELL_LIMIT};

/// Largest `|Z|` the subset enumeration supports.
pub const MAX_Z: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Enumerate `Z1` subsets on the rayon pool.
    pub parallel: bool,
    /// Cap on cells of any single Steiner table.
    pub cell_limit: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            parallel: false,
            cell_limit: DEFAULT_CELL_LIMIT,
        }
    }
}

/// Work counters for one compression call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct WorkLedger {
    pub z_size: usize,
    /// `Z1` subsets tried; always `2^|Z|`.
    pub enumerated: u64,
    /// Subsets with `Z0` independent and no swallowed `V1` vertex.
    pub valid_splits: u64,
    /// Sum of `2^|T|` over valid splits.
    pub steiner_weight_sum: u64,
}

impl WorkLedger {
    /// `3 · 2^{|Z|-1}`, or 1 for an empty `Z`.
    pub fn bound(&self) -> u64 {
        match self.z_size {
            0 => 1,
            z => 3u64 << (z - 1),
        }
    }

    pub fn within_bound(&self) -> bool {
        self.steiner_weight_sum <= self.bound()
    }

    fn absorb(&mut self, other: &WorkLedger) {
        self.enumerated += other.enumerated;
        self.valid_splits += other.valid_splits;
        self.steiner_weight_sum = self
            .steiner_weight_sum
            .saturating_add(other.steiner_weight_sum);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SplitStatus {
    Ok,
    /// An edge runs inside `Z0`, so no cover avoids `Z0`.
    Z0NotIndependent,
    /// Some `v ∈ V1` has all its neighbors in `Z0` and would be isolated.
    V1VertexSwallowed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub z1: VertexSet,
    pub z0: VertexSet,
    pub v1: VertexSet,
    pub v0: VertexSet,
    pub status: SplitStatus,
}

impl SplitResult {
    pub fn is_valid(&self) -> bool {
        self.status == SplitStatus::Ok
    }
}

/// A split in mask form: `z1`/`z0` over positions in `Z`, `v1`/`v0` as
/// indices into the outside-vertex list.
struct SplitMasks {
    z1: u64,
    z0: u64,
    v1: Vec<usize>,
    v0: Vec<usize>,
    status: SplitStatus,
}

struct SubInstance {
    steiner: SteinerInstance,
    /// Terminal position → `Z` positions it contains.
    terminal_z: Vec<u64>,
}

/// A compression problem: graph, weights, budget and connected cover `Z`.
#[derive(Debug, Clone)]
pub struct CompressionInstance<'g> {
    graph: &'g Graph,
    weights: Vec<f64>,
    k: usize,
    z: VertexSet,
    // position of each vertex in z, usize::MAX outside
    z_pos: Vec<usize>,
    z_adj: Vec<u64>,
    outside: Vec<usize>,
    // neighbors of each outside vertex as a mask over z positions
    outside_adj: Vec<u64>,
    uniform: bool,
}

impl<'g> CompressionInstance<'g> {
    pub fn new(graph: &'g Graph, weights: Vec<f64>, k: usize, z: VertexSet) -> Result<Self> {
        let n = graph.n();
        if weights.len() != n {
            return Err(Error::invalid("weight vector length differs from n"));
        }
        if let Some(v) = (0..n).find(|&v| !(weights[v].is_finite() && weights[v] >= 0.0)) {
            return Err(Error::invalid(format!(
                "vertex {v} has invalid weight {}",
                weights[v]
            )));
        }
        if !is_connected(graph) {
            return Err(Error::Disconnected);
        }
        if z.is_empty() {
            return Err(Error::invalid("compression needs a nonempty cover"));
        }
        if z.iter().any(|v| v >= n) {
            return Err(Error::invalid("cover has out-of-range vertices"));
        }
        if !is_connected_vertex_cover(graph, &z) {
            return Err(Error::invalid("Z is not a connected vertex cover"));
        }
        if z.len() > MAX_Z {
            return Err(Error::resource(format!(
                "|Z| = {} exceeds the enumeration limit of {MAX_Z}",
                z.len()
            )));
        }

        let mut z_pos = vec![usize::MAX; n];
        for (i, v) in z.iter().enumerate() {
            z_pos[v] = i;
        }
        let mask_of = |v: usize| -> u64 {
            graph
                .neighbors(v)
                .iter()
                .filter(|&&w| z_pos[w] != usize::MAX)
                .fold(0, |m, &w| m | 1 << z_pos[w])
        };
        let z_adj = z.iter().map(mask_of).collect();
        let outside: Vec<usize> = graph
            .vertices()
            .filter(|&v| z_pos[v] == usize::MAX)
            .collect();
        let outside_adj = outside.iter().map(|&v| mask_of(v)).collect();
        let uniform = weights.iter().all(|&w| w == 1.0);
        Ok(CompressionInstance {
            graph,
            weights,
            k,
            z,
            z_pos,
            z_adj,
            outside,
            outside_adj,
            uniform,
        })
    }

    /// Unit weights.
    pub fn uniform(graph: &'g Graph, k: usize, z: VertexSet) -> Result<Self> {
        Self::new(graph, vec![1.0; graph.n()], k, z)
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn z(&self) -> &VertexSet {
        &self.z
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn z_vertices(&self, mask: u64) -> impl Iterator<Item = usize> + '_ {
        bits(mask).map(|i| self.z.as_slice()[i])
    }

    fn split_masks(&self, z1: u64) -> SplitMasks {
        let all = (1u64 << self.z.len()) - 1;
        let z0 = all & !z1;
        let mut status = SplitStatus::Ok;
        if bits(z0).any(|i| self.z_adj[i] & z0 != 0) {
            status = SplitStatus::Z0NotIndependent;
        }
        let mut v1 = Vec::new();
        let mut v0 = Vec::new();
        for (o, &nb) in self.outside_adj.iter().enumerate() {
            if nb & z0 != 0 {
                if nb & z1 == 0 && status == SplitStatus::Ok {
                    status = SplitStatus::V1VertexSwallowed;
                }
                v1.push(o);
            } else {
                v0.push(o);
            }
        }
        SplitMasks {
            z1,
            z0,
            v1,
            v0,
            status,
        }
    }

    /// Contracts the components of `G[Z1 ∪ V1]` into terminals. Terminal and
    /// nonterminal ids are their vertex numbers in the contracted graph:
    /// terminals first, then `V0` in order.
    fn sub_instance(&self, split: &SplitMasks) -> Result<SubInstance> {
        let zn = self.z.len();
        let mut parent: Vec<usize> = (0..zn).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut union = |a: usize, b: usize| {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        };
        for i in bits(split.z1) {
            for j in bits(self.z_adj[i] & split.z1) {
                union(i, j);
            }
        }
        for &o in &split.v1 {
            let nb = self.outside_adj[o] & split.z1;
            let first = nb.trailing_zeros() as usize;
            for j in bits(nb) {
                union(first, j);
            }
        }
        let mut term_of = vec![usize::MAX; zn];
        let mut terminal_z: Vec<u64> = Vec::new();
        for i in bits(split.z1) {
            let r = find(&mut parent, i);
            if term_of[r] == usize::MAX {
                term_of[r] = terminal_z.len();
                terminal_z.push(0);
            }
            term_of[i] = term_of[r];
            terminal_z[term_of[i]] |= 1 << i;
        }
        let t = terminal_z.len();
        let nonterminals = split.v0.iter().enumerate().map(|(idx, &o)| {
            let mask = bits(self.outside_adj[o]).fold(0u64, |m, j| m | 1 << term_of[j]);
            (t + idx, mask, self.weights[self.outside[o]])
        });
        let steiner = SteinerInstance::from_masks((0..t).collect(), nonterminals)?;
        Ok(SubInstance {
            steiner,
            terminal_z,
        })
    }

    fn to_split_result(&self, s: &SplitMasks) -> SplitResult {
        SplitResult {
            z1: self.z_vertices(s.z1).collect(),
            z0: self.z_vertices(s.z0).collect(),
            v1: s.v1.iter().map(|&o| self.outside[o]).collect(),
            v0: s.v0.iter().map(|&o| self.outside[o]).collect(),
            status: s.status,
        }
    }

    fn z1_mask(&self, z1: &VertexSet) -> Result<u64> {
        z1.iter().try_fold(0u64, |m, v| match self.z_pos.get(v) {
            Some(&p) if p != usize::MAX => Ok(m | 1 << p),
            _ => Err(Error::invalid(format!("vertex {v} is not in Z"))),
        })
    }

    /// Classifies the split `Z1 = z1`, which must be a subset of `Z`.
    pub fn validate_split(&self, z1: &VertexSet) -> Result<SplitResult> {
        Ok(self.to_split_result(&self.split_masks(self.z1_mask(z1)?)))
    }

    /// The Steiner instance for a valid split with nonempty `Z1`, with the
    /// map from its vertices (terminals, then `V0`) back to the graph.
    pub fn build_steiner_subinstance(
        &self,
        split: &SplitResult,
    ) -> Result<(SteinerInstance, ContractionMap)> {
        if !split.is_valid() || split.z1.is_empty() {
            return Err(Error::invalid("split must be valid with nonempty Z1"));
        }
        let masks = self.split_masks(self.z1_mask(&split.z1)?);
        let sub = self.sub_instance(&masks)?;
        let mut preimages: Vec<Vec<usize>> = sub
            .terminal_z
            .iter()
            .map(|&m| self.z_vertices(m).collect())
            .collect();
        for &o in &masks.v1 {
            let j = self.outside_adj[o] & masks.z1;
            let t = sub
                .terminal_z
                .iter()
                .position(|&m| m & j != 0)
                .expect("V1 vertex touches Z1");
            preimages[t].push(self.outside[o]);
        }
        let mut preimages: Vec<VertexSet> = preimages.into_iter().map(VertexSet::from).collect();
        preimages.extend(
            masks
                .v0
                .iter()
                .map(|&o| VertexSet::singleton(self.outside[o])),
        );
        Ok((
            sub.steiner,
            ContractionMap::from_preimages(preimages, self.graph.n()),
        ))
    }

    fn weight_of(&self, s: &VertexSet) -> f64 {
        s.iter().map(|v| self.weights[v]).sum()
    }

    fn visit(&self, z1: u64, mode: Mode, opts: &SolveOptions, acc: &mut Acc) -> Result<()> {
        acc.ledger.enumerated += 1;
        let split = self.split_masks(z1);
        let valid = split.status == SplitStatus::Ok;
        if valid {
            acc.ledger.valid_splits += 1;
        }

        if z1 == 0 {
            // every outside vertex has a neighbor in Z, so S = V \ Z
            if valid {
                acc.ledger.steiner_weight_sum += 1;
            }
            let rest: VertexSet = self.outside.iter().copied().collect();
            if rest.len() <= self.k && is_connected_vertex_cover(self.graph, &rest) {
                match mode {
                    Mode::Optimize => {
                        let weight = self.weight_of(&rest);
                        acc.offer(Candidate::new(rest, weight));
                    }
                    Mode::Count => acc.count += 1u32,
                }
            }
            return Ok(());
        }
        if !valid {
            return Ok(());
        }

        let sub = self.sub_instance(&split)?;
        let terminals = sub.steiner.terminals().len();
        acc.ledger.steiner_weight_sum += 1 << terminals;
        let forced = z1.count_ones() as usize + split.v1.len();
        let Some(budget) = self.k.checked_sub(forced) else {
            return Ok(());
        };

        match mode {
            // Solutions with this Z1 are exactly Z1 ∪ V1 ∪ X for the sets X
            // counted below: V1 is forced and distinct X give distinct S.
            Mode::Count => {
                acc.count += steiner::count_at_most(&sub.steiner, budget, opts.cell_limit)?;
            }
            Mode::Optimize => {
                let sol = if self.uniform {
                    steiner::solve_min_cardinality(&sub.steiner, budget, opts.cell_limit)?
                } else {
                    // optimal sets add a new terminal with every nonterminal
                    let useful = budget
                        .min(sub.steiner.nonterminals().len())
                        .min(terminals - 1);
                    steiner::solve_min_weight(&sub.steiner, useful, opts.cell_limit)?
                };
                if let Some(sol) = sol {
                    let forced_set: VertexSet = self
                        .z_vertices(z1)
                        .chain(split.v1.iter().map(|&o| self.outside[o]))
                        .collect();
                    let weight = self.weight_of(&forced_set) + sol.weight;
                    let extra = sol
                        .nonterminals
                        .iter()
                        .map(|&id| self.outside[split.v0[id - terminals]]);
                    let vertices: VertexSet = forced_set.iter().chain(extra).collect();
                    acc.offer(Candidate::new(vertices, weight));
                }
            }
        }
        Ok(())
    }

    fn run(&self, mode: Mode, opts: &SolveOptions) -> Result<Acc> {
        let total = 1u64 << self.z.len();
        let mut acc = if opts.parallel {
            (0..total)
                .into_par_iter()
                .try_fold(Acc::default, |mut acc, z1| {
                    self.visit(z1, mode, opts, &mut acc)?;
                    Ok::<_, Error>(acc)
                })
                .try_reduce(Acc::default, |a, b| Ok(a.merge(b)))?
        } else {
            let mut acc = Acc::default();
            for z1 in 0..total {
                self.visit(z1, mode, opts, &mut acc)?;
            }
            acc
        };
        acc.ledger.z_size = self.z.len();
        debug_assert!(acc.ledger.within_bound(), "{:?}", acc.ledger);
        Ok(acc)
    }

    /// Minimum-weight connected vertex cover of size at most `k`, with its
    /// weight. Ties go to fewer vertices, then the lexicographically
    /// smallest vertex list.
    pub fn solve_weighted(
        &self,
        opts: &SolveOptions,
    ) -> Result<(Option<(VertexSet, f64)>, WorkLedger)> {
        let acc = self.run(Mode::Optimize, opts)?;
        Ok((acc.best.map(|c| (c.vertices, c.weight)), acc.ledger))
    }

    /// Number of connected vertex covers of size at most `k`. Weights are
    /// ignored.
    pub fn count_solutions(&self, opts: &SolveOptions) -> Result<(Count, WorkLedger)> {
        let acc = self.run(Mode::Count, opts)?;
        Ok((acc.count, acc.ledger))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Optimize,
    Count,
}

#[derive(Debug, Clone)]
struct Candidate {
    weight: f64,
    vertices: VertexSet,
}

impl Candidate {
    fn new(vertices: VertexSet, weight: f64) -> Self {
        Candidate { weight, vertices }
    }

    fn beats(&self, other: &Candidate) -> bool {
        (self.weight, self.vertices.len(), self.vertices.as_slice())
            < (
                other.weight,
                other.vertices.len(),
                other.vertices.as_slice(),
            )
    }
}

#[derive(Debug, Default)]
struct Acc {
    best: Option<Candidate>,
    count: Count,
    ledger: WorkLedger,
}

impl Acc {
    fn offer(&mut self, c: Candidate) {
        if self.best.as_ref().is_none_or(|b| c.beats(b)) {
            self.best = Some(c);
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        if let Some(c) = other.best {
            self.offer(c);
        }
        self.count += other.count;
        self.ledger.absorb(&other.ledger);
        self
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{components_of_subset, is_vertex_cover};
    use crate::oracle::{self, enumerate_connected_graphs};

    fn vs<const N: usize>(a: [usize; N]) -> VertexSet {
        VertexSet::from(a)
    }

    const OPTS: SolveOptions = SolveOptions {
        parallel: false,
        cell_limit: DEFAULT_CELL_LIMIT,
    };

    #[test]
    fn validate_split_examples() {
        let p3 = Graph::path(3);
        let inst = CompressionInstance::uniform(&p3, 3, vs([0, 1])).unwrap();

        let s = inst.validate_split(&vs([1])).unwrap();
        assert_eq!((&s.z0, &s.v1, &s.v0), (&vs([0]), &vs([]), &vs([2])));
        assert!(s.is_valid());

        let s = inst.validate_split(&vs([0])).unwrap();
        assert_eq!((&s.z0, &s.v1), (&vs([1]), &vs([2])));
        assert_eq!(s.status, SplitStatus::V1VertexSwallowed);

        let p4 = Graph::path(4);
        let inst = CompressionInstance::uniform(&p4, 3, vs([1, 2])).unwrap();
        let s = inst.validate_split(&vs([])).unwrap();
        assert_eq!(s.status, SplitStatus::Z0NotIndependent);

        assert!(inst.validate_split(&vs([0])).is_err());
    }

    #[test]
    fn subinstance_examples() {
        let p3 = Graph::path(3);
        let inst = CompressionInstance::uniform(&p3, 3, vs([0, 1])).unwrap();
        let split = inst.validate_split(&vs([1])).unwrap();
        let (st, map) = inst.build_steiner_subinstance(&split).unwrap();
        assert_eq!(st.terminals().len(), 1);
        assert_eq!(st.nonterminals().len(), 1);
        assert_eq!(st.neighborhood(0), 0b1);
        assert_eq!(map.preimage(0), &vs([1]));
        assert_eq!(map.preimage(1), &vs([2]));

        let p4 = Graph::path(4);
        let inst = CompressionInstance::uniform(&p4, 3, vs([1, 2])).unwrap();
        let split = inst.validate_split(&vs([1, 2])).unwrap();
        let (st, map) = inst.build_steiner_subinstance(&split).unwrap();
        assert_eq!(st.terminals().len(), 1);
        assert_eq!(st.nonterminals().len(), 2);
        assert_eq!(map.preimage(0), &vs([1, 2]));

        let c4 = Graph::cycle(4);
        let inst = CompressionInstance::uniform(&c4, 3, vs([0, 1, 2])).unwrap();
        let split = inst.validate_split(&vs([0, 2])).unwrap();
        assert!(split.v1.is_empty());
        assert_eq!(split.v0, vs([3]));
        let (st, map) = inst.build_steiner_subinstance(&split).unwrap();
        assert_eq!(st.terminals().len(), 2);
        assert_eq!(st.neighborhood(0), 0b11);
        assert_eq!((map.preimage(0), map.preimage(1)), (&vs([0]), &vs([2])));

        let bad = inst.validate_split(&vs([])).unwrap();
        assert!(inst.build_steiner_subinstance(&bad).is_err());
    }

    #[test]
    fn solve_weighted_examples() {
        let p3 = Graph::path(3);
        let inst = CompressionInstance::uniform(&p3, 1, vs([0, 1])).unwrap();
        let (sol, _) = inst.solve_weighted(&OPTS).unwrap();
        assert_eq!(sol, Some((vs([1]), 1.0)));

        let inst = CompressionInstance::new(&p3, vec![1.0, 5.0, 1.0], 2, vs([0, 1])).unwrap();
        let (sol, _) = inst.solve_weighted(&OPTS).unwrap();
        assert_eq!(sol, Some((vs([1]), 5.0)));

        let p4 = Graph::path(4);
        let inst = CompressionInstance::uniform(&p4, 1, vs([1, 2])).unwrap();
        assert_eq!(inst.solve_weighted(&OPTS).unwrap().0, None);
    }

    #[test]
    fn count_examples() {
        let count = |g: &Graph, z: VertexSet, k: usize| {
            let inst = CompressionInstance::uniform(g, k, z).unwrap();
            inst.count_solutions(&OPTS).unwrap().0
        };
        assert_eq!(count(&Graph::path(3), vs([0, 1]), 2), Count::from(3u32));
        assert_eq!(count(&Graph::path(2), vs([0, 1]), 2), Count::from(3u32));
        assert_eq!(count(&Graph::path(4), vs([1, 2]), 3), Count::from(3u32));
        // single vertex: the empty set and the vertex itself
        assert_eq!(count(&Graph::empty(1), vs([0]), 1), Count::from(2u32));
    }

    #[test]
    fn rejects_bad_instances() {
        let p4 = Graph::path(4);
        assert!(CompressionInstance::uniform(&p4, 2, vs([0, 2])).is_err());
        assert!(CompressionInstance::uniform(&p4, 2, vs([])).is_err());
        assert!(CompressionInstance::new(&p4, vec![1.0, -1.0, 1.0, 1.0], 2, vs([1, 2])).is_err());
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            CompressionInstance::uniform(&two, 2, vs([0, 2])),
            Err(Error::Disconnected)
        ));
    }

    /// All connected vertex covers of `g` usable as `Z`, smallest first.
    fn covers(g: &Graph) -> Vec<VertexSet> {
        let n = g.n();
        let mut out: Vec<VertexSet> = (1u32..(1 << n))
            .map(|m| (0..n).filter(|&v| m & (1 << v) != 0).collect::<VertexSet>())
            .filter(|s| is_connected_vertex_cover(g, s))
            .collect();
        out.sort_by_key(|s| s.len());
        out
    }

    #[test]
    fn agrees_with_brute_force_for_every_cover() {
        let mut seed = 7u64;
        for n in 1..=5 {
            for g in enumerate_connected_graphs(n).unwrap() {
                let weights: Vec<f64> = (0..n)
                    .map(|_| {
                        seed = seed
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        ((seed >> 33) % 7) as f64
                    })
                    .collect();
                for z in covers(&g).into_iter().take(4) {
                    for k in 0..=n {
                        let brute = oracle::brute_force(&g, Some(&weights), k).unwrap();
                        let inst =
                            CompressionInstance::new(&g, weights.clone(), k, z.clone()).unwrap();
                        let (sol, ledger) = inst.solve_weighted(&OPTS).unwrap();
                        assert_eq!(
                            sol.as_ref().map(|s| s.1),
                            brute.min_weight,
                            "{g:?} z={z:?} k={k}"
                        );
                        if let Some((s, w)) = &sol {
                            assert!(is_connected_vertex_cover(&g, s) && s.len() <= k);
                            assert!((inst.weight_of(s) - w).abs() < 1e-9);
                        }
                        assert_eq!(ledger.enumerated, 1 << z.len());
                        assert!(ledger.within_bound());

                        let (count, _) = inst.count_solutions(&OPTS).unwrap();
                        assert_eq!(count, brute.count, "{g:?} z={z:?} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn valid_splits_are_covers_with_anchored_terminals() {
        for g in enumerate_connected_graphs(5).unwrap().step_by(7) {
            for z in covers(&g).into_iter().take(3) {
                let inst = CompressionInstance::uniform(&g, 5, z.clone()).unwrap();
                for m in 1u64..(1 << z.len()) {
                    let z1: VertexSet = bits(m).map(|i| z.as_slice()[i]).collect();
                    let split = inst.validate_split(&z1).unwrap();
                    if !split.is_valid() {
                        continue;
                    }
                    assert!(is_vertex_cover(&g, &split.z1.union(&split.v1)));
                    let (st, map) = inst.build_steiner_subinstance(&split).unwrap();
                    let comps = components_of_subset(&g, &split.z1.union(&split.v1));
                    assert_eq!(st.terminals().len(), comps.len());
                    for t in 0..st.terminals().len() {
                        assert!(comps.contains(map.preimage(t)));
                        assert!(!map.preimage(t).is_disjoint(&split.z1));
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_mode_matches_sequential() {
        let par = SolveOptions {
            parallel: true,
            ..OPTS
        };
        for g in enumerate_connected_graphs(5).unwrap().step_by(11) {
            let z = covers(&g).pop().unwrap();
            let weights: Vec<f64> = (0..5).map(|v| (v * 3 % 5) as f64 + 0.5).collect();
            for k in 1..=5 {
                let inst = CompressionInstance::new(&g, weights.clone(), k, z.clone()).unwrap();
                assert_eq!(
                    inst.solve_weighted(&OPTS).unwrap(),
                    inst.solve_weighted(&par).unwrap()
                );
                assert_eq!(
                    inst.count_solutions(&OPTS).unwrap(),
                    inst.count_solutions(&par).unwrap()
                );
            }
        }
    }

    #[test]
    fn uniform_path_matches_weighted_path() {
        for g in enumerate_connected_graphs(5).unwrap().step_by(5) {
            let z = covers(&g)[0].clone();
            for k in 0..=5 {
                let uniform = CompressionInstance::uniform(&g, k, z.clone()).unwrap();
                let mut general = CompressionInstance::uniform(&g, k, z.clone()).unwrap();
                general.uniform = false;
                let a = uniform.solve_weighted(&OPTS).unwrap().0.map(|s| s.1);
                let b = general.solve_weighted(&OPTS).unwrap().0.map(|s| s.1);
                assert_eq!(a, b);
            }
        }
    }
}
