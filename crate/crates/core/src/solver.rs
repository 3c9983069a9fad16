//! Entry points: decision/search, weighted optimization and counting.
//!
//! Search runs iterative compression. Order the vertices so every suffix
//! `V_i = {v_i, ..., v_n}` is connected and let `G_i` be the graph with `V_i`
//! contracted to a single vertex `y`. Starting from the suffix equal to a
//! 2-approximate cover `W` (where `{y}` alone is a cover), each round splits
//! `v_{i-1}` off the contracted vertex and repairs the previous solution by
//! compression with `Z = (X_{i-1} \ {x}) ∪ {v_{i-1}, y}`, which has at most
//! `k + 2` vertices. Contraction never increases the optimum, so a failed
//! round proves the whole instance infeasible.

use serde::Serialize;

use crate::approx::approx_cvc;
use crate::compression::{CompressionInstance, WorkLedger};
use crate::error::{Error, Result};
use crate::graph::{
    connected_components, contract, is_connected_vertex_cover, peel_order_with_suffix,
    ContractionMap, Graph, VertexSet,
};
use crate::Count;

pub use crate::compression::SolveOptions;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// No edges; the empty set and every singleton are solutions.
    Edgeless,
    /// One component with an edge; the rest are isolated vertices.
    SingleCore {
        core: Graph,
        /// Core vertex id → input vertex id.
        core_to_original: Vec<usize>,
        isolated: VertexSet,
    },
    /// Two components with edges; nothing is a connected cover.
    MultiCore,
}

pub fn preprocess(g: &Graph) -> Classification {
    if g.m() == 0 {
        return Classification::Edgeless;
    }
    let mut cores = connected_components(g).into_iter().filter(|c| c.len() >= 2);
    let core_set = cores.next().expect("graph has an edge");
    if cores.next().is_some() {
        return Classification::MultiCore;
    }
    let isolated = g.vertices().filter(|&v| g.degree(v) == 0).collect();
    let (core, core_to_original) = g.induced_subgraph(&core_set);
    Classification::SingleCore {
        core,
        core_to_original,
        isolated,
    }
}

/// A connected vertex cover in input vertex ids with its total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct CvcSolution {
    pub vertices: VertexSet,
    pub weight: f64,
}

impl CvcSolution {
    pub fn cardinality(&self) -> usize {
        self.vertices.len()
    }
}

/// Instrumentation gathered during one solver call.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    /// Size of the 2-approximate cover, when one was computed.
    pub approx_size: Option<usize>,
    /// Compression rounds of the iterative loop.
    pub rounds: usize,
    /// One ledger per compression call, in order.
    pub compressions: Vec<WorkLedger>,
}

impl SolveStats {
    pub fn enumerated(&self) -> u64 {
        self.compressions.iter().map(|l| l.enumerated).sum()
    }

    pub fn steiner_weight_sum(&self) -> u64 {
        self.compressions.iter().map(|l| l.steiner_weight_sum).sum()
    }

    pub fn max_z(&self) -> usize {
        self.compressions
            .iter()
            .map(|l| l.z_size)
            .max()
            .unwrap_or(0)
    }

    pub fn all_within_bound(&self) -> bool {
        self.compressions.iter().all(WorkLedger::within_bound)
    }
}

/// Vertex ordering and contraction sequence for iterative compression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressionSchedule {
    order: Vec<usize>,
    start: usize,
}

impl CompressionSchedule {
    /// Ordering whose suffix from `start` is exactly `w`, a connected vertex
    /// cover of `g`.
    pub fn new(g: &Graph, w: &VertexSet) -> Result<Self> {
        let order = peel_order_with_suffix(g, w)?;
        let start = order.len() - w.len();
        Ok(CompressionSchedule { order, start })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// First index whose suffix is the starting cover.
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn rounds(&self) -> usize {
        (self.order.len() - 1).saturating_sub(self.start)
    }

    pub fn suffix(&self, i: usize) -> VertexSet {
        self.order[i..].iter().copied().collect()
    }

    /// `G_i`: `g` with the suffix from `i` contracted.
    pub fn graph_at(&self, g: &Graph, i: usize) -> Result<(Graph, ContractionMap)> {
        contract(g, &[self.suffix(i)])
    }

    /// The edge whose contraction turns `G_i` into `G_{i-1}`: `v_{i-1}` and
    /// its lowest-id neighbor inside the suffix from `i`.
    pub fn contraction_edge(&self, g: &Graph, i: usize) -> (usize, usize) {
        let v = self.order[i - 1];
        let suffix = self.suffix(i);
        let w = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| suffix.contains(w))
            .expect("suffixes are connected");
        (v, w)
    }
}

/// Connected vertex cover of size at most `k` on a connected graph with at
/// least one edge, or `None`.
fn search_core(
    core: &Graph,
    k: usize,
    opts: &SolveOptions,
    stats: &mut SolveStats,
) -> Result<Option<VertexSet>> {
    if k == 0 {
        return Ok(None);
    }
    let w = approx_cvc(core)?;
    stats.approx_size = Some(w.len());
    if w.len() > 2 * k {
        return Ok(None);
    }
    let schedule = CompressionSchedule::new(core, &w)?;
    let order = schedule.order();
    let start = schedule.start();

    let (mut graph, mut map) = schedule.graph_at(core, start)?;
    let mut solution = VertexSet::singleton(map.image(order[start]).expect("mapped"));
    for i in start + 1..order.len() {
        let (next_graph, next_map) = schedule.graph_at(core, i)?;
        let x = map.image(order[i - 1]).expect("mapped");
        let y = next_map.image(order[i]).expect("mapped");
        let split_off = next_map.image(order[i - 1]).expect("mapped");
        let mut z: VertexSet = solution
            .iter()
            .filter(|&u| u != x)
            .map(|u| {
                let original = map.preimage(u).first().expect("nonempty preimage");
                next_map.image(original).expect("mapped")
            })
            .collect();
        z.insert(split_off);
        z.insert(y);
        debug_assert!(is_connected_vertex_cover(&next_graph, &z) && z.len() <= k + 2);

        let inst = CompressionInstance::uniform(&next_graph, k, z)?;
        let (found, ledger) = inst.solve_weighted(opts)?;
        stats.compressions.push(ledger);
        stats.rounds += 1;
        let Some((next_solution, _)) = found else {
            return Ok(None);
        };
        debug_assert!(
            is_connected_vertex_cover(&next_graph, &next_solution) && next_solution.len() <= k
        );
        solution = next_solution;
        graph = next_graph;
        map = next_map;
    }
    debug_assert_eq!(graph.n(), core.n());
    Ok(Some(map.lift(&solution)))
}

fn to_original(s: &VertexSet, core_to_original: &[usize]) -> VertexSet {
    s.iter().map(|v| core_to_original[v]).collect()
}

/// Some connected vertex cover of size at most `k`, or `None` if none exists.
pub fn find_cvc(g: &Graph, k: usize) -> Result<Option<VertexSet>> {
    Ok(find_cvc_with(g, k, &SolveOptions::default())?.0)
}

pub fn find_cvc_with(
    g: &Graph,
    k: usize,
    opts: &SolveOptions,
) -> Result<(Option<VertexSet>, SolveStats)> {
    let mut stats = SolveStats::default();
    let found = match preprocess(g) {
        Classification::Edgeless => Some(VertexSet::new()),
        Classification::MultiCore => None,
        Classification::SingleCore {
            core,
            core_to_original,
            ..
        } => search_core(&core, k, opts, &mut stats)?.map(|s| to_original(&s, &core_to_original)),
    };
    Ok((found, stats))
}

/// Minimum-weight connected vertex cover of cardinality at most `k`.
pub fn solve_wcvc(g: &Graph, weights: &[f64], k: usize) -> Result<Option<CvcSolution>> {
    Ok(solve_wcvc_with(g, weights, k, &SolveOptions::default())?.0)
}

pub fn solve_wcvc_with(
    g: &Graph,
    weights: &[f64],
    k: usize,
    opts: &SolveOptions,
) -> Result<(Option<CvcSolution>, SolveStats)> {
    if weights.len() != g.n() {
        return Err(Error::invalid("weight vector length differs from n"));
    }
    if let Some(v) = g
        .vertices()
        .find(|&v| !(weights[v].is_finite() && weights[v] >= 0.0))
    {
        return Err(Error::invalid(format!(
            "vertex {v} has invalid weight {}",
            weights[v]
        )));
    }
    let mut stats = SolveStats::default();
    let (core, core_to_original) = match preprocess(g) {
        Classification::Edgeless => {
            let empty = CvcSolution {
                vertices: VertexSet::new(),
                weight: 0.0,
            };
            return Ok((Some(empty), stats));
        }
        Classification::MultiCore => return Ok((None, stats)),
        Classification::SingleCore {
            core,
            core_to_original,
            ..
        } => (core, core_to_original),
    };
    let Some(z) = search_core(&core, k, opts, &mut stats)? else {
        return Ok((None, stats));
    };
    let core_weights = core_to_original.iter().map(|&v| weights[v]).collect();
    let inst = CompressionInstance::new(&core, core_weights, k, z)?;
    let (best, ledger) = inst.solve_weighted(opts)?;
    stats.compressions.push(ledger);
    let solution = best.map(|(s, weight)| CvcSolution {
        vertices: to_original(&s, &core_to_original),
        weight,
    });
    Ok((solution, stats))
}

/// Number of connected vertex covers of cardinality at most `k`.
pub fn count_cvc(g: &Graph, k: usize) -> Result<Count> {
    Ok(count_cvc_with(g, k, &SolveOptions::default())?.0)
}

pub fn count_cvc_with(g: &Graph, k: usize, opts: &SolveOptions) -> Result<(Count, SolveStats)> {
    let mut stats = SolveStats::default();
    let core = match preprocess(g) {
        Classification::Edgeless => {
            let singletons = if k >= 1 { g.n() } else { 0 };
            return Ok((Count::from(1 + singletons), stats));
        }
        Classification::MultiCore => return Ok((Count::default(), stats)),
        Classification::SingleCore { core, .. } => core,
    };
    let Some(z) = search_core(&core, k, opts, &mut stats)? else {
        return Ok((Count::default(), stats));
    };
    let inst = CompressionInstance::uniform(&core, k, z)?;
    let (count, ledger) = inst.count_solutions(opts)?;
    stats.compressions.push(ledger);
    Ok((count, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_connected, is_connected_subset};
    use crate::oracle::{brute_force, enumerate_connected_graphs};

    fn vs<const N: usize>(a: [usize; N]) -> VertexSet {
        VertexSet::from(a)
    }

    #[test]
    fn preprocess_examples() {
        assert_eq!(preprocess(&Graph::empty(3)), Classification::Edgeless);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(preprocess(&two), Classification::MultiCore);
        let p3_plus = Graph::new(4, [(0, 1), (1, 2)]).unwrap();
        match preprocess(&p3_plus) {
            Classification::SingleCore {
                core,
                core_to_original,
                isolated,
            } => {
                assert_eq!(core, Graph::path(3));
                assert_eq!(core_to_original, vec![0, 1, 2]);
                assert_eq!(isolated, vs([3]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn find_examples() {
        let p4 = Graph::path(4);
        assert_eq!(find_cvc(&p4, 2).unwrap(), Some(vs([1, 2])));
        assert_eq!(find_cvc(&p4, 1).unwrap(), None);
        let c4 = Graph::cycle(4);
        assert_eq!(find_cvc(&c4, 2).unwrap(), None);
        let three = find_cvc(&c4, 3).unwrap().unwrap();
        assert_eq!(three.len(), 3);
        assert!(is_connected_vertex_cover(&c4, &three));
        assert_eq!(find_cvc(&Graph::empty(3), 0).unwrap(), Some(vs([])));
    }

    #[test]
    fn weighted_examples() {
        let p3 = Graph::path(3);
        let w = [1.0, 5.0, 1.0];
        let sol = solve_wcvc(&p3, &w, 2).unwrap().unwrap();
        assert_eq!((sol.vertices, sol.weight), (vs([1]), 5.0));
        assert_eq!(solve_wcvc(&p3, &w, 0).unwrap(), None);
        let sol = solve_wcvc(&Graph::empty(2), &[3.0, 4.0], 0)
            .unwrap()
            .unwrap();
        assert_eq!((sol.vertices, sol.weight), (vs([]), 0.0));
        assert!(solve_wcvc(&p3, &[1.0, -1.0, 1.0], 2).is_err());
        assert!(solve_wcvc(&p3, &[1.0, f64::NAN, 1.0], 2).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_cvc(&Graph::empty(3), 1).unwrap(), Count::from(4u32));
        assert_eq!(count_cvc(&Graph::empty(3), 0).unwrap(), Count::from(1u32));
        assert_eq!(count_cvc(&Graph::path(3), 2).unwrap(), Count::from(3u32));
        assert_eq!(count_cvc(&Graph::star(3), 2).unwrap(), Count::from(4u32));
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(count_cvc(&two, 4).unwrap(), Count::from(0u32));
    }

    #[test]
    fn isolated_vertices_never_appear() {
        let g = Graph::new(6, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let s = find_cvc(&g, 2).unwrap().unwrap();
        assert_eq!(s, vs([2, 3]));
        let sol = solve_wcvc(&g, &[0.0; 6], 3).unwrap().unwrap();
        assert!(!sol.vertices.contains(0) && !sol.vertices.contains(5));
    }

    #[test]
    fn schedule_rounds_uncontract_one_edge() {
        for g in enumerate_connected_graphs(5).unwrap().step_by(13) {
            let w = approx_cvc(&g).unwrap();
            let sched = CompressionSchedule::new(&g, &w).unwrap();
            assert_eq!(sched.rounds() + 1, w.len().max(1));
            for i in sched.start() + 1..g.n() {
                assert!(is_connected_subset(&g, &sched.suffix(i)));
                let (gi, mi) = sched.graph_at(&g, i).unwrap();
                let (prev, mp) = sched.graph_at(&g, i - 1).unwrap();
                let (a, b) = sched.contraction_edge(&g, i);
                let (a, b) = (mi.image(a).unwrap(), mi.image(b).unwrap());
                assert!(gi.has_edge(a, b));
                let (merged, mm) = contract(&gi, &[VertexSet::from([a, b])]).unwrap();
                // compare edge sets through original vertex ids
                let lift =
                    |g: &Graph, m: &dyn Fn(usize) -> VertexSet| -> Vec<(VertexSet, VertexSet)> {
                        let mut e: Vec<_> = g.edges().iter().map(|&(u, v)| (m(u), m(v))).collect();
                        e.sort();
                        e
                    };
                let via_merge = lift(&merged, &|c| mi.lift(mm.preimage(c)));
                let direct = lift(&prev, &|c| mp.preimage(c).clone());
                assert_eq!(via_merge, direct);
            }
        }
    }

    #[test]
    fn rounds_stay_within_twice_k() {
        for g in enumerate_connected_graphs(6).unwrap().step_by(97) {
            for k in 1..=6 {
                let (_, stats) = find_cvc_with(&g, k, &SolveOptions::default()).unwrap();
                assert!(stats.rounds <= 2 * k);
                assert!(stats.compressions.iter().all(|l| l.z_size <= k + 2));
            }
        }
    }

    #[test]
    fn search_matches_oracle_and_minimum_is_reachable() {
        for n in 1..=6 {
            for g in enumerate_connected_graphs(n).unwrap().step_by(7) {
                assert!(is_connected(&g));
                let min = brute_force(&g, None, n).unwrap().min_size.unwrap();
                for k in 0..=n {
                    let found = find_cvc(&g, k).unwrap();
                    assert_eq!(found.is_some(), k >= min, "{g:?} k={k}");
                    if let Some(s) = found {
                        assert!(is_connected_vertex_cover(&g, &s) && s.len() <= k);
                    }
                }
                let exact = solve_wcvc(&g, &vec![1.0; n], n).unwrap().unwrap();
                assert_eq!(exact.cardinality(), min);
            }
        }
    }

    #[test]
    fn count_is_monotone_in_k() {
        for g in enumerate_connected_graphs(5).unwrap().step_by(17) {
            let counts: Vec<Count> = (0..=5).map(|k| count_cvc(&g, k).unwrap()).collect();
            assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
