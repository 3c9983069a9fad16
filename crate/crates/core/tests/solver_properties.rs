use cvc_core::graph::{is_connected_vertex_cover, Graph};
use cvc_core::io::random_connected_graph;
use cvc_core::oracle::brute_force;
use cvc_core::solver::{count_cvc_with, find_cvc_with, solve_wcvc_with};
use cvc_core::SolveOptions;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance() -> impl Strategy<Value = (Graph, Vec<f64>)> {
    (
        1usize..=9,
        0.0f64..0.7,
        any::<u64>(),
        prop::collection::vec(0.0f64..10.0, 9),
    )
        .prop_map(|(n, p, seed, w)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (random_connected_graph(n, p, &mut rng), w[..n].to_vec())
        })
}

const PARALLEL: SolveOptions = SolveOptions {
    parallel: true,
    cell_limit: cvc_core::DEFAULT_CELL_LIMIT,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weighted_optimum_matches_oracle((g, w) in instance(), k in 0usize..10) {
        let bf = brute_force(&g, Some(&w), k).unwrap();
        let (sol, stats) = solve_wcvc_with(&g, &w, k, &SolveOptions::default()).unwrap();
        prop_assert!(stats.all_within_bound());
        match (sol, bf.min_weight) {
            (None, None) => {}
            (Some(s), Some(best)) => {
                prop_assert!((s.weight - best).abs() < 1e-9);
                prop_assert!(is_connected_vertex_cover(&g, &s.vertices));
                prop_assert!(s.cardinality() <= k);
            }
            (s, b) => prop_assert!(false, "{:?} vs {:?}", s, b),
        }
    }

    #[test]
    fn parallel_mode_agrees((g, w) in instance(), k in 0usize..10) {
        let seq = SolveOptions::default();
        prop_assert_eq!(
            find_cvc_with(&g, k, &seq).unwrap().0,
            find_cvc_with(&g, k, &PARALLEL).unwrap().0
        );
        prop_assert_eq!(
            solve_wcvc_with(&g, &w, k, &seq).unwrap().0,
            solve_wcvc_with(&g, &w, k, &PARALLEL).unwrap().0
        );
        let (count, stats) = count_cvc_with(&g, k, &PARALLEL).unwrap();
        prop_assert_eq!(count, brute_force(&g, None, k).unwrap().count);
        prop_assert!(stats.all_within_bound());
    }
}

#[test]
fn tiny_cell_limit_is_a_resource_error() {
    let g = Graph::complete(6);
    let opts = SolveOptions {
        parallel: false,
        cell_limit: 1,
    };
    let err = solve_wcvc_with(&g, &[1.0; 6], 5, &opts).unwrap_err();
    assert!(!err.is_input_error(), "{err}");
}

#[test]
fn counts_exceed_machine_words_on_large_stars() {
    // every superset of the center is a solution
    let g = Graph::star(80);
    let count = count_cvc_with(&g, 81, &SolveOptions::default()).unwrap().0;
    assert_eq!(count, num_bigint::BigUint::from(1u8) << 80usize);
}
