use pebblekit_core::engine::{is_acyclic, replay};
use pebblekit_core::io::{parse_configuration, parse_edge_list, write_configuration, write_edge_list};
use pebblekit_core::*;
use proptest::prelude::*;

/// A connected graph on 2..=max_n vertices: a random recursive tree plus
/// extra edges from a mask, each with a weight from `weights`.
fn graph(max_n: usize, weights: &'static [u64]) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
        let pairs = n * (n - 1) / 2;
        (
            parents,
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(proptest::sample::select(weights), pairs),
        )
            .prop_map(move |(parent, extra, w)| {
                let mut edges = Vec::new();
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if parent[v - 1] == u || extra[i] {
                            edges.push((u, v, w[i]));
                        }
                        i += 1;
                    }
                }
                Graph::from_weighted_edges(n, &edges).unwrap()
            })
    })
}

fn tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
        parents.prop_map(move |p| {
            let edges: Vec<_> = (1..n).map(|v| (p[v - 1], v)).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// A graph with a root and a configuration of at most `max_each` pebbles
/// per vertex.
fn instance(max_n: usize, weights: &'static [u64], max_each: u64) -> impl Strategy<Value = (Graph, Vertex, Configuration)> {
    graph(max_n, weights).prop_flat_map(move |g| {
        let n = g.n();
        (
            Just(g),
            0..n,
            proptest::collection::vec(0..=max_each, n).prop_map(Configuration::new),
        )
    })
}

fn solvable(g: &Graph, c: &Configuration, r: Vertex, k: u64) -> bool {
    is_solvable(g, c, r, k).unwrap().0.is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn adding_a_pebble_preserves_solvability((g, r, c) in instance(5, &[1, 2, 3], 4), v in 0usize..5, k in 1u64..=2) {
        let v = v % g.n();
        if solvable(&g, &c, r, k) {
            let mut more = c.clone();
            more[v] += 1;
            prop_assert!(solvable(&g, &more, r, k));
        }
    }

    #[test]
    fn solvable_configurations_have_enough_potential((g, r, c) in instance(5, &[1, 2, 3], 5), k in 1u64..=2) {
        if solvable(&g, &c, r, k) {
            prop_assert!(potential(&g, &c, r) >= num_rational::Ratio::from_integer(k as u128));
        }
    }

    #[test]
    fn solutions_verify_and_normalize((g, r, c) in instance(5, &[2, 3], 6), k in 1u64..=2) {
        if let (Some(s), _) = is_solvable(&g, &c, r, k).unwrap() {
            prop_assert!(verify_solution(&g, &c, r, k, &s));
            let norm = normalize_solution(&g, &c, &s).unwrap();
            prop_assert!(verify_solution(&g, &c, r, k, &norm));
            prop_assert!(is_acyclic(g.n(), &norm.moves));
            prop_assert!(norm.moves.len() <= s.moves.len());
            let end = replay(&g, &c, &norm.moves).unwrap();
            prop_assert!(end[r] >= k);
        }
    }

    #[test]
    fn greedy_success_implies_solvable((g, r, c) in instance(5, &[2], 5)) {
        if let Some(s) = greedy_is_solvable(&g, &c, r, 1).unwrap() {
            prop_assert!(verify_solution(&g, &c, r, 1, &s));
            prop_assert!(solvable(&g, &c, r, 1));
        }
    }

    #[test]
    fn bfs_tree_preserves_root_distances(g in graph(8, &[2]), r in 0usize..8) {
        let r = r % g.n();
        let t = g.bfs_spanning_tree(r);
        let depths = t.depths();
        prop_assert_eq!(depths, g.distances_from(r).to_vec());
        prop_assert!(t.to_graph().is_tree());
    }

    #[test]
    fn spanning_trees_are_harder(g in graph(5, &[2]), r in 0usize..5) {
        let r = r % g.n();
        let t = g.bfs_spanning_tree(r).to_graph();
        let pg = pebbling_number(&g, r, 1, PebblingOptions::default()).unwrap();
        let pt = pebbling_number(&t, r, 1, PebblingOptions::default()).unwrap();
        prop_assert!(pt.value >= pg.value);
        prop_assert!(!solvable(&g, &pg.witness, r, 1));
        prop_assert_eq!(pg.witness.size() + 1, pg.value);
    }

    #[test]
    fn pebbling_number_grows_with_k(g in graph(4, &[1, 2, 3]), r in 0usize..4) {
        let r = r % g.n();
        let opts = PebblingOptions::default();
        let p1 = pebbling_number(&g, r, 1, opts).unwrap().value;
        let p2 = pebbling_number(&g, r, 2, opts).unwrap().value;
        prop_assert!(p2 > p1);
    }

    #[test]
    fn block_decomposition_invariants(g in graph(9, &[2])) {
        let bc = block_cutpoint_graph(&g);
        prop_assert!(bc.is_tree());
        for e in g.edges() {
            let holding = bc.blocks.iter().filter(|b| b.contains(&e.u) && b.contains(&e.v)).count();
            prop_assert_eq!(holding, 1);
        }
        for v in 0..g.n() {
            prop_assert_eq!(bc.is_cut_vertex(v), bc.blocks_containing(v).len() >= 2);
        }
    }

    #[test]
    fn partitions_match_the_corollary(t in tree(9), r in 0usize..9, k in 1u64..=4) {
        let r = r % t.n();
        let p = r_maximal_partition(&t, r).unwrap();
        prop_assert!(p.is_valid_for(&t));
        let lengths = p.lengths();
        prop_assert!(lengths.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(lengths.iter().sum::<usize>() + 1, t.n());
        prop_assert_eq!(corollary_formula(t.n(), &lengths, k).unwrap(), f_value(&p, k));
        let c = unsolvable_config(&t, &p).unwrap();
        prop_assert_eq!(num_bigint::BigUint::from(c.size()) + 1u32, f_value(&p, 1));
    }

    #[test]
    fn edge_lists_round_trip(g in graph(7, &[1, 2, 3, 10])) {
        let text = write_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back.graph, &g);
        prop_assert_eq!(write_edge_list(&back.graph), text);
    }

    #[test]
    fn configurations_round_trip((g, _r, c) in instance(7, &[2], 20)) {
        let lg = LabeledGraph::unlabeled(g);
        let back = parse_configuration(&write_configuration(&c), &lg).unwrap();
        prop_assert_eq!(back, c);
    }
}
