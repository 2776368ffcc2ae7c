mod common;

use proptest::prelude::*;
use proptest::sample::subsequence;
use strongcol::constructions::{random_bounded_degree_graph, random_equal_partition};
use strongcol::engine::strong_coloring;
use strongcol::format::{parse_coloring, parse_graph, parse_partition, write_coloring, write_graph, write_partition};
use strongcol::fuzz::minimize;
use strongcol::graph::{padded_size, verify_strong_coloring, BlockPartition, Graph, StrongColoring, Verdict};
use strongcol::matching::{perfect_matching, Bipartition, MatchingResult};
use strongcol::oracle::{
    color_partition_exact, color_partition_exact_unpinned, strongly_colorable_all_partitions, OracleBudget,
    PartitionAnswer,
};
use strongcol::triangle::{reduce_to_strong_coloring, random_dense_tripartite, required_degree};

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = all_pairs(n);
        let len = pairs.len();
        subsequence(pairs, 0..=len).prop_map(move |e| Graph::from_edges(n, e).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn padding_is_minimal_multiple(n in 0usize..200, r in 1usize..40) {
        let t = padded_size(n, r);
        prop_assert_eq!(t % r, 0);
        prop_assert!(t >= n && t < n + r);
        let g = Graph::empty(n).pad_with_isolated(r).unwrap();
        prop_assert_eq!(g.vertex_count(), t);
    }

    #[test]
    fn padding_adds_only_isolated_vertices(g in small_graph(10), r in 1usize..6) {
        let padded = g.pad_with_isolated(r).unwrap();
        prop_assert_eq!(padded.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        for v in g.vertex_count()..padded.vertex_count() {
            prop_assert_eq!(padded.degree(v), 0);
        }
    }

    #[test]
    fn edge_order_is_irrelevant(
        (g, order) in small_graph(12).prop_flat_map(|g| {
            let m = g.edge_count();
            (Just(g), permutation(m), proptest::collection::vec(any::<bool>(), m))
        }).prop_map(|(g, perm, flips)| {
            let edges: Vec<_> = g.edges().collect();
            let order: Vec<_> = perm.iter().zip(&flips)
                .map(|(&i, &f)| if f { (edges[i].1, edges[i].0) } else { edges[i] })
                .collect();
            (g, order)
        })
    ) {
        prop_assert_eq!(Graph::from_edges(g.vertex_count(), order).unwrap(), g);
    }

    #[test]
    fn graph_text_round_trips(g in small_graph(15)) {
        let text = write_graph(&g);
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn partition_and_coloring_text_round_trip(order in (1usize..20).prop_flat_map(permutation), k in 1usize..5) {
        let n = order.len() - order.len() % k;
        prop_assume!(n > 0);
        let kept: Vec<usize> = order.iter().copied().filter(|&v| v < n).collect();
        let p = BlockPartition::new(kept.chunks(k).map(<[usize]>::to_vec).collect()).unwrap();
        prop_assert_eq!(parse_partition(&write_partition(&p)).unwrap(), p);
        let c = StrongColoring(kept.iter().map(|v| v % 7).collect());
        prop_assert_eq!(parse_coloring(&write_coloring(&c)).unwrap(), c);
    }

    #[test]
    fn color_relabeling_preserves_validity(seed in any::<u64>(), n in 6usize..40, perm_seed in any::<u64>()) {
        let delta = n.div_ceil(6).max(1);
        prop_assume!(delta < n);
        let g = random_bounded_degree_graph(n, delta, seed).unwrap();
        let k = 2 * delta;
        let p = random_equal_partition(padded_size(n, k), k, seed ^ 1).unwrap();
        let c = strong_coloring(&g, &p).unwrap().coloring;
        let perm = random_equal_partition(k, k, perm_seed).unwrap().block(0).to_vec();
        let relabeled = StrongColoring(c.as_slice().iter().map(|&x| perm[x]).collect());
        prop_assert_eq!(verify_strong_coloring(&g, &p, &relabeled).unwrap(), Verdict::Valid);
    }

    #[test]
    fn engine_output_always_verifies(seed in any::<u64>(), n in 2usize..80, extra in 0usize..40) {
        let lo = n.div_ceil(6);
        let delta = (lo + extra % (n / 2 + 1)).min(n - 1).max(1);
        let g = random_bounded_degree_graph(n, delta, seed).unwrap();
        let k = 2 * g.max_degree();
        let p = random_equal_partition(padded_size(n, k), k, !seed).unwrap();
        if p.num_blocks() <= 3 {
            let sol = strong_coloring(&g, &p).unwrap();
            prop_assert_eq!(verify_strong_coloring(&g, &p, &sol.coloring).unwrap(), Verdict::Valid);
            prop_assert!(sol.report.max_chain <= 3);
        } else {
            prop_assert!(strong_coloring(&g, &p).is_err());
        }
    }

    #[test]
    fn dense_near_regular_instances_are_solved(seed in any::<u64>(), n in 12usize..90) {
        let d = n.div_ceil(6);
        let g = common::near_regular_graph(n, d, seed);
        let k = 2 * g.max_degree().max(1);
        let p = random_equal_partition(padded_size(n, k), k, seed.rotate_left(7)).unwrap();
        let sol = strong_coloring(&g, &p).unwrap();
        prop_assert_eq!(verify_strong_coloring(&g, &p, &sol.coloring).unwrap(), Verdict::Valid);
    }

    #[test]
    fn matching_is_perfect_or_certified(
        (k, edges) in (1usize..9).prop_flat_map(|k| {
            let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (k..2 * k).map(move |b| (a, b))).collect();
            let len = pairs.len();
            (Just(k), subsequence(pairs, 0..=len))
        })
    ) {
        let b = Bipartition::new((0..k).collect(), (k..2 * k).collect(), edges).unwrap();
        let hall = (1u32..1 << k).all(|mask| {
            let s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            b.neighborhood(&s).len() >= s.len()
        });
        match perfect_matching(&b) {
            MatchingResult::Perfect(pairs) => {
                prop_assert!(hall);
                prop_assert_eq!(pairs.len(), k);
                let mut right: Vec<usize> = pairs.iter().map(|&(_, r)| r).collect();
                right.sort_unstable();
                right.dedup();
                prop_assert_eq!(right.len(), k);
                for (l, r) in pairs {
                    prop_assert!(b.has_edge(l, r));
                }
            }
            MatchingResult::Violator(v) => {
                prop_assert!(!hall);
                prop_assert!(v.neighborhood.len() < v.set.len());
                prop_assert_eq!(b.neighborhood(&v.set), v.neighborhood);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pinning_first_block_is_safe(g in small_graph(9), k in 2usize..5, seed in any::<u64>()) {
        let p = random_equal_partition(padded_size(g.vertex_count(), k), k, seed).unwrap();
        prop_assume!(p.vertex_count() <= 12);
        let budget = OracleBudget::default();
        let pinned = color_partition_exact(&g, &p, &budget).unwrap();
        let free = color_partition_exact_unpinned(&g, &p, &budget).unwrap();
        prop_assert_eq!(pinned.is_satisfiable(), free.is_satisfiable());
        for answer in [pinned, free] {
            if let PartitionAnswer::Satisfiable(c) = answer {
                prop_assert_eq!(verify_strong_coloring(&g, &p, &c).unwrap(), Verdict::Valid);
            }
        }
    }

    #[test]
    fn oracle_is_monotone_in_r(g in small_graph(7), r in 1usize..5) {
        let budget = OracleBudget::default();
        let now = strongly_colorable_all_partitions(&g, r, &budget).unwrap().is_colorable();
        let next = strongly_colorable_all_partitions(&g, r + 1, &budget).unwrap().is_colorable();
        prop_assert!(!now || next);
        if r <= g.max_degree() {
            prop_assert!(!now);
        }
    }

    #[test]
    fn engine_agrees_with_oracle(g in small_graph(8).prop_filter("has edges", |g| g.max_degree() > 0), seed in any::<u64>()) {
        let k = 2 * g.max_degree();
        prop_assume!(padded_size(g.vertex_count(), k) <= 12);
        let p = random_equal_partition(padded_size(g.vertex_count(), k), k, seed).unwrap();
        prop_assume!(p.num_blocks() <= 3);
        prop_assert!(strong_coloring(&g, &p).is_ok());
        prop_assert!(color_partition_exact(&g, &p, &OracleBudget::default()).unwrap().is_satisfiable());
    }

    #[test]
    fn complement_degree_identity(n in 1usize..15, seed in any::<u64>()) {
        let t = random_dense_tripartite(n, required_degree(n), seed);
        let (h, p) = reduce_to_strong_coloring(&t).unwrap();
        prop_assert_eq!(p.block_size(), n);
        for v in 0..3 * n {
            prop_assert_eq!(h.degree(v) + t.graph().degree(v), 2 * n);
        }
        prop_assert!(n >= 2 * h.max_degree());
    }

    #[test]
    fn isomorphic_relabelings_are_recognized(g in small_graph(8), seed in any::<u64>()) {
        let n = g.vertex_count();
        let perm = random_equal_partition(n, n, seed).unwrap().block(0).to_vec();
        let h = Graph::from_edges(n, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        prop_assert!(common::is_isomorphic(&g, &h));
    }

    #[test]
    fn minimization_preserves_failure(g in small_graph(10), seed in any::<u64>()) {
        let p = random_equal_partition(padded_size(g.vertex_count(), 3), 3, seed).unwrap();
        let fails = |g: &Graph, _: &BlockPartition| g.edge_count() >= 2;
        prop_assume!(fails(&g, &p));
        let (mg, mp) = minimize(&g, &p, fails);
        prop_assert!(fails(&mg, &mp));
        prop_assert_eq!(mg.edge_count(), 2);
        prop_assert_eq!(mp.vertex_count(), padded_size(mg.vertex_count(), 3));
    }
}
