//! Instance generators.
//!
//! Random instances are drawn from ChaCha8 (`rand_chacha::ChaCha8Rng`)
//! seeded with `seed_from_u64`; bounded draws use `Rng::gen_range` and
//! shuffles use `SliceRandom::shuffle`. Identical seed and parameters give
//! identical instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ConstructionError;
use crate::graph::{padded_size, BlockPartition, Graph, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `K_{Δ,Δ}` on `0..Δ` and `Δ..2Δ`, plus isolated vertices `2Δ..n`.
pub fn lower_bound_graph(delta: usize, n: usize) -> Result<Graph, ConstructionError> {
    if delta == 0 || 2 * delta > n {
        return Err(ConstructionError::DeltaTooLarge { delta, n });
    }
    let edges = (0..delta).flat_map(|a| (delta..2 * delta).map(move |b| (a, b)));
    Ok(Graph::from_edges(n, edges).expect("complete bipartite edges are simple"))
}

/// Partition of the padded vertex set into blocks of size `r` with side
/// `{0..Δ}` inside the first block and side `{Δ..2Δ}` inside the second;
/// the remaining ids fill the blocks in ascending order.
pub fn adversarial_partition(
    delta: usize,
    n: usize,
    r: usize,
) -> Result<BlockPartition, ConstructionError> {
    if delta == 0 || 2 * delta > n {
        return Err(ConstructionError::DeltaTooLarge { delta, n });
    }
    let total = padded_size(n, r.max(1));
    if r < delta || total < 2 * r {
        return Err(ConstructionError::Infeasible(format!(
            "blocks of size {r} cannot host a side of size {delta} in two separate blocks"
        )));
    }
    let mut blocks: Vec<Vec<Vertex>> = vec![Vec::with_capacity(r); total / r];
    blocks[0].extend(0..delta);
    blocks[1].extend(delta..2 * delta);
    let mut filler = 2 * delta..total;
    for block in &mut blocks {
        while block.len() < r {
            block.push(filler.next().expect("enough filler vertices"));
        }
    }
    Ok(BlockPartition::new(blocks)?)
}

/// Random graph with maximum degree exactly `delta_target`: a random hub
/// gets `delta_target` neighbors, then shuffled vertex pairs are added while
/// both endpoints have spare degree, up to a random edge budget.
pub fn random_bounded_degree_graph(
    n: usize,
    delta_target: usize,
    seed: u64,
) -> Result<Graph, ConstructionError> {
    if delta_target == 0 || n < delta_target + 1 {
        return Err(ConstructionError::Infeasible(format!(
            "need 1 ≤ Δ < n, got Δ = {delta_target}, n = {n}"
        )));
    }
    let mut rng = rng(seed);
    let mut degree = vec![0usize; n];
    let mut present = vec![false; n * n];
    let mut edges = Vec::new();
    let mut add = |u: usize, v: usize, edges: &mut Vec<(Vertex, Vertex)>| {
        let (a, b) = (u.min(v), u.max(v));
        if a == b || present[a * n + b] || degree[a] >= delta_target || degree[b] >= delta_target {
            return false;
        }
        present[a * n + b] = true;
        degree[a] += 1;
        degree[b] += 1;
        edges.push((a, b));
        true
    };

    let hub = rng.gen_range(0..n);
    let mut others: Vec<Vertex> = (0..n).filter(|&v| v != hub).collect();
    others.shuffle(&mut rng);
    for &v in &others[..delta_target] {
        add(hub, v, &mut edges);
    }

    let budget = rng.gen_range(delta_target..=n * delta_target / 2);
    let mut pairs: Vec<(Vertex, Vertex)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    for (u, v) in pairs {
        if edges.len() >= budget {
            break;
        }
        add(u, v, &mut edges);
    }
    Ok(Graph::from_edges(n, edges).expect("generated edges are simple"))
}

/// Uniformly shuffled vertices cut into consecutive blocks of size `k`.
pub fn random_equal_partition(
    vertex_count: usize,
    k: usize,
    seed: u64,
) -> Result<BlockPartition, ConstructionError> {
    if k == 0 || !vertex_count.is_multiple_of(k) {
        return Err(ConstructionError::Infeasible(format!(
            "{vertex_count} vertices cannot be split into blocks of {k}"
        )));
    }
    let mut order: Vec<Vertex> = (0..vertex_count).collect();
    order.shuffle(&mut rng(seed));
    Ok(BlockPartition::new(order.chunks(k).map(<[Vertex]>::to_vec).collect())?)
}

/// Cycle `0 - 1 - ... - (n-1) - 0`, for `n ≥ 3`.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bound_examples() {
        let g = lower_bound_graph(2, 6).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(g.degree(4), 0);
        assert_eq!(g.degree(5), 0);
        assert_eq!(lower_bound_graph(1, 2).unwrap().edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let k33 = lower_bound_graph(3, 6).unwrap();
        assert_eq!(k33.edge_count(), 9);
        assert_eq!(k33.min_degree(), 3);
        assert!(lower_bound_graph(4, 7).is_err());
    }

    #[test]
    fn lower_bound_edge_count_and_degree() {
        for delta in 1..6 {
            for n in 2 * delta..2 * delta + 4 {
                let g = lower_bound_graph(delta, n).unwrap();
                assert_eq!(g.edge_count(), delta * delta);
                assert_eq!(g.max_degree(), delta);
            }
        }
    }

    #[test]
    fn adversarial_examples() {
        let p = adversarial_partition(2, 6, 3).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1, 4], vec![2, 3, 5]]);
        let p = adversarial_partition(2, 4, 3).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1, 4], vec![2, 3, 5]]);
        let p = adversarial_partition(2, 8, 3).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1, 4], vec![2, 3, 5], vec![6, 7, 8]]);
        let p = adversarial_partition(1, 3, 1).unwrap();
        assert_eq!(p.num_blocks(), 3);
        assert!(adversarial_partition(3, 6, 2).is_err());
    }

    #[test]
    fn random_graph_is_deterministic_with_exact_max_degree() {
        let a = random_bounded_degree_graph(10, 3, 7).unwrap();
        let b = random_bounded_degree_graph(10, 3, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.max_degree(), 3);
        for seed in 0..50 {
            assert_eq!(random_bounded_degree_graph(20, 5, seed).unwrap().max_degree(), 5);
        }
        assert!(random_bounded_degree_graph(3, 3, 0).is_err());
    }

    #[test]
    fn random_graph_edge_counts_vary() {
        let counts: std::collections::BTreeSet<usize> = (0..100)
            .map(|s| random_bounded_degree_graph(10, 3, s).unwrap().edge_count())
            .collect();
        assert!(counts.len() > 3, "edge counts {counts:?}");
    }

    #[test]
    fn random_partition_examples() {
        let p = random_equal_partition(8, 4, 1).unwrap();
        assert_eq!((p.num_blocks(), p.block_size()), (2, 4));
        assert_eq!(p, random_equal_partition(8, 4, 1).unwrap());
        let p = random_equal_partition(12, 4, 9).unwrap();
        assert_eq!((p.num_blocks(), p.block_size()), (3, 4));
        assert!(random_equal_partition(10, 4, 0).is_err());
    }
}
