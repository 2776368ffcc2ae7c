use serde::Serialize;

use super::partial::PartialStrongColoring;
use crate::graph::{BlockPartition, Graph, Vertex};

/// One uncolored vertex per block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Pivots(pub [Vertex; 3]);

impl Pivots {
    pub fn get(&self, i: usize) -> Vertex {
        self.0[i]
    }

    /// Number of edges induced by the three pivots.
    pub fn edge_count(&self, g: &Graph) -> usize {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
            .iter()
            .filter(|&&(u, v)| g.adjacent(u, v))
            .count()
    }
}

/// Maps logical positions (the roles used by a rewrite rule) to block
/// indices: logical position `i` lives in block `perm[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Relabel(pub [usize; 3]);

impl Relabel {
    pub const IDENTITY: Relabel = Relabel([0, 1, 2]);

    pub const ALL: [Relabel; 6] = [
        Relabel([0, 1, 2]),
        Relabel([0, 2, 1]),
        Relabel([1, 0, 2]),
        Relabel([1, 2, 0]),
        Relabel([2, 0, 1]),
        Relabel([2, 1, 0]),
    ];

    /// Relabeling with `first` at logical 0, `second` at logical 1.
    pub fn with_leading(first: usize, second: usize) -> Relabel {
        debug_assert!(first != second && first < 3 && second < 3);
        Relabel([first, second, 3 - first - second])
    }

    pub fn block(&self, logical: usize) -> usize {
        self.0[logical]
    }

    /// Logical view of a block-indexed triple.
    pub fn pick<T: Copy>(&self, by_block: [T; 3]) -> [T; 3] {
        [by_block[self.0[0]], by_block[self.0[1]], by_block[self.0[2]]]
    }

    /// Block-indexed triple from a logical one.
    pub fn place<T: Copy>(&self, logical: [T; 3]) -> [T; 3] {
        let mut out = logical;
        for (i, &b) in self.0.iter().enumerate() {
            out[b] = logical[i];
        }
        out
    }
}

/// The sets `X_i` of block-`i` vertices that are uncolored or whose color
/// does not appear in the neighborhood of pivot `v_i`.
#[derive(Clone, Debug, Serialize)]
pub struct SwapSets {
    sets: [Vec<Vertex>; 3],
    /// `t_i`: neighbors of `v_i` among the pivots.
    pivot_neighbors: [usize; 3],
    #[serde(skip)]
    member: Vec<bool>,
}

impl SwapSets {
    pub fn set(&self, i: usize) -> &[Vertex] {
        &self.sets[i]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.member.get(v).copied().unwrap_or(false)
    }

    pub fn pivot_neighbors(&self, i: usize) -> usize {
        self.pivot_neighbors[i]
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.sets[0].len(), self.sets[1].len(), self.sets[2].len()]
    }
}

/// Builds the swap sets and checks `|X_i| ≥ k − deg(v_i) + t_i` exactly.
pub fn compute_swap_sets(
    g: &Graph,
    p: &BlockPartition,
    chi: &PartialStrongColoring,
    pivots: Pivots,
) -> Result<SwapSets, String> {
    let k = p.block_size();
    let mut member = vec![false; p.vertex_count()];
    let mut near = vec![false; k];
    let mut sets: [Vec<Vertex>; 3] = Default::default();
    let mut pivot_neighbors = [0; 3];
    for i in 0..3 {
        let v = pivots.get(i);
        if chi.color(v).is_some() || p.block_of(v) != i {
            return Err(format!("pivot {v} is colored or outside block {i}"));
        }
        near.iter_mut().for_each(|x| *x = false);
        for &w in g.neighbors(v) {
            if let Some(c) = chi.color(w) {
                near[c] = true;
            }
        }
        let mut set: Vec<Vertex> = p
            .block(i)
            .iter()
            .copied()
            .filter(|&u| chi.color(u).is_none_or(|c| !near[c]))
            .collect();
        set.sort_unstable();
        for &u in &set {
            member[u] = true;
        }
        pivot_neighbors[i] = (0..3).filter(|&j| j != i && g.adjacent(v, pivots.get(j))).count();
        let bound = (k + pivot_neighbors[i]).saturating_sub(g.degree(v));
        if set.len() < bound {
            return Err(format!(
                "|X_{i}| = {} below k - deg(v_{i}) + t_{i} = {bound}",
                set.len()
            ));
        }
        sets[i] = set;
    }
    Ok(SwapSets {
        sets,
        pivot_neighbors,
        member,
    })
}

/// Vertex `x ∈ X_from` attaining `q = max |N(x) ∩ X_to|` over ordered
/// pairs of distinct swap sets; ties go to the lowest vertex id, then the
/// lowest target index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QMaximizer {
    pub q: usize,
    pub vertex: Vertex,
    pub from: usize,
    pub to: usize,
}

pub fn q_maximizer(g: &Graph, p: &BlockPartition, sets: &SwapSets) -> QMaximizer {
    let mut best: Option<QMaximizer> = None;
    for from in 0..3 {
        for &x in sets.set(from) {
            let mut counts = [0usize; 3];
            for &w in g.neighbors(x) {
                if sets.contains(w) {
                    counts[p.block_of(w)] += 1;
                }
            }
            for to in (0..3).filter(|&to| to != from) {
                let cand = QMaximizer {
                    q: counts[to],
                    vertex: x,
                    from,
                    to,
                };
                let better = match best {
                    None => true,
                    Some(b) => (cand.q, std::cmp::Reverse(cand.vertex), std::cmp::Reverse(cand.to))
                        > (b.q, std::cmp::Reverse(b.vertex), std::cmp::Reverse(b.to)),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
    }
    best.expect("swap sets contain the pivots")
}
