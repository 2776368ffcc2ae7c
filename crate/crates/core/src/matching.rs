//! Bipartite complements and perfect matchings with Hall-violator
//! certificates; drives the two-block regime.

use serde::Serialize;

use crate::engine::Diagnostic;
use crate::error::{MatchingError, SolveError};
use crate::graph::{BlockPartition, Graph, StrongColoring, Vertex};

/// Bipartite graph between two equal-size disjoint vertex lists.
/// Edges are stored by position: `adjacency[i]` lists indices into `right`.
#[derive(Clone, Debug)]
pub struct Bipartition {
    left: Vec<Vertex>,
    right: Vec<Vertex>,
    adjacency: Vec<Vec<usize>>,
}

impl Bipartition {
    /// Builds from vertex-id edges. Endpoints must lie on their declared side.
    pub fn new(
        left: Vec<Vertex>,
        right: Vec<Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, MatchingError> {
        check_sides(&left, &right)?;
        let mut adjacency = vec![Vec::new(); left.len()];
        for (a, b) in edges {
            let i = left.iter().position(|&x| x == a).ok_or(MatchingError::WrongSide(a))?;
            let j = right.iter().position(|&x| x == b).ok_or(MatchingError::WrongSide(b))?;
            if !adjacency[i].contains(&j) {
                adjacency[i].push(j);
            }
        }
        adjacency.iter_mut().for_each(|l| l.sort_unstable());
        Ok(Bipartition {
            left,
            right,
            adjacency,
        })
    }

    pub fn left(&self) -> &[Vertex] {
        &self.left
    }

    pub fn right(&self) -> &[Vertex] {
        &self.right
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(move |(i, l)| l.iter().map(move |&j| (self.left[i], self.right[j])))
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        let (Some(i), Some(j)) = (
            self.left.iter().position(|&x| x == a),
            self.right.iter().position(|&x| x == b),
        ) else {
            return false;
        };
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Right-side neighbors of a set of left vertices.
    pub fn neighborhood(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut hit = vec![false; self.right.len()];
        for &a in set {
            if let Some(i) = self.left.iter().position(|&x| x == a) {
                for &j in &self.adjacency[i] {
                    hit[j] = true;
                }
            }
        }
        (0..self.right.len())
            .filter(|&j| hit[j])
            .map(|j| self.right[j])
            .collect()
    }
}

fn check_sides(left: &[Vertex], right: &[Vertex]) -> Result<(), MatchingError> {
    if left.len() != right.len() {
        return Err(MatchingError::UnequalSides {
            left: left.len(),
            right: right.len(),
        });
    }
    if let Some(&v) = left.iter().find(|v| right.contains(v)) {
        return Err(MatchingError::Overlap(v));
    }
    Ok(())
}

/// A left set `S` whose neighborhood is smaller than `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallViolator {
    pub set: Vec<Vertex>,
    pub neighborhood: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingResult {
    /// `(left, right)` pairs in left order; covers every left vertex.
    Perfect(Vec<(Vertex, Vertex)>),
    Violator(HallViolator),
}

/// Pairs `(a, b)` with `a ∈ v1`, `b ∈ v2` and `ab ∉ E(g)`.
pub fn bipartite_complement(
    g: &Graph,
    v1: &[Vertex],
    v2: &[Vertex],
) -> Result<Bipartition, MatchingError> {
    check_sides(v1, v2)?;
    let adjacency = v1
        .iter()
        .map(|&a| (0..v2.len()).filter(|&j| !g.adjacent(a, v2[j])).collect())
        .collect();
    Ok(Bipartition {
        left: v1.to_vec(),
        right: v2.to_vec(),
        adjacency,
    })
}

/// Augmenting-path search. On failure the alternating tree of the
/// unmatched root is returned as a Hall violator, re-checked before return.
pub fn perfect_matching(b: &Bipartition) -> MatchingResult {
    let n = b.left.len();
    let mut mate_of_right: Vec<Option<usize>> = vec![None; b.right.len()];
    let mut visited = vec![false; b.right.len()];

    for root in 0..n {
        visited.iter_mut().for_each(|x| *x = false);
        if !augment(b, root, &mut visited, &mut mate_of_right) {
            let mut set = vec![b.left[root]];
            set.extend(
                (0..b.right.len())
                    .filter(|&j| visited[j])
                    .filter_map(|j| mate_of_right[j].map(|i| b.left[i])),
            );
            set.sort_unstable();
            let neighborhood = b.neighborhood(&set);
            assert!(
                neighborhood.len() < set.len(),
                "alternating tree is not a Hall violator"
            );
            return MatchingResult::Violator(HallViolator { set, neighborhood });
        }
    }

    let mut pairs = vec![(0, 0); n];
    for (j, mate) in mate_of_right.iter().enumerate() {
        let i = mate.expect("perfect matching covers every right vertex");
        pairs[i] = (b.left[i], b.right[j]);
    }
    debug_assert!(pairs.iter().all(|&(a, r)| b.has_edge(a, r)));
    MatchingResult::Perfect(pairs)
}

fn augment(
    b: &Bipartition,
    i: usize,
    visited: &mut [bool],
    mate_of_right: &mut [Option<usize>],
) -> bool {
    for &j in &b.adjacency[i] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        let free = match mate_of_right[j] {
            None => true,
            Some(other) => augment(b, other, visited, mate_of_right),
        };
        if free {
            mate_of_right[j] = Some(i);
            return true;
        }
    }
    false
}

/// Colors a two-block instance: the i-th matched complement pair gets color i.
pub fn two_block_coloring(g: &Graph, p: &BlockPartition) -> Result<StrongColoring, SolveError> {
    if p.num_blocks() != 2 {
        return Err(SolveError::UnsupportedRegime(format!(
            "two-block coloring needs 2 blocks, got {}",
            p.num_blocks()
        )));
    }
    let k = p.block_size();
    let delta = g.max_degree();
    if k < 2 * delta {
        return Err(SolveError::UnsupportedRegime(format!(
            "block size {k} < 2Δ = {}",
            2 * delta
        )));
    }
    let complement = bipartite_complement(g, p.block(0), p.block(1))
        .map_err(|e| SolveError::PartitionMismatch(e.to_string()))?;
    match perfect_matching(&complement) {
        MatchingResult::Perfect(pairs) => {
            let mut colors = vec![usize::MAX; p.vertex_count()];
            for (c, (a, b)) in pairs.into_iter().enumerate() {
                colors[a] = c;
                colors[b] = c;
            }
            Ok(StrongColoring(colors))
        }
        MatchingResult::Violator(v) => Err(SolveError::InternalContradiction(Box::new(
            Diagnostic::new(
                "two_block_coloring",
                "bipartite complement has no perfect matching although k >= 2Δ",
                &v,
            ),
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_strong_coloring, Verdict};

    fn k22() -> Graph {
        Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(bipartite_complement(&k22(), &[0, 1], &[2, 3]).unwrap().edge_count(), 0);
        let full = bipartite_complement(&Graph::empty(4), &[0, 1], &[2, 3]).unwrap();
        assert_eq!(full.edge_count(), 4);
        // 4-cycle 0-2-1-3-0 uses every cross pair.
        let c4 = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(bipartite_complement(&c4, &[0, 1], &[2, 3]).unwrap().edge_count(), 0);
    }

    #[test]
    fn complement_ignores_inner_edges() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(bipartite_complement(&g, &[0, 1], &[2, 3]).unwrap().edge_count(), 4);
    }

    #[test]
    fn complement_rejects_bad_sides() {
        let g = Graph::empty(4);
        assert_eq!(
            bipartite_complement(&g, &[0, 1], &[1, 2]).unwrap_err(),
            MatchingError::Overlap(1)
        );
        assert!(matches!(
            bipartite_complement(&g, &[0, 1], &[2]),
            Err(MatchingError::UnequalSides { .. })
        ));
    }

    #[test]
    fn complete_bipartite_matches() {
        let b = Bipartition::new(
            vec![0, 1, 2],
            vec![3, 4, 5],
            (0..3).flat_map(|a| (3..6).map(move |r| (a, r))),
        )
        .unwrap();
        match perfect_matching(&b) {
            MatchingResult::Perfect(pairs) => assert_eq!(pairs.len(), 3),
            other => panic!("expected matching, got {other:?}"),
        }
    }

    #[test]
    fn star_yields_violator() {
        let b = Bipartition::new(vec![0, 1], vec![2, 3], [(0, 2), (1, 2)]).unwrap();
        assert_eq!(
            perfect_matching(&b),
            MatchingResult::Violator(HallViolator {
                set: vec![0, 1],
                neighborhood: vec![2]
            })
        );
    }

    #[test]
    fn two_block_edgeless() {
        let g = Graph::empty(4);
        let p = BlockPartition::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let c = two_block_coloring(&g, &p).unwrap();
        assert_eq!(verify_strong_coloring(&g, &p, &c).unwrap(), Verdict::Valid);
    }

    #[test]
    fn two_block_rejects_small_k() {
        let g = k22();
        let p = BlockPartition::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(
            two_block_coloring(&g, &p),
            Err(SolveError::UnsupportedRegime(_))
        ));
    }
}
