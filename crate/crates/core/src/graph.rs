//! Simple undirected graphs, equal-size block partitions, and the strong
//! coloring verifier every other module defers to.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{GraphError, PartitionError};

pub type Vertex = usize;
pub type Color = usize;

/// Simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Self-loops, repeated edges and
    /// out-of-range endpoints are rejected rather than repaired.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Vertices outside `0..n` are treated as isolated padding.
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency.get(v).map_or(0, Vec::len)
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adjacency.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        match (self.adjacency.get(u), self.adjacency.get(v)) {
            (Some(a), Some(b)) => {
                if a.len() <= b.len() {
                    a.binary_search(&v).is_ok()
                } else {
                    b.binary_search(&u).is_ok()
                }
            }
            _ => false,
        }
    }

    /// Δ(G); zero for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Adds `r⌈n/r⌉ − n` isolated vertices so the vertex count is a multiple of `r`.
    pub fn pad_with_isolated(&self, r: usize) -> Result<Graph, GraphError> {
        if r == 0 {
            return Err(GraphError::ZeroBlockSize);
        }
        let target = padded_size(self.vertex_count(), r);
        let mut adjacency = self.adjacency.clone();
        adjacency.resize(target, Vec::new());
        Ok(Graph { adjacency })
    }

    /// Is `set` an independent set?
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.adjacent(u, v)))
    }
}

/// `r · ⌈n / r⌉` for `r ≥ 1`.
pub fn padded_size(n: usize, r: usize) -> usize {
    assert!(r > 0, "block size must be positive");
    n.div_ceil(r) * r
}

/// Ordered sequence of pairwise disjoint equal-size blocks covering `0..t·k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    blocks: Vec<Vec<Vertex>>,
    block_size: usize,
    owner: Vec<usize>,
}

impl BlockPartition {
    pub fn new(blocks: Vec<Vec<Vertex>>) -> Result<Self, PartitionError> {
        let block_size = blocks.first().map_or(0, Vec::len);
        if block_size == 0 && !blocks.is_empty() {
            return Err(PartitionError::EmptyBlock);
        }
        let total = blocks.len() * block_size;
        let mut owner = vec![usize::MAX; total];
        for (b, block) in blocks.iter().enumerate() {
            if block.len() != block_size {
                return Err(PartitionError::UnequalBlocks {
                    block: b,
                    size: block.len(),
                    expected: block_size,
                });
            }
            for &v in block {
                if v >= total {
                    return Err(PartitionError::VertexOutOfRange { vertex: v, total });
                }
                if owner[v] != usize::MAX {
                    return Err(PartitionError::Overlap(v));
                }
                owner[v] = b;
            }
        }
        Ok(BlockPartition {
            blocks,
            block_size,
            owner,
        })
    }

    /// Blocks `{0..k}, {k..2k}, ...` over `vertex_count` vertices.
    pub fn consecutive(vertex_count: usize, k: usize) -> Result<Self, PartitionError> {
        if k == 0 {
            return Err(PartitionError::EmptyBlock);
        }
        if !vertex_count.is_multiple_of(k) {
            return Err(PartitionError::NotDivisible { vertex_count, k });
        }
        let blocks = (0..vertex_count / k)
            .map(|b| (b * k..(b + 1) * k).collect())
            .collect();
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[Vertex] {
        &self.blocks[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn vertex_count(&self) -> usize {
        self.owner.len()
    }

    pub fn block_of(&self, v: Vertex) -> usize {
        self.owner[v]
    }
}

/// Total map from padded vertex ids to colors `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongColoring(pub Vec<Color>);

impl StrongColoring {
    pub fn color(&self, v: Vertex) -> Color {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }
}

/// First violated constraint found by [`verify_strong_coloring`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    MonochromaticEdge { u: Vertex, v: Vertex, color: Color },
    RepeatedColor { block: usize, color: Color },
    ColorOutOfRange { vertex: Vertex, color: Color },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::MonochromaticEdge { u, v, color } => {
                write!(f, "edge {u} {v} is monochromatic (color {color})")
            }
            Violation::RepeatedColor { block, color } => {
                write!(f, "block {block} repeats color {color}")
            }
            Violation::ColorOutOfRange { vertex, color } => {
                write!(f, "vertex {vertex} has color {color} outside the block range")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// The coloring, partition and graph disagree on the vertex set.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("domain mismatch: {0}")]
pub struct DomainMismatch(pub String);

/// Checks that `coloring` is proper on `g` and a bijection onto `0..k` in
/// every block of `p`. The partition may cover more vertices than `g`;
/// the extra ids are isolated padding.
pub fn verify_strong_coloring(
    g: &Graph,
    p: &BlockPartition,
    coloring: &StrongColoring,
) -> Result<Verdict, DomainMismatch> {
    if coloring.len() != p.vertex_count() {
        return Err(DomainMismatch(format!(
            "coloring covers {} vertices, partition covers {}",
            coloring.len(),
            p.vertex_count()
        )));
    }
    if g.vertex_count() > p.vertex_count() {
        return Err(DomainMismatch(format!(
            "graph has {} vertices, partition covers only {}",
            g.vertex_count(),
            p.vertex_count()
        )));
    }
    let k = p.block_size();
    for (v, &c) in coloring.0.iter().enumerate() {
        if c >= k {
            return Ok(Verdict::Invalid(Violation::ColorOutOfRange { vertex: v, color: c }));
        }
    }
    for (u, v) in g.edges() {
        if coloring.0[u] == coloring.0[v] {
            return Ok(Verdict::Invalid(Violation::MonochromaticEdge {
                u,
                v,
                color: coloring.0[u],
            }));
        }
    }
    let mut seen = vec![false; k];
    for (b, block) in p.blocks().iter().enumerate() {
        seen.iter_mut().for_each(|s| *s = false);
        for &v in block {
            let c = coloring.0[v];
            if std::mem::replace(&mut seen[c], true) {
                return Ok(Verdict::Invalid(Violation::RepeatedColor { block: b, color: c }));
            }
        }
    }
    Ok(Verdict::Valid)
}
