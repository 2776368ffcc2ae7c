//! Triangle factors of dense balanced tripartite graphs via strong coloring.
//!
//! The cross-complement of a tripartite graph with parts of size `N` and
//! minimum degree at least `⌈3N/2⌉` has maximum degree at most `⌊N/2⌋`, so
//! its three parts form a valid three-block strong-coloring instance. Every
//! color class is then an independent transversal of the complement, that
//! is, a triangle of the original graph.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructions::rng;
use crate::engine::strong_coloring;
use crate::error::{FactorError, ParseError};
use crate::format::{content_lines, parse_fields};
use crate::graph::{BlockPartition, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripartiteInstance {
    parts: [Vec<Vertex>; 3],
    part_of: Vec<usize>,
    graph: Graph,
}

impl TripartiteInstance {
    /// Parts are the id ranges `[0,N)`, `[N,2N)`, `[2N,3N)`.
    pub fn new(part_size: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, FactorError> {
        let parts = [0, 1, 2].map(|i| (i * part_size..(i + 1) * part_size).collect());
        Self::from_parts(parts, edges)
    }

    pub fn from_parts(
        parts: [Vec<Vertex>; 3],
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, FactorError> {
        let n = parts[0].len();
        if parts.iter().any(|p| p.len() != n) {
            return Err(FactorError::Invalid("parts must have equal size".into()));
        }
        let total = 3 * n;
        let mut part_of = vec![usize::MAX; total];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= total {
                    return Err(FactorError::Invalid(format!("vertex {v} outside 0..{total}")));
                }
                if part_of[v] != usize::MAX {
                    return Err(FactorError::Invalid(format!("vertex {v} lies in two parts")));
                }
                part_of[v] = i;
            }
        }
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u < total && v < total && part_of[u] == part_of[v]) {
            return Err(FactorError::Invalid(format!("edge {u} {v} lies inside one part")));
        }
        let graph = Graph::from_edges(total, edges).map_err(|e| FactorError::Invalid(e.to_string()))?;
        Ok(TripartiteInstance { parts, part_of, graph })
    }

    /// Every cross pair is an edge.
    pub fn complete(part_size: usize) -> Self {
        let edges = cross_pairs(part_size);
        Self::new(part_size, edges).expect("cross pairs form a tripartite graph")
    }

    pub fn part_size(&self) -> usize {
        self.parts[0].len()
    }

    pub fn parts(&self) -> &[Vec<Vertex>; 3] {
        &self.parts
    }

    pub fn part_of(&self, v: Vertex) -> usize {
        self.part_of[v]
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn is_triangle(&self, [a, b, c]: [Vertex; 3]) -> bool {
        self.graph.adjacent(a, b) && self.graph.adjacent(b, c) && self.graph.adjacent(a, c)
    }
}

fn cross_pairs(part_size: usize) -> Vec<(Vertex, Vertex)> {
    let total = 3 * part_size;
    (0..total)
        .flat_map(|u| (u + 1..total).map(move |v| (u, v)))
        .filter(|&(u, v)| u / part_size != v / part_size)
        .collect()
}

/// `N` disjoint triangles, each listed in part order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleFactor {
    pub triangles: Vec<[Vertex; 3]>,
}

pub fn min_cross_degree(t: &TripartiteInstance) -> usize {
    t.graph.min_degree()
}

pub fn required_degree(part_size: usize) -> usize {
    (3 * part_size).div_ceil(2)
}

/// Cross-complement of `t` with the three parts as blocks of size `N`.
pub fn reduce_to_strong_coloring(t: &TripartiteInstance) -> Result<(Graph, BlockPartition), FactorError> {
    let n = t.part_size();
    let required = required_degree(n);
    let total = 3 * n;
    if let Some(vertex) = (0..total).min_by_key(|&v| (t.graph.degree(v), v)) {
        let degree = t.graph.degree(vertex);
        if degree < required {
            return Err(FactorError::DegreeTooLow { vertex, degree, required });
        }
    }
    let complement = (0..total).flat_map(|u| {
        (u + 1..total)
            .filter(move |&v| t.part_of[u] != t.part_of[v] && !t.graph.adjacent(u, v))
            .map(move |v| (u, v))
    });
    let h = Graph::from_edges(total, complement).expect("complement edges are simple");
    let blocks = t.parts.to_vec();
    let p = BlockPartition::new(blocks).map_err(|e| FactorError::Invalid(e.to_string()))?;
    Ok((h, p))
}

pub fn k3_factor(t: &TripartiteInstance) -> Result<TriangleFactor, FactorError> {
    let n = t.part_size();
    let (h, p) = reduce_to_strong_coloring(t)?;
    if n == 0 {
        return Ok(TriangleFactor { triangles: Vec::new() });
    }
    let solution = strong_coloring(&h, &p)?;
    let mut triangles = vec![[usize::MAX; 3]; n];
    for (v, &c) in solution.coloring.as_slice().iter().enumerate() {
        triangles[c][t.part_of[v]] = v;
    }
    let factor = TriangleFactor { triangles };
    verify_factor(t, &factor).map_err(FactorError::Invalid)?;
    Ok(factor)
}

/// Checks count, one vertex per part, disjointness, coverage and triangle-ness.
pub fn verify_factor(t: &TripartiteInstance, f: &TriangleFactor) -> Result<(), String> {
    let n = t.part_size();
    if f.triangles.len() != n {
        return Err(format!("{} triangles for parts of size {n}", f.triangles.len()));
    }
    let mut seen = vec![false; 3 * n];
    for tri in &f.triangles {
        let mut parts_hit = [false; 3];
        for &v in tri {
            if v >= 3 * n {
                return Err(format!("vertex {v} outside the instance"));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} used twice"));
            }
            parts_hit[t.part_of[v]] = true;
        }
        if parts_hit != [true; 3] {
            return Err(format!("{tri:?} does not meet every part"));
        }
        if !t.is_triangle(*tri) {
            return Err(format!("{tri:?} is not a triangle"));
        }
    }
    Ok(())
}

/// Exhaustive factor search; exponential, meant for `N ≤ 4`.
pub fn brute_force_factor(t: &TripartiteInstance) -> Option<TriangleFactor> {
    fn extend(t: &TripartiteInstance, used: &mut [bool], acc: &mut Vec<[Vertex; 3]>) -> bool {
        let Some(&a) = t.parts[0].iter().find(|&&a| !used[a]) else {
            return true;
        };
        used[a] = true;
        for &b in &t.parts[1] {
            if used[b] || !t.graph.adjacent(a, b) {
                continue;
            }
            used[b] = true;
            for &c in &t.parts[2] {
                if used[c] || !t.graph.adjacent(a, c) || !t.graph.adjacent(b, c) {
                    continue;
                }
                used[c] = true;
                acc.push([a, b, c]);
                if extend(t, used, acc) {
                    return true;
                }
                acc.pop();
                used[c] = false;
            }
            used[b] = false;
        }
        used[a] = false;
        false
    }
    let mut used = vec![false; 3 * t.part_size()];
    let mut acc = Vec::new();
    extend(t, &mut used, &mut acc).then_some(TriangleFactor { triangles: acc })
}

/// Complete tripartite graph with shuffled cross edges removed while both
/// endpoints stay at or above `min_degree`, up to a random number of removals.
pub fn random_dense_tripartite(part_size: usize, min_degree: usize, seed: u64) -> TripartiteInstance {
    let mut rng = rng(seed);
    let mut edges = cross_pairs(part_size);
    let mut degree = vec![2 * part_size; 3 * part_size];
    edges.shuffle(&mut rng);
    let budget = rng.gen_range(0..=edges.len());
    let mut kept = Vec::with_capacity(edges.len());
    let mut removed = 0;
    for (u, v) in edges {
        if removed < budget && degree[u] > min_degree && degree[v] > min_degree {
            degree[u] -= 1;
            degree[v] -= 1;
            removed += 1;
        } else {
            kept.push((u, v));
        }
    }
    TripartiteInstance::new(part_size, kept).expect("cross edges only")
}

/// Header `t <N>` followed by cross-edge lines `<u> <v>` with `u < v`.
pub fn parse_tripartite(text: &str) -> Result<TripartiteInstance, ParseError> {
    let mut lines = content_lines(text);
    let (number, header) = lines.next().ok_or_else(|| ParseError::syntax(1, "missing header"))?;
    let rest = header
        .strip_prefix("t ")
        .ok_or_else(|| ParseError::syntax(number, "header must be \"t <N>\""))?;
    let [n] = parse_fields::<1>(rest, number)?;
    let mut edges = Vec::new();
    for (number, line) in lines {
        let [u, v] = parse_fields::<2>(line, number)?;
        if u >= v {
            return Err(ParseError::syntax(number, format!("edge {u} {v} must list the smaller id first")));
        }
        if v >= 3 * n {
            return Err(ParseError::syntax(number, format!("vertex {v} outside 0..{}", 3 * n)));
        }
        if u / n == v / n {
            return Err(ParseError::syntax(number, format!("edge {u} {v} lies inside one part")));
        }
        edges.push((u, v));
    }
    let total = 3 * n;
    Graph::from_edges(total, edges.iter().copied())?;
    Ok(TripartiteInstance::new(n, edges).expect("validated above"))
}

pub fn write_tripartite(t: &TripartiteInstance) -> String {
    let mut out = format!("t {}\n", t.part_size());
    for (u, v) in t.graph.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

pub fn write_factor(f: &TriangleFactor) -> String {
    let mut out = String::new();
    for [a, b, c] in &f.triangles {
        writeln!(out, "{a} {b} {c}").expect("writing to a String");
    }
    out
}
