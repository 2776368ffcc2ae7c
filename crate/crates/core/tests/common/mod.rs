#![allow(dead_code)]

use std::collections::HashSet;

use rand::seq::SliceRandom;
use strongcol::constructions::rng;
use strongcol::graph::{Graph, Vertex};

/// Adjacency rows as bitmasks; `n ≤ 16`.
fn rows(g: &Graph) -> Vec<u16> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
        .collect()
}

fn from_rows(rows: &[u16]) -> Graph {
    let n = rows.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| rows[u] >> v & 1 == 1).map(move |v| (u, v)));
    Graph::from_edges(n, edges).unwrap()
}

/// Largest upper-triangle code over vertex orders sorted by decreasing
/// degree; equal for isomorphic graphs.
fn canonical_code(rows: &[u16]) -> u64 {
    let n = rows.len();
    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(rows[v].count_ones()));
    let degree_at: Vec<u32> = by_degree.iter().map(|&v| rows[v].count_ones()).collect();

    fn extend(rows: &[u16], degree_at: &[u32], order: &mut Vec<Vertex>, used: &mut u16, best: &mut u64) {
        let n = rows.len();
        if order.len() == n {
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    code = code << 1 | u64::from(rows[order[i]] >> order[j] & 1);
                }
            }
            *best = (*best).max(code);
            return;
        }
        let want = degree_at[order.len()];
        for v in 0..n {
            if *used >> v & 1 == 0 && rows[v].count_ones() == want {
                *used |= 1 << v;
                order.push(v);
                extend(rows, degree_at, order, used, best);
                order.pop();
                *used &= !(1 << v);
            }
        }
    }

    let mut best = 0;
    extend(rows, &degree_at, &mut Vec::with_capacity(n), &mut 0, &mut best);
    best
}

/// One representative per isomorphism class of graphs on `0..=max_n`
/// vertices, indexed by vertex count. Classes on `n` vertices are obtained
/// by attaching a new vertex to every subset of each class on `n - 1`.
pub fn graph_classes(max_n: usize) -> Vec<Vec<Graph>> {
    assert!(max_n <= 9);
    let mut out: Vec<Vec<Vec<u16>>> = vec![vec![vec![]]];
    for n in 1..=max_n {
        let mut seen = HashSet::new();
        let mut reps = Vec::new();
        for base in &out[n - 1] {
            for subset in 0u16..1 << (n - 1) {
                let mut r: Vec<u16> = base.clone();
                for (v, row) in r.iter_mut().enumerate() {
                    if subset >> v & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                r.push(subset);
                if seen.insert(canonical_code(&r)) {
                    reps.push(r);
                }
            }
        }
        out.push(reps);
    }
    out.iter().map(|level| level.iter().map(|r| from_rows(r)).collect()).collect()
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count() && canonical_code(&rows(a)) == canonical_code(&rows(b))
}

/// Shuffled vertex pairs added greedily while both endpoints stay below `d`.
pub fn near_regular_graph(n: usize, d: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut degree = vec![0; n];
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut r);
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if degree[u] < d && degree[v] < d {
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
