//! Randomized generate → solve → verify loop with greedy shrinking.

use crate::constructions::{random_bounded_degree_graph, random_equal_partition};
use crate::engine::{strong_coloring, SolveReport};
use crate::error::ConstructionError;
use crate::graph::{padded_size, verify_strong_coloring, BlockPartition, Graph, StrongColoring, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub n: usize,
    pub delta: usize,
    pub iters: usize,
    pub seed: u64,
}

/// Seed of the `iteration`-th instance.
pub fn instance_seed(seed: u64, iteration: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(iteration as u64)
}

/// The `iteration`-th instance: a random graph of maximum degree `delta`
/// and a random equal partition of its padding into blocks of `2·delta`.
pub fn instance(cfg: &FuzzConfig, iteration: usize) -> Result<(Graph, BlockPartition), ConstructionError> {
    let s = instance_seed(cfg.seed, iteration);
    let g = random_bounded_degree_graph(cfg.n, cfg.delta, s)?;
    let k = 2 * cfg.delta;
    let p = random_equal_partition(padded_size(cfg.n, k), k, !s)?;
    Ok((g, p))
}

pub type Solver<'a> = dyn Fn(&Graph, &BlockPartition) -> Result<(StrongColoring, SolveReport), String> + 'a;

pub fn engine_solver(g: &Graph, p: &BlockPartition) -> Result<(StrongColoring, SolveReport), String> {
    strong_coloring(g, p)
        .map(|s| (s.coloring, s.report))
        .map_err(|e| match e.diagnostic() {
            Some(d) => format!("{e}\n{}", d.to_json()),
            None => e.to_string(),
        })
}

/// `Some(reason)` if `solver` errs or returns a coloring that does not verify.
pub fn failure(solver: &Solver<'_>, g: &Graph, p: &BlockPartition) -> Option<String> {
    match solver(g, p) {
        Err(e) => Some(e),
        Ok((c, _)) => match verify_strong_coloring(g, p, &c) {
            Ok(Verdict::Valid) => None,
            Ok(Verdict::Invalid(v)) => Some(format!("invalid coloring: {v}")),
            Err(e) => Some(format!("invalid coloring: {e}")),
        },
    }
}

#[derive(Clone, Debug)]
pub struct FuzzFailure {
    pub iteration: usize,
    pub reason: String,
    pub graph: Graph,
    pub partition: BlockPartition,
    pub minimized_graph: Graph,
    pub minimized_partition: BlockPartition,
}

#[derive(Clone, Debug, Default)]
pub struct FuzzSummary {
    pub iterations: usize,
    pub failures: Vec<FuzzFailure>,
    /// Maxima and handler totals across successful runs.
    pub totals: SolveReport,
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary, ConstructionError> {
    run_fuzz_with(cfg, &engine_solver)
}

/// Iterations run in index order; the summary depends only on `cfg` and `solver`.
pub fn run_fuzz_with(cfg: &FuzzConfig, solver: &Solver<'_>) -> Result<FuzzSummary, ConstructionError> {
    if cfg.delta == 0 || cfg.n > 6 * cfg.delta {
        return Err(ConstructionError::Infeasible(format!(
            "need Δ ≥ ⌈n/6⌉ so that blocks of 2Δ yield at most three blocks, got n = {}, Δ = {}",
            cfg.n, cfg.delta
        )));
    }
    let mut summary = FuzzSummary::default();
    for iteration in 0..cfg.iters {
        let (g, p) = instance(cfg, iteration)?;
        summary.iterations += 1;
        match solver(&g, &p) {
            Ok((c, report)) if verify_strong_coloring(&g, &p, &c).is_ok_and(|v| v.is_valid()) => {
                absorb(&mut summary.totals, &report);
            }
            _ => {
                let reason = failure(solver, &g, &p).unwrap_or_else(|| "nondeterministic failure".into());
                let (minimized_graph, minimized_partition) =
                    minimize(&g, &p, |g, p| failure(solver, g, p).is_some());
                summary.failures.push(FuzzFailure {
                    iteration,
                    reason,
                    graph: g,
                    partition: p,
                    minimized_graph,
                    minimized_partition,
                });
            }
        }
    }
    Ok(summary)
}

fn absorb(total: &mut SolveReport, r: &SolveReport) {
    total.regime = total.regime.or(r.regime);
    total.block_size = total.block_size.max(r.block_size);
    total.blocks = total.blocks.max(r.blocks);
    total.max_degree = total.max_degree.max(r.max_degree);
    total.enlarge_calls += r.enlarge_calls;
    total.max_chain = total.max_chain.max(r.max_chain);
    total.max_edits = total.max_edits.max(r.max_edits);
    total.independent_pivots += r.independent_pivots;
    total.triangle += r.triangle;
    total.two_edges += r.two_edges;
    total.single_edge += r.single_edge;
}

/// Greedily drops edges, then vertices, while `fails` keeps holding. A
/// vertex is dropped by swapping it with the last vertex and shrinking the
/// graph, which is only attempted when the padded size is unchanged.
pub fn minimize(
    g: &Graph,
    p: &BlockPartition,
    fails: impl Fn(&Graph, &BlockPartition) -> bool,
) -> (Graph, BlockPartition) {
    let mut g = g.clone();
    let mut p = p.clone();
    let mut progress = true;
    while progress {
        progress = false;
        let edges: Vec<_> = g.edges().collect();
        for e in edges {
            let trial = Graph::from_edges(g.vertex_count(), g.edges().filter(|&f| f != e))
                .expect("subgraph of a simple graph");
            if fails(&trial, &p) {
                g = trial;
                progress = true;
            }
        }
        let mut v = g.vertex_count();
        while v > 0 {
            v -= 1;
            if let Some((tg, tp)) = drop_vertex(&g, &p, v) {
                if fails(&tg, &tp) {
                    g = tg;
                    p = tp;
                    progress = true;
                }
            }
        }
    }
    (g, p)
}

fn drop_vertex(g: &Graph, p: &BlockPartition, v: usize) -> Option<(Graph, BlockPartition)> {
    let n = g.vertex_count();
    if n == 0 || padded_size(n - 1, p.block_size()) != p.vertex_count() {
        return None;
    }
    let last = n - 1;
    let swap = |x: usize| if x == v { last } else if x == last { v } else { x };
    let edges = g
        .edges()
        .filter(|&(a, b)| a != v && b != v)
        .map(|(a, b)| (swap(a), swap(b)));
    let tg = Graph::from_edges(n - 1, edges).ok()?;
    let blocks = p.blocks().iter().map(|b| b.iter().map(|&x| swap(x)).collect()).collect();
    let tp = BlockPartition::new(blocks).ok()?;
    Some((tg, tp))
}
