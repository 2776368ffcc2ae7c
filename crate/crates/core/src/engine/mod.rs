//! Constructive strong coloring for block size `k ≥ 2Δ` with at most three
//! blocks.
//!
//! One block is colored with all distinct colors, two blocks by a perfect
//! matching in the bipartite complement, and three blocks by growing a
//! partial strong coloring one class at a time. Each growth step fixes one
//! uncolored pivot per block and dispatches on the number of edges the
//! pivots induce; a single-edge step may hand new pivots to the two-edge
//! handler, which may in turn hand a triangle to the triangle handler.

mod cases;
mod exchanges;
mod partial;
mod swap;

use std::fmt;

use serde::Serialize;
use serde_json::json;

pub use cases::{case1_enlarge, case2_step, case3_step};
pub use exchanges::{
    enlarge_independent_multicolored, enlarge_quadruple, resolve_mixed_triple, uncolor_triple,
};
pub use partial::PartialStrongColoring;
pub use swap::{compute_swap_sets, q_maximizer, Pivots, QMaximizer, Relabel, SwapSets};

use crate::error::SolveError;
use crate::graph::{
    padded_size, verify_strong_coloring, BlockPartition, Color, Graph, StrongColoring, Vertex,
};
use crate::matching::two_block_coloring;

/// Longest handler chain a single growth step may run.
pub const MAX_CHAIN: usize = 3;
/// Most class writes a single growth step may perform.
pub const MAX_EDITS: usize = 12;

/// Machine-readable state captured when the engine reaches a
/// configuration its preconditions rule out.
#[derive(Clone, Debug, Serialize)]
pub struct Diagnostic {
    pub stage: String,
    pub message: String,
    pub state: serde_json::Value,
}

impl Diagnostic {
    pub fn new(stage: &str, message: impl Into<String>, state: &impl Serialize) -> Self {
        Diagnostic {
            stage: stage.to_string(),
            message: message.into(),
            state: serde_json::to_value(state).unwrap_or(serde_json::Value::Null),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagnostic serializes")
    }

    /// True for the residual single-edge configuration.
    pub fn is_residual_single_edge(&self) -> bool {
        self.stage == "case3_step" && self.message.starts_with("residual")
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.stage, self.message)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepOutcome {
    Enlarged,
    Repivoted(Pivots),
}

/// A graph together with a three-block partition of its padded vertex set.
#[derive(Clone, Copy)]
pub struct Instance<'a> {
    pub g: &'a Graph,
    pub p: &'a BlockPartition,
}

impl<'a> Instance<'a> {
    pub fn new(g: &'a Graph, p: &'a BlockPartition) -> Self {
        Instance { g, p }
    }

    pub(crate) fn apply(
        &self,
        chi: &mut PartialStrongColoring,
        pivots: Pivots,
        modified: &[(Color, [Vertex; 3])],
        added: &[[Vertex; 3]],
        stage: &'static str,
    ) -> Result<Vec<Color>, SolveError> {
        let before = chi.clone();
        chi.rewrite(self.g, self.p, modified, added).map_err(|msg| {
            self.contradiction_with(
                stage,
                format!("invalid rewrite: {msg}"),
                &before,
                pivots,
                None,
                json!({ "modified": modified, "added": added }),
            )
        })
    }

    pub(crate) fn contradiction(
        &self,
        stage: &str,
        message: String,
        chi: &PartialStrongColoring,
        pivots: Pivots,
        sets: Option<&SwapSets>,
    ) -> SolveError {
        self.contradiction_with(stage, message, chi, pivots, sets, serde_json::Value::Null)
    }

    pub(crate) fn contradiction_with(
        &self,
        stage: &str,
        message: String,
        chi: &PartialStrongColoring,
        pivots: Pivots,
        sets: Option<&SwapSets>,
        extra: serde_json::Value,
    ) -> SolveError {
        let state = json!({
            "block_size": self.p.block_size(),
            "max_degree": self.g.max_degree(),
            "blocks": self.p.blocks(),
            "edges": self.g.edges().collect::<Vec<_>>(),
            "coloring": chi.colors(),
            "pivots": pivots.0,
            "swap_sets": sets,
            "extra": extra,
        });
        SolveError::InternalContradiction(Box::new(Diagnostic {
            stage: stage.to_string(),
            message,
            state,
        }))
    }
}

/// Handler that ran inside a growth step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Handler {
    IndependentPivots,
    Triangle,
    TwoEdges,
    SingleEdge,
}

/// What one call of [`enlarge_once`] did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepTrace {
    pub chain: Vec<Handler>,
    pub edits: usize,
}

/// Adds exactly one class to `chi`. Pivots are the lowest-id uncolored
/// vertex of each block.
pub fn enlarge_once(
    inst: &Instance<'_>,
    chi: &mut PartialStrongColoring,
) -> Result<StepTrace, SolveError> {
    let mut pivot = [0; 3];
    for (i, slot) in pivot.iter_mut().enumerate() {
        *slot = chi.first_uncolored(inst.p.block(i)).ok_or_else(|| {
            inst.contradiction(
                "enlarge_once",
                format!("block {i} has no uncolored vertex"),
                chi,
                Pivots([0; 3]),
                None,
            )
        })?;
    }
    let mut pivots = Pivots(pivot);
    let start = chi.class_count();
    chi.take_edits();
    let mut chain = Vec::new();

    loop {
        if chain.len() == MAX_CHAIN {
            return Err(inst.contradiction(
                "enlarge_once",
                format!("handler chain {chain:?} did not enlarge"),
                chi,
                pivots,
                None,
            ));
        }
        let outcome = match pivots.edge_count(inst.g) {
            0 => {
                chain.push(Handler::IndependentPivots);
                inst.apply(chi, pivots, &[], &[pivots.0], "enlarge_once")?;
                StepOutcome::Enlarged
            }
            3 => {
                chain.push(Handler::Triangle);
                case1_enlarge(inst, chi, pivots)?;
                StepOutcome::Enlarged
            }
            2 => {
                chain.push(Handler::TwoEdges);
                case2_step(inst, chi, pivots)?
            }
            _ => {
                chain.push(Handler::SingleEdge);
                case3_step(inst, chi, pivots)?
            }
        };
        match outcome {
            StepOutcome::Enlarged => break,
            StepOutcome::Repivoted(next) => {
                let before = pivots.edge_count(inst.g);
                let after = next.edge_count(inst.g);
                if after <= before {
                    return Err(inst.contradiction(
                        "enlarge_once",
                        format!("repivot went from {before} to {after} pivot edges"),
                        chi,
                        next,
                        None,
                    ));
                }
                pivots = next;
            }
        }
    }

    let edits = chi.take_edits();
    if chi.class_count() != start + 1 {
        return Err(inst.contradiction(
            "enlarge_once",
            format!("class count went from {start} to {}", chi.class_count()),
            chi,
            pivots,
            None,
        ));
    }
    chi.check_invariants(inst.g, inst.p)
        .map_err(|msg| inst.contradiction("enlarge_once", msg, chi, pivots, None))?;
    Ok(StepTrace { chain, edits })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// One block: every vertex its own color.
    SingleBlock,
    /// Two blocks: perfect matching in the bipartite complement.
    TwoBlocks,
    /// Three blocks: iterated class enlargement.
    ThreeBlocks,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::SingleBlock => "A",
            Regime::TwoBlocks => "B",
            Regime::ThreeBlocks => "C",
        }
    }
}

/// Counters for a [`strong_coloring`] run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub regime: Option<Regime>,
    pub block_size: usize,
    pub blocks: usize,
    pub max_degree: usize,
    pub enlarge_calls: usize,
    pub max_chain: usize,
    pub max_edits: usize,
    pub independent_pivots: usize,
    pub triangle: usize,
    pub two_edges: usize,
    pub single_edge: usize,
}

impl SolveReport {
    fn record(&mut self, trace: &StepTrace) {
        self.enlarge_calls += 1;
        self.max_chain = self.max_chain.max(trace.chain.len());
        self.max_edits = self.max_edits.max(trace.edits);
        for h in &trace.chain {
            match h {
                Handler::IndependentPivots => self.independent_pivots += 1,
                Handler::Triangle => self.triangle += 1,
                Handler::TwoEdges => self.two_edges += 1,
                Handler::SingleEdge => self.single_edge += 1,
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub coloring: StrongColoring,
    pub report: SolveReport,
}

/// Checks the hypothesis of [`strong_coloring`]: `p` partitions the graph
/// padded to a multiple of `k`, into at most three blocks, with `k ≥ 2Δ`.
pub fn check_preconditions(g: &Graph, p: &BlockPartition) -> Result<(), SolveError> {
    let k = p.block_size();
    let n = g.vertex_count();
    if p.num_blocks() == 0 {
        return if n == 0 {
            Ok(())
        } else {
            Err(SolveError::PartitionMismatch("empty partition".into()))
        };
    }
    if p.vertex_count() != padded_size(n, k) {
        return Err(SolveError::PartitionMismatch(format!(
            "partition covers {} vertices, padded graph has {}",
            p.vertex_count(),
            padded_size(n, k)
        )));
    }
    let delta = g.max_degree();
    if k < 2 * delta {
        return Err(SolveError::UnsupportedRegime(format!(
            "block size {k} < 2Δ = {}",
            2 * delta
        )));
    }
    if p.num_blocks() > 3 {
        return Err(SolveError::UnsupportedRegime(format!(
            "{} blocks; at most 3 are supported",
            p.num_blocks()
        )));
    }
    Ok(())
}

/// Strong coloring with `k` colors, where `k` is the block size of `p`.
/// The result is verified before it is returned.
pub fn strong_coloring(g: &Graph, p: &BlockPartition) -> Result<Solution, SolveError> {
    strong_coloring_with(g, p, |_| {})
}

/// As [`strong_coloring`], calling `observe` after every growth step.
pub fn strong_coloring_with(
    g: &Graph,
    p: &BlockPartition,
    mut observe: impl FnMut(&StepTrace),
) -> Result<Solution, SolveError> {
    check_preconditions(g, p)?;
    let k = p.block_size();
    let mut report = SolveReport {
        block_size: k,
        blocks: p.num_blocks(),
        max_degree: g.max_degree(),
        ..SolveReport::default()
    };
    let coloring = match p.num_blocks() {
        0 => StrongColoring(Vec::new()),
        1 => {
            report.regime = Some(Regime::SingleBlock);
            let mut colors = vec![0; k];
            for (c, &v) in p.block(0).iter().enumerate() {
                colors[v] = c;
            }
            StrongColoring(colors)
        }
        2 => {
            report.regime = Some(Regime::TwoBlocks);
            two_block_coloring(g, p)?
        }
        _ => {
            report.regime = Some(Regime::ThreeBlocks);
            let inst = Instance::new(g, p);
            let mut chi = PartialStrongColoring::new(p.vertex_count(), k);
            while !chi.is_complete() {
                let trace = enlarge_once(&inst, &mut chi)?;
                report.record(&trace);
                observe(&trace);
            }
            chi.into_coloring().expect("complete coloring")
        }
    };
    match verify_strong_coloring(g, p, &coloring) {
        Ok(v) if v.is_valid() => Ok(Solution { coloring, report }),
        other => Err(SolveError::InternalContradiction(Box::new(Diagnostic::new(
            "strong_coloring",
            format!("output failed verification: {other:?}"),
            &coloring,
        )))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_coloring_grows_by_one() {
        let g = Graph::from_edges(12, [(0, 4), (4, 8)]).unwrap();
        let p = BlockPartition::consecutive(12, 4).unwrap();
        let inst = Instance::new(&g, &p);
        let mut chi = PartialStrongColoring::new(12, 4);
        let trace = enlarge_once(&inst, &mut chi).unwrap();
        assert_eq!(chi.class_count(), 1);
        assert_eq!(trace.chain, vec![Handler::TwoEdges]);
    }

    #[test]
    fn single_block_uses_distinct_colors() {
        // star on 5 vertices: Δ = 4, k = 8
        let g = Graph::from_edges(5, (1..5).map(|v| (0, v))).unwrap();
        let p = BlockPartition::consecutive(8, 8).unwrap();
        let sol = strong_coloring(&g, &p).unwrap();
        let mut colors = sol.coloring.0.clone();
        colors.sort_unstable();
        assert_eq!(colors, (0..8).collect::<Vec<_>>());
        assert_eq!(sol.report.regime, Some(Regime::SingleBlock));
    }

    #[test]
    fn rejects_small_blocks_and_many_blocks() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2)]).unwrap();
        let p = BlockPartition::consecutive(4, 2).unwrap();
        assert!(matches!(strong_coloring(&g, &p), Err(SolveError::UnsupportedRegime(_))));
        let g = Graph::empty(8);
        let p = BlockPartition::consecutive(8, 2).unwrap();
        assert!(matches!(strong_coloring(&g, &p), Err(SolveError::UnsupportedRegime(_))));
        let p = BlockPartition::consecutive(6, 2).unwrap();
        assert!(matches!(strong_coloring(&g, &p), Err(SolveError::PartitionMismatch(_))));
    }

    #[test]
    fn three_blocks_take_k_steps() {
        let g = Graph::from_edges(12, [(0, 4), (0, 8), (4, 8), (1, 5), (2, 9)]).unwrap();
        let p = BlockPartition::consecutive(12, 4).unwrap();
        let sol = strong_coloring(&g, &p).unwrap();
        assert_eq!(sol.report.enlarge_calls, 4);
        assert!(sol.report.max_chain <= MAX_CHAIN);
    }
}
