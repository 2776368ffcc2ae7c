//! Exact, exponential-time strong colorability for tiny graphs.

use std::ops::ControlFlow;

use crate::error::OracleError;
use crate::graph::{padded_size, BlockPartition, Graph, StrongColoring, Vertex};

/// Caps on the exhaustive searches. Exceeding any cap is reported as
/// [`OracleError::ResourceExceeded`], never as an answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_partitions: u64,
    pub node_limit: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 12,
            max_partitions: 1_000_000,
            node_limit: 100_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionAnswer {
    Satisfiable(StrongColoring),
    Unsatisfiable,
}

impl PartitionAnswer {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, PartitionAnswer::Satisfiable(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalAnswer {
    Colorable,
    /// First partition, in canonical enumeration order, with no strong coloring.
    Refuted(BlockPartition),
}

impl UniversalAnswer {
    pub fn is_colorable(&self) -> bool {
        matches!(self, UniversalAnswer::Colorable)
    }
}

/// Backtracking over per-block bijections. The i-th vertex of the first
/// block is pinned to color i; colors are interchangeable so no solution
/// is lost.
pub fn color_partition_exact(
    g: &Graph,
    p: &BlockPartition,
    budget: &OracleBudget,
) -> Result<PartitionAnswer, OracleError> {
    Search::new(g, p, budget)?.run(true)
}

/// Same search without pinning the first block.
pub fn color_partition_exact_unpinned(
    g: &Graph,
    p: &BlockPartition,
    budget: &OracleBudget,
) -> Result<PartitionAnswer, OracleError> {
    Search::new(g, p, budget)?.run(false)
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    order: Vec<Vertex>,
    block_of: Vec<usize>,
    color: Vec<Option<usize>>,
    /// `forbidden[v * k + c]`: colored neighbors of `v` with color `c`.
    forbidden: Vec<u32>,
    used: Vec<Vec<bool>>,
    nodes: u64,
    node_limit: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, p: &BlockPartition, budget: &OracleBudget) -> Result<Self, OracleError> {
        let total = p.vertex_count();
        if total > budget.max_vertices {
            return Err(OracleError::ResourceExceeded(format!(
                "{total} padded vertices exceed the cap of {}",
                budget.max_vertices
            )));
        }
        if g.vertex_count() > total {
            return Err(OracleError::ResourceExceeded(format!(
                "partition covers {total} vertices but the graph has {}",
                g.vertex_count()
            )));
        }
        let k = p.block_size();
        Ok(Search {
            g,
            k,
            order: p.blocks().concat(),
            block_of: (0..total).map(|v| p.block_of(v)).collect(),
            color: vec![None; total],
            forbidden: vec![0; total * k],
            used: vec![vec![false; k]; p.num_blocks()],
            nodes: 0,
            node_limit: budget.node_limit,
        })
    }

    fn run(mut self, pin: bool) -> Result<PartitionAnswer, OracleError> {
        let mut start = 0;
        if pin && self.k > 0 {
            for c in 0..self.k {
                let v = self.order[c];
                if self.forbidden[v * self.k + c] > 0 {
                    return Ok(PartitionAnswer::Unsatisfiable);
                }
                self.assign(v, c);
            }
            start = self.k;
        }
        if self.descend(start)? {
            let colors = self.color.iter().map(|c| c.expect("complete")).collect();
            Ok(PartitionAnswer::Satisfiable(StrongColoring(colors)))
        } else {
            Ok(PartitionAnswer::Unsatisfiable)
        }
    }

    fn allowed(&self, v: Vertex, c: usize) -> bool {
        !self.used[self.block_of[v]][c] && self.forbidden[v * self.k + c] == 0
    }

    fn assign(&mut self, v: Vertex, c: usize) {
        self.color[v] = Some(c);
        self.used[self.block_of[v]][c] = true;
        for &w in self.g.neighbors(v) {
            self.forbidden[w * self.k + c] += 1;
        }
    }

    fn unassign(&mut self, v: Vertex, c: usize) {
        self.color[v] = None;
        self.used[self.block_of[v]][c] = false;
        for &w in self.g.neighbors(v) {
            self.forbidden[w * self.k + c] -= 1;
        }
    }

    /// Every uncolored neighbor of `v` still has some admissible color.
    fn neighbors_viable(&self, v: Vertex) -> bool {
        self.g
            .neighbors(v)
            .iter()
            .filter(|&&w| self.color[w].is_none())
            .all(|&w| (0..self.k).any(|c| self.allowed(w, c)))
    }

    fn descend(&mut self, pos: usize) -> Result<bool, OracleError> {
        if pos == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(OracleError::ResourceExceeded(format!(
                "search exceeded {} nodes",
                self.node_limit
            )));
        }
        let v = self.order[pos];
        for c in 0..self.k {
            if !self.allowed(v, c) {
                continue;
            }
            self.assign(v, c);
            if self.neighbors_viable(v) && self.descend(pos + 1)? {
                return Ok(true);
            }
            self.unassign(v, c);
        }
        Ok(false)
    }
}

/// Number of unordered partitions of `total` labeled vertices into blocks
/// of size `k`, or `None` on overflow.
pub fn equal_partition_count(total: usize, k: usize) -> Option<u128> {
    if k == 0 || !total.is_multiple_of(k) {
        return Some(0);
    }
    let mut count: u128 = 1;
    let mut remaining = total;
    while remaining > 0 {
        count = count.checked_mul(binomial(remaining - 1, k - 1)?)?;
        remaining -= k;
    }
    Some(count)
}

fn binomial(n: usize, r: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Visits every unordered partition of `0..total` into blocks of size `k`
/// exactly once. Each new block opens with the lowest unassigned vertex and
/// is completed by combinations of higher unassigned vertices in
/// lexicographic order.
pub fn for_each_equal_partition<F>(total: usize, k: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[Vec<Vertex>]) -> ControlFlow<()>,
{
    if k == 0 || !total.is_multiple_of(k) {
        return ControlFlow::Continue(());
    }
    let mut assigned = vec![false; total];
    let mut blocks: Vec<Vec<Vertex>> = Vec::with_capacity(total / k);
    open_block(&mut assigned, &mut blocks, k, &mut visit)
}

fn open_block<F>(
    assigned: &mut [bool],
    blocks: &mut Vec<Vec<Vertex>>,
    k: usize,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Vec<Vertex>]) -> ControlFlow<()>,
{
    let Some(first) = assigned.iter().position(|&a| !a) else {
        return visit(blocks);
    };
    assigned[first] = true;
    blocks.push(vec![first]);
    let flow = fill_block(assigned, blocks, k, first + 1, visit);
    blocks.pop();
    assigned[first] = false;
    flow
}

fn fill_block<F>(
    assigned: &mut [bool],
    blocks: &mut Vec<Vec<Vertex>>,
    k: usize,
    from: Vertex,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Vec<Vertex>]) -> ControlFlow<()>,
{
    if blocks.last().expect("open block").len() == k {
        return open_block(assigned, blocks, k, visit);
    }
    for v in from..assigned.len() {
        if assigned[v] {
            continue;
        }
        assigned[v] = true;
        blocks.last_mut().expect("open block").push(v);
        let flow = fill_block(assigned, blocks, k, v + 1, visit);
        blocks.last_mut().expect("open block").pop();
        assigned[v] = false;
        flow?;
    }
    ControlFlow::Continue(())
}

/// Is `g` strongly `r`-colorable, i.e. does every partition of the padded
/// vertex set into blocks of size `r` admit a strong coloring?
pub fn strongly_colorable_all_partitions(
    g: &Graph,
    r: usize,
    budget: &OracleBudget,
) -> Result<UniversalAnswer, OracleError> {
    if r == 0 {
        return Err(OracleError::ResourceExceeded("block size must be positive".into()));
    }
    let total = padded_size(g.vertex_count(), r);
    if total > budget.max_vertices {
        return Err(OracleError::ResourceExceeded(format!(
            "{total} padded vertices exceed the cap of {}",
            budget.max_vertices
        )));
    }
    match equal_partition_count(total, r) {
        Some(c) if c <= budget.max_partitions as u128 => {}
        count => {
            return Err(OracleError::ResourceExceeded(format!(
                "{} partitions exceed the cap of {}",
                count.map_or("too many".to_string(), |c| c.to_string()),
                budget.max_partitions
            )))
        }
    }
    let mut outcome: Result<UniversalAnswer, OracleError> = Ok(UniversalAnswer::Colorable);
    let _ = for_each_equal_partition(total, r, |blocks| {
        let p = match BlockPartition::new(blocks.to_vec()) {
            Ok(p) => p,
            Err(e) => {
                outcome = Err(e.into());
                return ControlFlow::Break(());
            }
        };
        match color_partition_exact(g, &p, budget) {
            Ok(PartitionAnswer::Satisfiable(_)) => ControlFlow::Continue(()),
            Ok(PartitionAnswer::Unsatisfiable) => {
                outcome = Ok(UniversalAnswer::Refuted(p));
                ControlFlow::Break(())
            }
            Err(e) => {
                outcome = Err(e);
                ControlFlow::Break(())
            }
        }
    });
    outcome
}

/// Smallest `r` for which `g` is strongly `r`-colorable, scanning upward
/// from `Δ + 1`. Strong `r`-colorability implies strong `(r+1)`-colorability,
/// so the first success is the answer.
pub fn exact_strong_chromatic_number(g: &Graph, budget: &OracleBudget) -> Result<usize, OracleError> {
    let mut r = g.max_degree() + 1;
    loop {
        if strongly_colorable_all_partitions(g, r, budget)?.is_colorable() {
            return Ok(r);
        }
        r += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle_graph, lower_bound_graph};
    use crate::graph::verify_strong_coloring;

    #[test]
    fn partition_counts() {
        assert_eq!(equal_partition_count(8, 4), Some(35));
        assert_eq!(equal_partition_count(12, 4), Some(5775));
        assert_eq!(equal_partition_count(6, 2), Some(15));
        assert_eq!(equal_partition_count(5, 1), Some(1));
        assert_eq!(equal_partition_count(6, 4), Some(0));
    }

    #[test]
    fn enumeration_matches_count_and_is_canonical() {
        for (total, k) in [(8, 4), (12, 4), (9, 3), (6, 2), (4, 1), (12, 6)] {
            let mut seen = std::collections::BTreeSet::new();
            let _ = for_each_equal_partition(total, k, |blocks| {
                let mut canon: Vec<Vec<Vertex>> = blocks.to_vec();
                canon.iter_mut().for_each(|b| b.sort());
                canon.sort();
                assert!(seen.insert(canon), "partition visited twice");
                assert!(BlockPartition::new(blocks.to_vec()).is_ok());
                ControlFlow::Continue(())
            });
            assert_eq!(seen.len() as u128, equal_partition_count(total, k).unwrap());
        }
    }

    #[test]
    fn k22_with_three_colors_is_refuted_by_the_split_layout() {
        let g = lower_bound_graph(2, 6).unwrap();
        let p = BlockPartition::new(vec![vec![0, 1, 4], vec![2, 3, 5]]).unwrap();
        let budget = OracleBudget::default();
        assert_eq!(color_partition_exact(&g, &p, &budget).unwrap(), PartitionAnswer::Unsatisfiable);
        let p4 = BlockPartition::new(vec![vec![0, 1, 4, 5], vec![2, 3, 6, 7]]).unwrap();
        let PartitionAnswer::Satisfiable(c) = color_partition_exact(&g, &p4, &budget).unwrap() else {
            panic!("expected a witness");
        };
        assert!(verify_strong_coloring(&g, &p4, &c).unwrap().is_valid());
    }

    #[test]
    fn edgeless_is_always_satisfiable() {
        let g = Graph::empty(6);
        let p = BlockPartition::new(vec![vec![5, 0], vec![3, 1], vec![2, 4]]).unwrap();
        assert!(color_partition_exact(&g, &p, &OracleBudget::default()).unwrap().is_satisfiable());
    }

    #[test]
    fn universal_answers() {
        let budget = OracleBudget::default();
        let g0 = lower_bound_graph(2, 6).unwrap();
        let UniversalAnswer::Refuted(p) = strongly_colorable_all_partitions(&g0, 3, &budget).unwrap()
        else {
            panic!("expected a refutation");
        };
        let sides_split = p.blocks().iter().any(|b| b.contains(&0) && b.contains(&1))
            && p.blocks().iter().any(|b| b.contains(&2) && b.contains(&3));
        assert!(sides_split, "witness {p:?}");
        assert!(strongly_colorable_all_partitions(&g0, 4, &budget).unwrap().is_colorable());
        assert!(strongly_colorable_all_partitions(&cycle_graph(6), 3, &budget).unwrap().is_colorable());
    }

    #[test]
    fn exact_values() {
        let budget = OracleBudget::default();
        assert_eq!(exact_strong_chromatic_number(&cycle_graph(6), &budget).unwrap(), 3);
        assert_eq!(exact_strong_chromatic_number(&lower_bound_graph(2, 6).unwrap(), &budget).unwrap(), 4);
        assert_eq!(exact_strong_chromatic_number(&lower_bound_graph(1, 2).unwrap(), &budget).unwrap(), 2);
        assert_eq!(exact_strong_chromatic_number(&Graph::empty(0), &budget).unwrap(), 1);
    }

    #[test]
    fn single_edge_r1_fails() {
        let g = lower_bound_graph(1, 2).unwrap();
        let ans = strongly_colorable_all_partitions(&g, 1, &OracleBudget::default()).unwrap();
        assert!(!ans.is_colorable());
    }

    #[test]
    fn budget_is_enforced() {
        let g = cycle_graph(13);
        assert!(matches!(
            exact_strong_chromatic_number(&g, &OracleBudget::default()),
            Err(OracleError::ResourceExceeded(_))
        ));
        let tight = OracleBudget { node_limit: 1, ..OracleBudget::default() };
        let p = BlockPartition::consecutive(6, 3).unwrap();
        assert!(matches!(
            color_partition_exact(&cycle_graph(6), &p, &tight),
            Err(OracleError::ResourceExceeded(_))
        ));
        let few = OracleBudget { max_partitions: 10, ..OracleBudget::default() };
        assert!(strongly_colorable_all_partitions(&Graph::empty(8), 4, &few).is_err());
    }
}
