//! Pivot-shape handlers: triangle, two-edge path, and single edge.

use serde_json::json;

use super::exchanges::{enlarge_quadruple, resolve_mixed_triple, uncolor_triple};
use super::partial::PartialStrongColoring;
use super::swap::{compute_swap_sets, q_maximizer, Pivots, Relabel, SwapSets};
use super::{Instance, StepOutcome};
use crate::error::SolveError;
use crate::graph::Vertex;

fn swap_sets(
    inst: &Instance<'_>,
    chi: &PartialStrongColoring,
    pivots: Pivots,
    stage: &'static str,
) -> Result<SwapSets, SolveError> {
    compute_swap_sets(inst.g, inst.p, chi, pivots)
        .map_err(|msg| inst.contradiction(stage, msg, chi, pivots, None))
}

fn require_edges(
    inst: &Instance<'_>,
    chi: &PartialStrongColoring,
    pivots: Pivots,
    expected: usize,
    stage: &'static str,
) -> Result<(), SolveError> {
    let e = pivots.edge_count(inst.g);
    if e != expected {
        return Err(inst.contradiction(
            stage,
            format!("pivots induce {e} edges, expected {expected}"),
            chi,
            pivots,
            None,
        ));
    }
    Ok(())
}

/// Pivots form a triangle: always enlarges via the quadruple rule.
pub fn case1_enlarge(
    inst: &Instance<'_>,
    chi: &mut PartialStrongColoring,
    pivots: Pivots,
) -> Result<(), SolveError> {
    const STAGE: &str = "case1_enlarge";
    require_edges(inst, chi, pivots, 3, STAGE)?;
    let g = inst.g;
    let sets = swap_sets(inst, chi, pivots, STAGE)?;
    let m = q_maximizer(g, inst.p, &sets);
    let third = 3 - m.from - m.to;
    let x_1 = m.vertex;
    let c_1 = chi.color(x_1);

    let x_2 = sets
        .set(m.to)
        .iter()
        .copied()
        .find(|&u| !g.adjacent(x_1, u) && (c_1.is_none() || chi.color(u) != c_1));
    let Some(x_2) = x_2 else {
        return Err(inst.contradiction(
            STAGE,
            format!("no x_2 in X_{} outside N({x_1}) with a different color", m.to),
            chi,
            pivots,
            Some(&sets),
        ));
    };
    let common: Vec<Vertex> = sets
        .set(third)
        .iter()
        .copied()
        .filter(|&u| !g.adjacent(x_1, u) && !g.adjacent(x_2, u))
        .take(2)
        .collect();
    if common.len() < 2 {
        return Err(inst.contradiction(
            STAGE,
            format!("fewer than two vertices of X_{third} avoid N({x_1}) and N({x_2}) (q = {})", m.q),
            chi,
            pivots,
            Some(&sets),
        ));
    }
    enlarge_quadruple(
        inst,
        chi,
        pivots,
        &sets,
        Relabel([third, m.from, m.to]),
        common[0],
        common[1],
        x_1,
        x_2,
    )
}

/// Pivots induce a path on two edges: builds an independent transversal
/// from the q-extremal vertex and resolves it.
pub fn case2_step(
    inst: &Instance<'_>,
    chi: &mut PartialStrongColoring,
    pivots: Pivots,
) -> Result<StepOutcome, SolveError> {
    const STAGE: &str = "case2_step";
    require_edges(inst, chi, pivots, 2, STAGE)?;
    let g = inst.g;
    let sets = swap_sets(inst, chi, pivots, STAGE)?;
    let m = q_maximizer(g, inst.p, &sets);
    let third = 3 - m.from - m.to;
    let x_i = m.vertex;
    let x_j = sets.set(m.to).iter().copied().find(|&u| !g.adjacent(x_i, u));
    let x_k = x_j.and_then(|x_j| {
        sets.set(third)
            .iter()
            .copied()
            .find(|&u| !g.adjacent(x_i, u) && !g.adjacent(x_j, u))
    });
    let (Some(x_j), Some(x_k)) = (x_j, x_k) else {
        return Err(inst.contradiction(
            STAGE,
            format!("no independent transversal through {x_i} (q = {})", m.q),
            chi,
            pivots,
            Some(&sets),
        ));
    };
    let triple = Relabel([m.from, m.to, third]).place([x_i, x_j, x_k]);
    resolve_mixed_triple(inst, chi, pivots, &sets, triple)
}

/// Transversal path found by the single-edge search, in logical order
/// `[w_0, w_1, w_2]` with `middle` the logical index of the inner vertex.
#[derive(Clone, Copy, Debug)]
struct TransversalPath {
    w: [Vertex; 3],
    middle: usize,
}

fn find_transversal_path(
    inst: &Instance<'_>,
    chi: &PartialStrongColoring,
    sets: &SwapSets,
    roles: Relabel,
) -> Option<TransversalPath> {
    let g = inst.g;
    let in_logical = |u: Vertex, logical: usize| {
        sets.contains(u) && inst.p.block_of(u) == roles.block(logical)
    };
    // Middles in logical X_0, X_1 accept any path; middles in X_2 need a
    // multicolored vertex set.
    for middle in [0, 1, 2] {
        let ends: Vec<usize> = (0..3).filter(|&i| i != middle).collect();
        for &mid in sets.set(roles.block(middle)) {
            let left: Vec<Vertex> = g
                .neighbors(mid)
                .iter()
                .copied()
                .filter(|&u| in_logical(u, ends[0]))
                .collect();
            for &a in &left {
                for &b in g.neighbors(mid) {
                    if !in_logical(b, ends[1]) {
                        continue;
                    }
                    let mut w = [0; 3];
                    w[middle] = mid;
                    w[ends[0]] = a;
                    w[ends[1]] = b;
                    if middle < 2 || chi.partially_multicolored(&w) {
                        return Some(TransversalPath { w, middle });
                    }
                }
            }
        }
    }
    None
}

fn find_independent_transversal(
    inst: &Instance<'_>,
    sets: &SwapSets,
) -> Option<[Vertex; 3]> {
    let g = inst.g;
    let mut blocked = vec![false; inst.p.vertex_count()];
    for &x0 in sets.set(0) {
        for &w in g.neighbors(x0) {
            blocked[w] = true;
        }
        for &x1 in sets.set(1) {
            if blocked[x1] {
                continue;
            }
            let hit = sets
                .set(2)
                .iter()
                .copied()
                .find(|&x2| !blocked[x2] && !g.adjacent(x1, x2));
            if let Some(x2) = hit {
                return Some([x0, x1, x2]);
            }
        }
        for &w in g.neighbors(x0) {
            blocked[w] = false;
        }
    }
    None
}

/// Pivots induce exactly one edge: transversal-path moves first, then an
/// independent transversal, otherwise the residual configuration is
/// reported as a contradiction with a full state dump.
pub fn case3_step(
    inst: &Instance<'_>,
    chi: &mut PartialStrongColoring,
    pivots: Pivots,
) -> Result<StepOutcome, SolveError> {
    const STAGE: &str = "case3_step";
    require_edges(inst, chi, pivots, 1, STAGE)?;
    let g = inst.g;
    let roles = Relabel::ALL
        .into_iter()
        .find(|r| {
            let v = r.pick(pivots.0);
            g.adjacent(v[0], v[1]) && v[0] < v[1]
        })
        .expect("one pivot edge");
    let v = roles.pick(pivots.0);
    let sets = swap_sets(inst, chi, pivots, STAGE)?;

    if let Some(path) = find_transversal_path(inst, chi, &sets, roles) {
        let w = path.w;
        let new_pivots = Pivots(roles.place(w));
        if chi.partially_multicolored(&w) {
            uncolor_triple(inst, chi, pivots, &sets, new_pivots.0)?;
            return Ok(StepOutcome::Repivoted(new_pivots));
        }
        // Repeated color on the two ends; the middle sits in logical X_0 or X_1.
        let mid = path.middle;
        let other = 1 - mid;
        let a = chi.color(w[other]).expect("ends share a color");
        let class_a = roles.pick(chi.class(a).expect("color in use"));
        let mut new_a = v;
        new_a[mid] = class_a[mid];
        let mut modified = vec![(a, roles.place(new_a))];
        if let Some(b) = chi.color(w[mid]) {
            let mut class_b = roles.pick(chi.class(b).expect("color in use"));
            class_b[mid] = v[mid];
            modified.push((b, roles.place(class_b)));
        }
        inst.apply(chi, pivots, &modified, &[], STAGE)?;
        return Ok(StepOutcome::Repivoted(new_pivots));
    }

    if let Some(x) = find_independent_transversal(inst, &sets) {
        return resolve_mixed_triple(inst, chi, pivots, &sets, x);
    }

    let extra = residual_dump(inst, chi, &sets, roles, v);
    Err(inst.contradiction_with(
        STAGE,
        "residual single-edge configuration: no qualifying transversal path and no independent transversal".into(),
        chi,
        pivots,
        Some(&sets),
        extra,
    ))
}

/// Quantities of the residual configuration: the component `F` of the
/// bipartite graph between logical `X_0` and `X_1` containing the pivot
/// edge, its sides `B_i`, the remainders `A_i`, the per-block uncolored
/// count `t`, and `ν` for a repeated-color path through `X_2`.
fn residual_dump(
    inst: &Instance<'_>,
    chi: &PartialStrongColoring,
    sets: &SwapSets,
    roles: Relabel,
    v: [Vertex; 3],
) -> serde_json::Value {
    let g = inst.g;
    let x0 = sets.set(roles.block(0));
    let x1 = sets.set(roles.block(1));
    let in_side = |u: Vertex, side: &[Vertex]| side.binary_search(&u).is_ok();
    let mut seen = vec![false; inst.p.vertex_count()];
    let mut stack = vec![v[0]];
    let mut component = Vec::new();
    while let Some(u) = stack.pop() {
        if std::mem::replace(&mut seen[u], true) {
            continue;
        }
        component.push(u);
        let side = if in_side(u, x0) { x1 } else { x0 };
        stack.extend(g.neighbors(u).iter().copied().filter(|&w| in_side(w, side) && !seen[w]));
    }
    component.sort_unstable();
    let b0: Vec<Vertex> = component.iter().copied().filter(|&u| in_side(u, x0)).collect();
    let b1: Vec<Vertex> = component.iter().copied().filter(|&u| in_side(u, x1)).collect();
    let a0: Vec<Vertex> = x0.iter().copied().filter(|u| !b0.contains(u)).collect();
    let a1: Vec<Vertex> = x1.iter().copied().filter(|u| !b1.contains(u)).collect();
    let uncolored = inst.p.block(0).iter().filter(|&&u| chi.color(u).is_none()).count();
    let shared = a0
        .iter()
        .find_map(|&u| chi.color(u).filter(|&c| a1.iter().any(|&w| chi.color(w) == Some(c))));
    let nu = shared.map(|a| {
        g.neighbors(v[2])
            .iter()
            .filter(|&&w| chi.color(w).is_some_and(|c| c != a))
            .count()
    });
    json!({
        "roles": roles.0,
        "F": component,
        "B": [b0, b1],
        "A": [a0, a1],
        "sizes": { "A": [a0.len(), a1.len()], "B": [b0.len(), b1.len()] },
        "t": uncolored,
        "shared_color": shared,
        "nu": nu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BlockPartition, Graph};

    fn blocks() -> BlockPartition {
        BlockPartition::consecutive(12, 4).unwrap()
    }

    #[test]
    fn triangle_pivots_on_empty_coloring_enlarge() {
        let g = Graph::from_edges(12, [(0, 4), (0, 8), (4, 8)]).unwrap();
        let p = blocks();
        let inst = Instance::new(&g, &p);
        let mut chi = PartialStrongColoring::new(12, 4);
        case1_enlarge(&inst, &mut chi, Pivots([0, 4, 8])).unwrap();
        assert_eq!(chi.class_count(), 1);
        chi.check_invariants(&g, &p).unwrap();
    }

    #[test]
    fn triangle_q_attained_between_later_blocks() {
        // Vertex 5 in block 1 has two neighbors in X_2; nothing else beats it.
        let g = Graph::from_edges(12, [(0, 4), (0, 8), (4, 8), (5, 9), (5, 10)]).unwrap();
        let p = blocks();
        let inst = Instance::new(&g, &p);
        let mut chi = PartialStrongColoring::new(12, 4);
        let sets = compute_swap_sets(&g, &p, &chi, Pivots([0, 4, 8])).unwrap();
        let m = q_maximizer(&g, &p, &sets);
        assert_eq!((m.q, m.vertex, m.from, m.to), (2, 5, 1, 2));
        case1_enlarge(&inst, &mut chi, Pivots([0, 4, 8])).unwrap();
        assert_eq!(chi.class_count(), 1);
        let class = chi.class(0).unwrap();
        assert!(g.is_independent(&class));
        assert!(class.contains(&5));
    }

    #[test]
    fn path_pivots_on_empty_coloring_enlarge() {
        let g = Graph::from_edges(12, [(0, 4), (0, 8)]).unwrap();
        let p = blocks();
        let inst = Instance::new(&g, &p);
        let mut chi = PartialStrongColoring::new(12, 4);
        let out = case2_step(&inst, &mut chi, Pivots([0, 4, 8])).unwrap();
        assert_eq!(out, StepOutcome::Enlarged);
        assert_eq!(chi.class_count(), 1);
    }

    #[test]
    fn single_edge_multicolored_path_repivots() {
        // pivots 0 ~ 4, 8 isolated; uncolored path 1 - 5 - 9 spans all swap sets.
        let g = Graph::from_edges(12, [(0, 4), (1, 5), (5, 9)]).unwrap();
        let p = blocks();
        let inst = Instance::new(&g, &p);
        let mut chi = PartialStrongColoring::new(12, 4);
        let out = case3_step(&inst, &mut chi, Pivots([0, 4, 8])).unwrap();
        let StepOutcome::Repivoted(new) = out else {
            panic!("expected repivot, got {out:?}");
        };
        assert_eq!(new, Pivots([1, 5, 9]));
        assert_eq!(new.edge_count(&g), 2);
    }

    #[test]
    fn single_edge_repeated_color_path_with_uncolored_middle() {
        // pivots 3 ~ 7, 11. Class a = (0, 4, 8). Path 4 - 1 - 8 with middle 1
        // uncolored in X_1: class a becomes (0, 7, 11), pivots (1, 4, 8).
        let g = Graph::from_edges(12, [(3, 7), (1, 4), (1, 8)]).unwrap();
        let p = blocks();
        let inst = Instance::new(&g, &p);
        let mut chi = PartialStrongColoring::new(12, 4);
        chi.rewrite(&g, &p, &[], &[[0, 4, 8]]).unwrap();
        let out = case3_step(&inst, &mut chi, Pivots([3, 7, 11])).unwrap();
        assert_eq!(out, StepOutcome::Repivoted(Pivots([1, 4, 8])));
        assert_eq!(chi.class(0), Some([0, 7, 11]));
        assert_eq!(chi.class_count(), 1);
    }

    #[test]
    fn single_edge_without_paths_finds_independent_transversal() {
        // Only the pivot edge and edges inside X_0 x X_1: no transversal path.
        let g = Graph::from_edges(12, [(0, 4), (1, 5), (2, 6)]).unwrap();
        let p = blocks();
        let inst = Instance::new(&g, &p);
        let mut chi = PartialStrongColoring::new(12, 4);
        let sets = compute_swap_sets(&g, &p, &chi, Pivots([0, 4, 8])).unwrap();
        assert!(find_transversal_path(&inst, &chi, &sets, Relabel::IDENTITY).is_none());
        let brute = sets.set(0).iter().any(|&a| {
            sets.set(1).iter().any(|&b| {
                sets.set(2).iter().any(|&c| g.is_independent(&[a, b, c]))
            })
        });
        assert!(brute);
        let out = case3_step(&inst, &mut chi, Pivots([0, 4, 8])).unwrap();
        assert_eq!(out, StepOutcome::Enlarged);
        assert_eq!(chi.class_count(), 1);
    }

}
