//! Class-replacement rules that uncolor a transversal or enlarge the
//! partial coloring around fixed pivots.

use super::partial::PartialStrongColoring;
use super::swap::{Pivots, Relabel, SwapSets};
use super::{Instance, StepOutcome};
use crate::error::SolveError;
use crate::graph::{Color, Vertex};

fn check_members(
    inst: &Instance<'_>,
    sets: &SwapSets,
    x: [Vertex; 3],
    stage: &'static str,
    chi: &PartialStrongColoring,
    pivots: Pivots,
) -> Result<(), SolveError> {
    for (i, &v) in x.iter().enumerate() {
        if inst.p.block_of(v) != i || !sets.contains(v) {
            return Err(inst.contradiction(
                stage,
                format!("vertex {v} is not in X_{i}"),
                chi,
                pivots,
                Some(sets),
            ));
        }
    }
    Ok(())
}

/// Swaps each colored `x_i` (color `c`) out of its class in favor of `v_i`,
/// leaving `x_0, x_1, x_2` uncolored with the class count unchanged.
pub fn uncolor_triple(
    inst: &Instance<'_>,
    chi: &mut PartialStrongColoring,
    pivots: Pivots,
    sets: &SwapSets,
    x: [Vertex; 3],
) -> Result<(), SolveError> {
    check_members(inst, sets, x, "uncolor_triple", chi, pivots)?;
    if !chi.partially_multicolored(&x) {
        return Err(inst.contradiction(
            "uncolor_triple",
            format!("{x:?} repeats a color"),
            chi,
            pivots,
            Some(sets),
        ));
    }
    let modified: Vec<(Color, [Vertex; 3])> = (0..3)
        .filter_map(|i| {
            let c = chi.color(x[i])?;
            let mut class = chi.class(c)?;
            class[i] = pivots.get(i);
            Some((c, class))
        })
        .collect();
    inst.apply(chi, pivots, &modified, &[], "uncolor_triple")?;
    Ok(())
}

/// An independent, partially multicolored transversal of the swap sets
/// becomes a new class.
pub fn enlarge_independent_multicolored(
    inst: &Instance<'_>,
    chi: &mut PartialStrongColoring,
    pivots: Pivots,
    sets: &SwapSets,
    x: [Vertex; 3],
) -> Result<(), SolveError> {
    if !inst.g.is_independent(&x) {
        return Err(inst.contradiction(
            "enlarge_independent_multicolored",
            format!("{x:?} is not independent"),
            chi,
            pivots,
            Some(sets),
        ));
    }
    uncolor_triple(inst, chi, pivots, sets, x)?;
    inst.apply(chi, pivots, &[], &[x], "enlarge_independent_multicolored")?;
    Ok(())
}

/// Two candidates `x_i ≠ x'_i` in one swap set that both complete the
/// multicolored pair `{x_j, x_k}` to an independent triple. `roles` puts
/// the block of `x_i` at logical 0, `x_j` at 1, `x_k` at 2.
#[allow(clippy::too_many_arguments)]
pub fn enlarge_quadruple(
    inst: &Instance<'_>,
    chi: &mut PartialStrongColoring,
    pivots: Pivots,
    sets: &SwapSets,
    roles: Relabel,
    x_i: Vertex,
    x_i_alt: Vertex,
    x_j: Vertex,
    x_k: Vertex,
) -> Result<(), SolveError> {
    const STAGE: &str = "enlarge_quadruple";
    let first = roles.place([x_i, x_j, x_k]);
    let second = roles.place([x_i_alt, x_j, x_k]);
    check_members(inst, sets, first, STAGE, chi, pivots)?;
    check_members(inst, sets, second, STAGE, chi, pivots)?;
    let fail = |chi: &PartialStrongColoring, msg: String| {
        inst.contradiction(STAGE, msg, chi, pivots, Some(sets))
    };
    if x_i == x_i_alt {
        return Err(fail(chi, format!("x_i and x'_i coincide ({x_i})")));
    }
    if !chi.partially_multicolored(&[x_j, x_k]) {
        return Err(fail(chi, format!("{{{x_j}, {x_k}}} repeats a color")));
    }
    if !inst.g.is_independent(&first) || !inst.g.is_independent(&second) {
        return Err(fail(chi, format!("{first:?} or {second:?} is not independent")));
    }

    if chi.partially_multicolored(&first) {
        return enlarge_independent_multicolored(inst, chi, pivots, sets, first);
    }
    if chi.partially_multicolored(&second) {
        return enlarge_independent_multicolored(inst, chi, pivots, sets, second);
    }

    // Both triples repeat a color, so x_i and x'_i carry the colors of x_k
    // and x_j in some order: call them a_i (color a of x_k) and b_i.
    let (Some(a), Some(b)) = (chi.color(x_k), chi.color(x_j)) else {
        return Err(fail(chi, "uncolored x_j or x_k with repeated colors".into()));
    };
    let (a_i, b_i) = if chi.color(x_i) == Some(a) {
        (x_i, x_i_alt)
    } else {
        (x_i_alt, x_i)
    };
    if chi.color(a_i) != Some(a) || chi.color(b_i) != Some(b) {
        return Err(fail(chi, "candidates do not carry the colors of x_k and x_j".into()));
    }
    let v = roles.pick(pivots.0);
    let class_a = roles.pick(chi.class(a).expect("color in use"));
    let class_b = roles.pick(chi.class(b).expect("color in use"));
    let modified = [
        (a, roles.place([class_a[0], class_a[1], v[2]])),
        (b, roles.place([class_b[0], v[1], class_b[2]])),
    ];
    let added = [roles.place([v[0], class_b[1], class_a[2]])];
    inst.apply(chi, pivots, &modified, &added, STAGE)?;
    Ok(())
}

/// Color pattern of a triple, read in logical positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pattern {
    Multicolored,
    AllSame,
    /// Exactly the two listed logical positions share a color.
    Pair(usize, usize),
}

fn pattern(colors: [Option<Color>; 3]) -> Pattern {
    let same = |i: usize, j: usize| colors[i].is_some() && colors[i] == colors[j];
    match (same(0, 1), same(0, 2), same(1, 2)) {
        (true, true, _) => Pattern::AllSame,
        (true, false, _) => Pattern::Pair(0, 1),
        (false, true, _) => Pattern::Pair(0, 2),
        (false, false, true) => Pattern::Pair(1, 2),
        _ => Pattern::Multicolored,
    }
}

/// Independent transversal `x` of the swap sets while the pivots induce
/// one or two edges: enlarges the coloring, or uncolors three new pivots
/// that form a triangle.
pub fn resolve_mixed_triple(
    inst: &Instance<'_>,
    chi: &mut PartialStrongColoring,
    pivots: Pivots,
    sets: &SwapSets,
    x: [Vertex; 3],
) -> Result<StepOutcome, SolveError> {
    const STAGE: &str = "resolve_mixed_triple";
    check_members(inst, sets, x, STAGE, chi, pivots)?;
    let g = inst.g;
    let edges = pivots.edge_count(g);
    if !g.is_independent(&x) || !(1..=2).contains(&edges) {
        return Err(inst.contradiction(
            STAGE,
            format!("triple {x:?} dependent or pivots induce {edges} edges"),
            chi,
            pivots,
            Some(sets),
        ));
    }
    let colors = [chi.color(x[0]), chi.color(x[1]), chi.color(x[2])];
    if pattern(colors) == Pattern::Multicolored {
        enlarge_independent_multicolored(inst, chi, pivots, sets, x)?;
        return Ok(StepOutcome::Enlarged);
    }

    // Relabel so that v_0 ~ v_1 and v_1 ≁ v_2, choosing among the valid
    // relabelings one where the repeated pair is not {0, 2}.
    let admissible = |r: &Relabel| {
        let v = r.pick(pivots.0);
        g.adjacent(v[0], v[1]) && !g.adjacent(v[1], v[2])
    };
    let roles = Relabel::ALL
        .into_iter()
        .filter(admissible)
        .find(|r| !matches!(pattern(r.pick(colors)), Pattern::Pair(0, 2)))
        .ok_or_else(|| {
            inst.contradiction(STAGE, "no admissible relabeling".into(), chi, pivots, Some(sets))
        })?;
    let v = roles.pick(pivots.0);
    let xs = roles.pick(x);
    let cs = roles.pick(colors);

    match pattern(cs) {
        Pattern::AllSame => {
            let a = cs[0].expect("colored");
            let modified = [(a, roles.place([xs[0], v[1], v[2]]))];
            let added = [roles.place([v[0], xs[1], xs[2]])];
            inst.apply(chi, pivots, &modified, &added, STAGE)?;
            Ok(StepOutcome::Enlarged)
        }
        Pattern::Pair(1, 2) => {
            let a = cs[1].expect("colored");
            let class_a = roles.pick(chi.class(a).expect("color in use"));
            let mut modified = vec![(a, roles.place([class_a[0], v[1], v[2]]))];
            if let Some(b) = cs[0] {
                let class_b = roles.pick(chi.class(b).expect("color in use"));
                modified.push((b, roles.place([v[0], class_b[1], class_b[2]])));
            }
            inst.apply(chi, pivots, &modified, &[x], STAGE)?;
            Ok(StepOutcome::Enlarged)
        }
        Pattern::Pair(0, 1) => {
            let a = cs[0].expect("colored");
            let class_a = roles.pick(chi.class(a).expect("color in use"));
            // x_2 gives way to v_2 in its own class, if it has one.
            let swap_x2 = cs[2].map(|c| {
                let mut class_c = roles.pick(chi.class(c).expect("color in use"));
                class_c[2] = v[2];
                (c, roles.place(class_c))
            });
            let to_v0 = g.adjacent(xs[2], v[0]);
            let to_v1 = g.adjacent(xs[2], v[1]);
            if to_v0 && to_v1 {
                let modified: Vec<_> = swap_x2.into_iter().collect();
                inst.apply(chi, pivots, &modified, &[], STAGE)?;
                Ok(StepOutcome::Repivoted(Pivots(roles.place([v[0], v[1], xs[2]]))))
            } else if !to_v0 {
                let mut modified: Vec<_> = swap_x2.into_iter().collect();
                modified.push((a, roles.place([xs[0], v[1], class_a[2]])));
                let added = [roles.place([v[0], xs[1], xs[2]])];
                inst.apply(chi, pivots, &modified, &added, STAGE)?;
                Ok(StepOutcome::Enlarged)
            } else {
                let mut modified = vec![(a, roles.place([v[0], class_a[1], class_a[2]]))];
                modified.extend(swap_x2);
                let added = [roles.place([xs[0], v[1], xs[2]])];
                inst.apply(chi, pivots, &modified, &added, STAGE)?;
                Ok(StepOutcome::Enlarged)
            }
        }
        other => Err(inst.contradiction(
            STAGE,
            format!("unexpected color pattern {other:?} after relabeling"),
            chi,
            pivots,
            Some(sets),
        )),
    }
}
