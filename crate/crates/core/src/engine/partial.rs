use serde::Serialize;

use crate::graph::{BlockPartition, Color, Graph, StrongColoring, Vertex};

/// Proper partial coloring of a three-block instance in which every used
/// color is a class `[c_0, c_1, c_2]` with `c_i` in block `i`.
#[derive(Clone, Debug, Serialize)]
pub struct PartialStrongColoring {
    color: Vec<Option<Color>>,
    classes: Vec<Option<[Vertex; 3]>>,
    class_count: usize,
    #[serde(skip)]
    edits: usize,
}

impl PartialStrongColoring {
    pub fn new(vertex_count: usize, k: usize) -> Self {
        PartialStrongColoring {
            color: vec![None; vertex_count],
            classes: vec![None; k],
            class_count: 0,
            edits: 0,
        }
    }

    pub fn color(&self, v: Vertex) -> Option<Color> {
        self.color[v]
    }

    pub fn class(&self, c: Color) -> Option<[Vertex; 3]> {
        self.classes.get(c).copied().flatten()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn is_complete(&self) -> bool {
        self.class_count == self.classes.len()
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.color
    }

    pub fn classes(&self) -> impl Iterator<Item = (Color, [Vertex; 3])> + '_ {
        self.classes
            .iter()
            .enumerate()
            .filter_map(|(c, cl)| cl.map(|cl| (c, cl)))
    }

    /// Number of class writes since the counter was last taken.
    pub fn take_edits(&mut self) -> usize {
        std::mem::take(&mut self.edits)
    }

    /// Lowest-id uncolored vertex of a block.
    pub fn first_uncolored(&self, block: &[Vertex]) -> Option<Vertex> {
        block.iter().copied().filter(|&v| self.color[v].is_none()).min()
    }

    /// Any two colored vertices of `set` have distinct colors.
    pub fn partially_multicolored(&self, set: &[Vertex]) -> bool {
        let colors: Vec<Color> = set.iter().filter_map(|&v| self.color[v]).collect();
        colors
            .iter()
            .enumerate()
            .all(|(i, c)| !colors[i + 1..].contains(c))
    }

    /// Replaces the classes named in `modified` with new contents and adds
    /// each triple in `added` under the smallest unused color id. Every
    /// written class must be independent and hit block `i` at position `i`.
    pub fn rewrite(
        &mut self,
        g: &Graph,
        p: &BlockPartition,
        modified: &[(Color, [Vertex; 3])],
        added: &[[Vertex; 3]],
    ) -> Result<Vec<Color>, String> {
        for &(c, _) in modified {
            let old = self
                .class(c)
                .ok_or_else(|| format!("color {c} is not in use"))?;
            for v in old {
                self.color[v] = None;
            }
        }
        for &(c, triple) in modified {
            self.place(g, p, c, triple)?;
        }
        let mut fresh = Vec::with_capacity(added.len());
        for &triple in added {
            let c = self
                .classes
                .iter()
                .position(Option::is_none)
                .ok_or("no unused color left")?;
            self.place(g, p, c, triple)?;
            self.class_count += 1;
            fresh.push(c);
        }
        self.edits += modified.len() + added.len();
        if cfg!(debug_assertions) {
            self.check_invariants(g, p)?;
        }
        Ok(fresh)
    }

    fn place(
        &mut self,
        g: &Graph,
        p: &BlockPartition,
        c: Color,
        triple: [Vertex; 3],
    ) -> Result<(), String> {
        for (i, &v) in triple.iter().enumerate() {
            if p.block_of(v) != i {
                return Err(format!("vertex {v} of class {c} is not in block {i}"));
            }
            if let Some(other) = self.color[v] {
                return Err(format!("vertex {v} already carries color {other}"));
            }
        }
        if !g.is_independent(&triple) {
            return Err(format!("class {c} = {triple:?} is not independent"));
        }
        for v in triple {
            self.color[v] = Some(c);
        }
        self.classes[c] = Some(triple);
        Ok(())
    }

    /// Proper, one vertex per block per class, and equal uncolored counts.
    pub fn check_invariants(&self, g: &Graph, p: &BlockPartition) -> Result<(), String> {
        let mut count = 0;
        for (c, class) in self.classes() {
            count += 1;
            for (i, &v) in class.iter().enumerate() {
                if p.block_of(v) != i {
                    return Err(format!("class {c} has {v} outside block {i}"));
                }
                if self.color[v] != Some(c) {
                    return Err(format!("class {c} lists {v} but its color is {:?}", self.color[v]));
                }
            }
            if !g.is_independent(&class) {
                return Err(format!("class {c} = {class:?} is not independent"));
            }
        }
        if count != self.class_count {
            return Err(format!("class count {} but {count} classes stored", self.class_count));
        }
        let colored = self.color.iter().filter(|c| c.is_some()).count();
        if colored != 3 * count {
            return Err(format!("{colored} colored vertices for {count} classes"));
        }
        let uncolored: Vec<usize> = p
            .blocks()
            .iter()
            .map(|b| b.iter().filter(|&&v| self.color[v].is_none()).count())
            .collect();
        if uncolored.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("unequal uncolored counts per block: {uncolored:?}"));
        }
        Ok(())
    }

    pub fn into_coloring(self) -> Option<StrongColoring> {
        self.color.into_iter().collect::<Option<Vec<_>>>().map(StrongColoring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Graph, BlockPartition) {
        // blocks {0,1}, {2,3}, {4,5}; edge 0-2 only
        let g = Graph::from_edges(6, [(0, 2)]).unwrap();
        let p = BlockPartition::consecutive(6, 2).unwrap();
        (g, p)
    }

    #[test]
    fn rewrite_adds_and_modifies() {
        let (g, p) = setup();
        let mut chi = PartialStrongColoring::new(6, 2);
        assert_eq!(chi.rewrite(&g, &p, &[], &[[0, 3, 4]]).unwrap(), vec![0]);
        assert_eq!(chi.class_count(), 1);
        chi.rewrite(&g, &p, &[(0, [1, 3, 4])], &[]).unwrap();
        assert_eq!(chi.color(0), None);
        assert_eq!(chi.color(1), Some(0));
        assert_eq!(chi.take_edits(), 2);
        chi.check_invariants(&g, &p).unwrap();
    }

    #[test]
    fn rewrite_rejects_bad_classes() {
        let (g, p) = setup();
        let mut chi = PartialStrongColoring::new(6, 2);
        assert!(chi.rewrite(&g, &p, &[], &[[0, 2, 4]]).is_err());
        let mut chi = PartialStrongColoring::new(6, 2);
        assert!(chi.rewrite(&g, &p, &[], &[[2, 0, 4]]).is_err());
        let mut chi = PartialStrongColoring::new(6, 2);
        assert!(chi.rewrite(&g, &p, &[(1, [1, 3, 5])], &[]).is_err());
    }

    #[test]
    fn multicolored_ignores_uncolored() {
        let (g, p) = setup();
        let mut chi = PartialStrongColoring::new(6, 2);
        chi.rewrite(&g, &p, &[], &[[0, 3, 4]]).unwrap();
        assert!(chi.partially_multicolored(&[0, 2, 5]));
        assert!(!chi.partially_multicolored(&[0, 3, 5]));
    }
}
