//! Planar rooted trees labelled by arcs, and their geometric dual.

use crate::diagrams::{Arc, BrauerDiagram};

/// Node `0` is the root; node `i > 0` is the arc with right-standard label
/// `i`. Children are stored in chain order, first = rightmost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarRootedTree {
    children: Vec<Vec<usize>>,
}

impl PlanarRootedTree {
    pub fn from_children(children: Vec<Vec<usize>>) -> Self {
        Self { children }
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    /// Non-root nodes reachable from the root.
    pub fn node_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            count += self.children[v].len();
            stack.extend(&self.children[v]);
        }
        count
    }

    /// Non-root nodes in order of first meeting when walking around the tree
    /// counterclockwise from the root.
    pub fn first_meeting_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack: Vec<usize> = self.children[0].iter().rev().copied().collect();
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// Bracket word of the dual diagram. Children are emitted last-to-first
    /// so that the first chain child ends up rightmost.
    pub fn bracket_word(&self) -> String {
        self.dual_positions().0
    }

    fn dual_positions(&self) -> (String, Vec<Arc>) {
        fn emit(t: &PlanarRootedTree, v: usize, word: &mut String, arcs: &mut [Arc]) {
            for &c in t.children[v].iter().rev() {
                let open = word.len();
                word.push('(');
                emit(t, c, word, arcs);
                arcs[c] = Arc { left: open, right: word.len() };
                word.push(')');
            }
        }
        let mut word = String::new();
        let mut arcs = vec![Arc { left: 0, right: 0 }; self.children.len()];
        emit(self, 0, &mut word, &mut arcs);
        (word, arcs)
    }

    /// The TL diagram whose arcs cross the edges of the tree.
    pub fn geometric_dual(&self) -> BrauerDiagram {
        self.geometric_dual_with_arcs().0
    }

    /// Also returns, for each node, the arc crossing the edge above it.
    pub fn geometric_dual_with_arcs(&self) -> (BrauerDiagram, Vec<Arc>) {
        let (word, arcs) = self.dual_positions();
        let n = word.len() / 2;
        let d = BrauerDiagram::from_arcs(n, &arcs[1..]).expect("bracket word is balanced");
        (d, arcs)
    }
}
