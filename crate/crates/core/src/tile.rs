//! The tile bijection between overhang paths and Brauer diagrams.
//!
//! `phi` sends a diagram `D` to the Dyck path of its TL projection `Π(D)`
//! with a left-overhanging stack of `X(j)` tiles on the up step labelled `j`,
//! where the `X(j)` are read off the δ-sequence carrying `D` to `Π(D)`.
//! `psi` undoes this: it rebuilds `Π(D)` from the root of the path and then
//! replays the δ-moves backwards, largest label first.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{right_agreement, secondary_labels, tl_projection, BrauerDiagram};
use crate::paths::{root_dyck, stack_lengths, with_stacks, OverhangPath, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TileError {
    #[error("diagram {0} has crossings")]
    NotTl(String),
    #[error("path {0} has overhang steps")]
    NotDyck(String),
}

/// `Φ^TL`: left ends become `1`, right ends become `2`.
pub fn phi_tl(d: &BrauerDiagram) -> Result<OverhangPath, TileError> {
    if !d.is_tl() {
        return Err(TileError::NotTl(d.to_string()));
    }
    let steps = (0..d.size()).map(|i| if d.is_left_end(i) { Step::Up } else { Step::Down }).collect();
    Ok(OverhangPath::from_steps(steps).expect("bracket word of a TL diagram is a Dyck path"))
}

/// Bracket matching of a Dyck path.
pub fn phi_tl_inverse(t: &OverhangPath) -> Result<BrauerDiagram, TileError> {
    if !t.is_dyck() {
        return Err(TileError::NotDyck(t.to_string()));
    }
    let mut partner = vec![0; t.steps().len()];
    let mut open = Vec::new();
    for (i, s) in t.steps().iter().enumerate() {
        match s {
            Step::Up => open.push(i),
            _ => {
                let j = open.pop().expect("Dyck path is balanced");
                partner[i] = j;
                partner[j] = i;
            }
        }
    }
    Ok(BrauerDiagram::from_partner(partner).expect("bracket matching is an involution"))
}

/// A diagram whose arcs carry stable identities `1..=n` while vertices are
/// permuted by adjacent transpositions.
struct ArcTracker {
    diagram: BrauerDiagram,
    owner: Vec<usize>,
    ends: Vec<[usize; 2]>,
}

impl ArcTracker {
    fn new(diagram: BrauerDiagram, id_of_left_end: impl Fn(usize) -> usize) -> Self {
        let n = diagram.degree();
        let mut owner = vec![0; diagram.size()];
        let mut ends = vec![[0; 2]; n + 1];
        for a in diagram.arcs() {
            let id = id_of_left_end(a.left);
            owner[a.left] = id;
            owner[a.right] = id;
            ends[id] = [a.left, a.right];
        }
        Self { diagram, owner, ends }
    }

    fn left_end(&self, id: usize) -> usize {
        self.ends[id][0].min(self.ends[id][1])
    }

    fn swap(&mut self, pos: usize) {
        let (a, b) = (self.owner[pos], self.owner[pos + 1]);
        for end in self.ends[a].iter_mut() {
            if *end == pos {
                *end = pos + 1;
            } else if a == b && *end == pos + 1 {
                *end = pos;
            }
        }
        if a != b {
            for end in self.ends[b].iter_mut() {
                if *end == pos + 1 {
                    *end = pos;
                }
            }
        }
        self.owner.swap(pos, pos + 1);
        self.diagram.swap_adjacent(pos);
    }
}

/// One iteration of the δ-sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaStep {
    /// The diagram before this move.
    pub before: BrauerDiagram,
    /// Length of the maximal agreeing suffix of `before` and the target.
    pub agreement: usize,
    /// Secondary labels of the arcs lying inside that suffix.
    pub settled: Vec<usize>,
    /// Secondary label of the moved arc.
    pub label: usize,
    pub from: usize,
    pub to: usize,
}

/// The δ-sequence of a diagram and the displacement of every arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTrace {
    pub source: BrauerDiagram,
    pub target: BrauerDiagram,
    /// Secondary labels indexed by right-standard label minus one.
    pub secondary: Vec<usize>,
    /// `x[j-1]` is the displacement of the arc with secondary label `j`.
    pub x: Vec<usize>,
    pub steps: Vec<DeltaStep>,
}

/// Serialized form `{pairs, X, order}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaRecord {
    pub pairs: Vec<[usize; 2]>,
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    pub order: Vec<usize>,
}

impl DeltaTrace {
    pub fn move_order(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.label).collect()
    }

    pub fn total_moves(&self) -> usize {
        self.x.iter().sum()
    }

    /// Diagrams after each move, starting from the source.
    pub fn replay_forward(&self) -> Vec<BrauerDiagram> {
        let sec = &self.secondary;
        let labelling = self.source.labelling();
        let mut tracker =
            ArcTracker::new(self.source.clone(), |left| sec[labelling.right_label_at(left) - 1]);
        let mut out = vec![tracker.diagram.clone()];
        for j in self.move_order() {
            let start = tracker.left_end(j);
            for pos in start..start + self.x[j - 1] {
                tracker.swap(pos);
            }
            out.push(tracker.diagram.clone());
        }
        out
    }

    /// Applies the inverse moves to the target in decreasing label order.
    pub fn replay_backward(&self) -> BrauerDiagram {
        replay_stacks(self.target.clone(), &self.x)
    }

    pub fn record(&self) -> DeltaRecord {
        DeltaRecord {
            pairs: self.source.record().pairs,
            x: self.x.clone(),
            order: self.move_order(),
        }
    }
}

pub fn delta_trace(d: &BrauerDiagram) -> DeltaTrace {
    let n = d.degree();
    let size = d.size();
    let target = tl_projection(d);
    let target_labels = target.labelling();
    let secondary = secondary_labels(d);
    let labelling = d.labelling();
    let mut tracker =
        ArcTracker::new(d.clone(), |left| secondary[labelling.right_label_at(left) - 1]);

    let mut x = vec![0; n];
    let mut steps = Vec::new();
    while tracker.diagram != target {
        let agreement = right_agreement(&tracker.diagram, &target).expect("same degree");
        let start = size - agreement;
        let settled: Vec<usize> = (start..size)
            .filter(|&i| tracker.diagram.is_left_end(i))
            .map(|i| tracker.owner[i])
            .collect();
        let label = settled.len() + 1;
        let from = tracker.left_end(label);
        let to = target_labels.arc_with_left_label(label).left;
        assert!(to > from, "δ-move of arc {label} in {d} is not rightward ({from} -> {to})");
        let before = tracker.diagram.clone();
        for pos in from..to {
            tracker.swap(pos);
        }
        x[label - 1] = to - from;
        steps.push(DeltaStep { before, agreement, settled, label, from, to });
        assert!(steps.len() <= n, "δ-sequence of {d} does not terminate");
    }
    DeltaTrace { source: d.clone(), target, secondary, x, steps }
}

/// Moves the left end of the arc with left-standard label `j` of `tl` left by
/// `x[j-1]` adjacent transpositions, for `j = n` down to `1`.
fn replay_stacks(tl: BrauerDiagram, x: &[usize]) -> BrauerDiagram {
    let labelling = tl.labelling();
    let mut tracker = ArcTracker::new(tl, |left| labelling.left_label_at(left));
    for j in (1..=x.len()).rev() {
        for _ in 0..x[j - 1] {
            let pos = tracker.left_end(j);
            assert!(pos > 0, "overhang stack of arc {j} runs off the left edge");
            tracker.swap(pos - 1);
        }
    }
    tracker.diagram
}

/// `Φ`: diagram to overhang path.
pub fn phi(d: &BrauerDiagram) -> OverhangPath {
    let trace = delta_trace(d);
    let root = phi_tl(&trace.target).expect("projection is TL");
    with_stacks(&root, &trace.x).expect("stacked root is an overhang path")
}

/// `Ψ`: overhang path to diagram.
pub fn psi(p: &OverhangPath) -> BrauerDiagram {
    let root = root_dyck(p);
    let tl = phi_tl_inverse(&root).expect("root is Dyck");
    replay_stacks(tl, &stack_lengths(p))
}

/// Number of transpositions used by `psi`, i.e. crossings of the
/// (possibly non-reduced) pipe dream.
pub fn crossing_count(p: &OverhangPath) -> usize {
    stack_lengths(p).iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::parse_diagram;
    use crate::paths::parse_path;

    fn d(s: &str) -> BrauerDiagram {
        parse_diagram(s).unwrap()
    }
    fn p(s: &str) -> OverhangPath {
        parse_path(s).unwrap()
    }

    #[test]
    fn tl_maps() {
        assert_eq!(phi_tl(&d("1-4,2-3")).unwrap(), p("1122"));
        assert_eq!(phi_tl(&d("1-2,3-4")).unwrap(), p("1212"));
        assert_eq!(phi_tl(&d("1-2")).unwrap(), p("12"));
        assert!(matches!(phi_tl(&d("1-3,2-4")), Err(TileError::NotTl(_))));
        assert_eq!(phi_tl_inverse(&p("1122")).unwrap(), d("1-4,2-3"));
        assert_eq!(phi_tl_inverse(&p("1212")).unwrap(), d("1-2,3-4"));
        assert_eq!(phi_tl_inverse(&p("121122")).unwrap(), d("1-2,3-6,4-5"));
        assert!(matches!(phi_tl_inverse(&p("12'1222")), Err(TileError::NotDyck(_))));
    }

    #[test]
    fn delta_examples() {
        let t = delta_trace(&d("1-3,2-4"));
        assert_eq!(t.x, vec![1, 0]);
        assert_eq!(t.move_order(), vec![1]);
        assert_eq!(t.steps[0].agreement, 2);
        assert_eq!((t.steps[0].from, t.steps[0].to), (0, 1));
        assert_eq!(t.target, d("1-4,2-3"));
        let t = delta_trace(&d("1-2,3-4"));
        assert_eq!(t.x, vec![0, 0]);
        assert!(t.steps.is_empty());
    }

    #[test]
    fn phi_psi_examples() {
        assert_eq!(phi(&d("1-3,2-4")), p("12'1222"));
        assert_eq!(phi(&d("1-4,2-3")), p("1122"));
        assert_eq!(phi(&d("1-2,3-4")), p("1212"));
        assert_eq!(psi(&p("1212")), d("1-2,3-4"));
        assert_eq!(psi(&p("1122")), d("1-4,2-3"));
        assert_eq!(psi(&p("12'1222")), d("1-3,2-4"));
    }

    #[test]
    fn crossings() {
        assert_eq!(crossing_count(&p("12'1222")), 1);
        assert_eq!(crossing_count(&p("111222")), 0);
        // three transpositions, but the diagram has a single crossing
        let nonreduced = p("1212'2'2'122222");
        assert_eq!(stack_lengths(&nonreduced), vec![3, 0, 0]);
        assert_eq!(crossing_count(&nonreduced), 3);
        let img = psi(&nonreduced);
        assert_eq!(img, d("1-5,2-3,4-6"));
        assert_eq!(img.crossing_number(), 1);
    }

    #[test]
    fn record_shape() {
        let r = delta_trace(&d("1-3,2-4")).record();
        assert_eq!(r.pairs, vec![[1, 3], [2, 4]]);
        assert_eq!(r.x, vec![1, 0]);
        assert_eq!(r.order, vec![1]);
    }
}
