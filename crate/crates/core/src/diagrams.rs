//! Brauer, partial Brauer and Temperley-Lieb diagrams.
//!
//! Vertices are indexed `0..2n` from left to right in the API; the text
//! format `"1-4,2-3"` is 1-based. Arcs are stored as `(left, right)` with
//! `left < right`. Right-standard and left-standard labellings number the
//! arcs from `1` in decreasing order of their right (resp. left) endpoint and
//! are always computed, never stored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::PlanarRootedTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed pair {0:?}, expected \"a-b\" with 1 <= a < b")]
    BadPair(String),
    #[error("position {0} used twice")]
    Duplicate(usize),
    #[error("position {pos} out of range 1..={max}")]
    OutOfRange { pos: usize, max: usize },
    #[error("pairs cover {covered} of {expected} positions")]
    IncompleteCover { covered: usize, expected: usize },
    #[error("no arc with label {0}")]
    UnknownLabel(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub left: usize,
    pub right: usize,
}

impl Arc {
    pub fn new(a: usize, b: usize) -> Self {
        Arc { left: a.min(b), right: a.max(b) }
    }

    /// Whether `pos` lies strictly between the endpoints.
    pub fn encloses(&self, pos: usize) -> bool {
        self.left < pos && pos < self.right
    }

    pub fn crosses(&self, other: &Arc) -> bool {
        (self.left < other.left && other.left < self.right && self.right < other.right)
            || (other.left < self.left && self.left < other.right && other.right < self.right)
    }
}

/// A perfect matching of `2n` vertices on a line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerDiagram {
    partner: Vec<usize>,
}

impl BrauerDiagram {
    /// Builds a diagram from a partner table; must be a fixed-point-free involution.
    pub fn from_partner(partner: Vec<usize>) -> Result<Self, DiagramError> {
        let size = partner.len();
        for (i, &j) in partner.iter().enumerate() {
            if j >= size {
                return Err(DiagramError::OutOfRange { pos: j + 1, max: size });
            }
            if j == i || partner[j] != i {
                return Err(DiagramError::Duplicate(j + 1));
            }
        }
        Ok(Self { partner })
    }

    pub fn from_arcs(n: usize, arcs: &[Arc]) -> Result<Self, DiagramError> {
        let size = 2 * n;
        let mut partner = vec![usize::MAX; size];
        for a in arcs {
            for pos in [a.left, a.right] {
                if pos >= size {
                    return Err(DiagramError::OutOfRange { pos: pos + 1, max: size });
                }
                if partner[pos] != usize::MAX || a.left == a.right {
                    return Err(DiagramError::Duplicate(pos + 1));
                }
            }
            partner[a.left] = a.right;
            partner[a.right] = a.left;
        }
        let covered = partner.iter().filter(|p| **p != usize::MAX).count();
        if covered != size {
            return Err(DiagramError::IncompleteCover { covered, expected: size });
        }
        Ok(Self { partner })
    }

    pub fn empty() -> Self {
        Self { partner: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn size(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, pos: usize) -> usize {
        self.partner[pos]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn is_left_end(&self, pos: usize) -> bool {
        self.partner[pos] > pos
    }

    /// Arcs sorted by left endpoint.
    pub fn arcs(&self) -> Vec<Arc> {
        (0..self.size())
            .filter(|&i| self.is_left_end(i))
            .map(|i| Arc { left: i, right: self.partner[i] })
            .collect()
    }

    /// Arcs in right-standard order: entry `i-1` has label `i`.
    pub fn right_standard(&self) -> Vec<Arc> {
        let mut arcs = self.arcs();
        arcs.sort_by_key(|a| std::cmp::Reverse(a.right));
        arcs
    }

    /// Arcs in left-standard order: entry `i-1` has label `i`.
    pub fn left_standard(&self) -> Vec<Arc> {
        let mut arcs = self.arcs();
        arcs.reverse();
        arcs
    }

    pub fn labelling(&self) -> ArcLabelling {
        ArcLabelling::new(self)
    }

    pub fn crossing_number(&self) -> usize {
        let arcs = self.arcs();
        let mut c = 0;
        for (i, a) in arcs.iter().enumerate() {
            for b in &arcs[i + 1..] {
                if a.crosses(b) {
                    c += 1;
                }
            }
        }
        c
    }

    /// Bracket word: `(` at left endpoints, `)` at right endpoints.
    pub fn bracket_word(&self) -> String {
        (0..self.size()).map(|i| if self.is_left_end(i) { '(' } else { ')' }).collect()
    }

    pub fn is_tl(&self) -> bool {
        is_tl(self)
    }

    /// Restriction to the last `m` vertices: pairs inside the suffix are
    /// kept, vertices paired outside it become singletons.
    pub fn restrict_suffix(&self, m: usize) -> PartialBrauerDiagram {
        let start = self.size() - m;
        let partner = (start..self.size())
            .map(|i| {
                let j = self.partner[i];
                (j >= start).then(|| j - start)
            })
            .collect();
        PartialBrauerDiagram { partner }
    }

    pub fn record(&self) -> DiagramRecord {
        DiagramRecord {
            n: self.degree(),
            pairs: self.arcs().iter().map(|a| [a.left + 1, a.right + 1]).collect(),
        }
    }

    /// Swaps the vertices at `pos` and `pos + 1`.
    pub(crate) fn swap_adjacent(&mut self, pos: usize) {
        let (a, b) = (self.partner[pos], self.partner[pos + 1]);
        if a == pos + 1 {
            return;
        }
        self.partner[a] = pos + 1;
        self.partner[b] = pos;
        self.partner.swap(pos, pos + 1);
    }
}

impl fmt::Display for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.arcs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}-{}", a.left + 1, a.right + 1)?;
        }
        Ok(())
    }
}

impl FromStr for BrauerDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_diagram(s)
    }
}

/// Structured record `{n, pairs}` with 1-based pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRecord {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
}

impl DiagramRecord {
    pub fn to_diagram(&self) -> Result<BrauerDiagram, DiagramError> {
        let mut arcs = Vec::with_capacity(self.pairs.len());
        for &[a, b] in &self.pairs {
            if a == 0 || b == 0 {
                return Err(DiagramError::BadPair(format!("{a}-{b}")));
            }
            arcs.push(Arc::new(a - 1, b - 1));
        }
        BrauerDiagram::from_arcs(self.n, &arcs)
    }
}

/// Parses `"a-b,c-d,.."` (1-based). Whitespace around tokens is ignored.
pub fn parse_diagram(text: &str) -> Result<BrauerDiagram, DiagramError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(BrauerDiagram::empty());
    }
    let mut arcs = Vec::new();
    let mut max = 0;
    for tok in text.split(',') {
        let tok = tok.trim();
        let (a, b) = tok.split_once('-').ok_or_else(|| DiagramError::BadPair(tok.into()))?;
        let a: usize = a.trim().parse().map_err(|_| DiagramError::BadPair(tok.into()))?;
        let b: usize = b.trim().parse().map_err(|_| DiagramError::BadPair(tok.into()))?;
        if a == 0 || b == 0 || a == b {
            return Err(DiagramError::BadPair(tok.into()));
        }
        max = max.max(a).max(b);
        arcs.push(Arc::new(a - 1, b - 1));
    }
    let size = 2 * arcs.len();
    if max > size {
        let mut seen = vec![false; max];
        for a in &arcs {
            for p in [a.left, a.right] {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(DiagramError::Duplicate(p + 1));
                }
            }
        }
        return Err(DiagramError::OutOfRange { pos: max, max: size });
    }
    BrauerDiagram::from_arcs(arcs.len(), &arcs)
}

/// No two arcs cross.
pub fn is_tl(d: &BrauerDiagram) -> bool {
    let mut stack = Vec::new();
    for i in 0..d.size() {
        if d.is_left_end(i) {
            stack.push(i);
        } else if stack.pop() != Some(d.partner(i)) {
            return false;
        }
    }
    true
}

/// A matching on `size` vertices in which unmatched vertices are singletons.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialBrauerDiagram {
    partner: Vec<Option<usize>>,
}

impl PartialBrauerDiagram {
    pub fn size(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, pos: usize) -> Option<usize> {
        self.partner[pos]
    }

    pub fn pair_count(&self) -> usize {
        self.partner.iter().flatten().count() / 2
    }

    pub fn singleton_count(&self) -> usize {
        self.partner.iter().filter(|p| p.is_none()).count()
    }
}

/// Right-standard and left-standard labels of every arc of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcLabelling {
    by_right: Vec<Arc>,
    by_left: Vec<Arc>,
    right_at: Vec<usize>,
    left_at: Vec<usize>,
}

impl ArcLabelling {
    pub fn new(d: &BrauerDiagram) -> Self {
        let by_right = d.right_standard();
        let by_left = d.left_standard();
        let mut right_at = vec![0; d.size()];
        let mut left_at = vec![0; d.size()];
        for (i, a) in by_right.iter().enumerate() {
            right_at[a.left] = i + 1;
            right_at[a.right] = i + 1;
        }
        for (i, a) in by_left.iter().enumerate() {
            left_at[a.left] = i + 1;
            left_at[a.right] = i + 1;
        }
        Self { by_right, by_left, right_at, left_at }
    }

    pub fn arc_with_right_label(&self, label: usize) -> Arc {
        self.by_right[label - 1]
    }

    pub fn arc_with_left_label(&self, label: usize) -> Arc {
        self.by_left[label - 1]
    }

    /// Right-standard label of the arc through `pos`.
    pub fn right_label_at(&self, pos: usize) -> usize {
        self.right_at[pos]
    }

    pub fn left_label_at(&self, pos: usize) -> usize {
        self.left_at[pos]
    }

    /// `a(i)`: left-standard label of the arc with right-standard label `i`.
    pub fn left_of_right(&self, i: usize) -> usize {
        self.left_at[self.by_right[i - 1].left]
    }
}

/// Arcs of a diagram carrying their right-standard labels from the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledArcs {
    arcs: Vec<(usize, Arc)>,
}

impl LabelledArcs {
    pub fn of(d: &BrauerDiagram) -> Self {
        let arcs = d.right_standard().into_iter().enumerate().map(|(i, a)| (i + 1, a)).collect();
        Self { arcs }
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn labels(&self) -> Vec<usize> {
        self.arcs.iter().map(|(l, _)| *l).collect()
    }

    pub fn arc(&self, label: usize) -> Option<Arc> {
        self.arcs.iter().find(|(l, _)| *l == label).map(|(_, a)| *a)
    }

    /// The right chain: start at the arc with the rightmost right end, then
    /// repeatedly jump to the first right end strictly left of the current
    /// left end.
    pub fn right_chain(&self) -> Vec<usize> {
        let Some(&(first, mut cur)) = self.arcs.iter().max_by_key(|(_, a)| a.right) else {
            return Vec::new();
        };
        let mut chain = vec![first];
        while let Some(&(l, a)) = self
            .arcs
            .iter()
            .filter(|(_, a)| a.right < cur.left)
            .max_by_key(|(_, a)| a.right)
        {
            chain.push(l);
            cur = a;
        }
        chain
    }

    /// Arcs whose right endpoint lies strictly inside arc `label`.
    pub fn arc_subdiagram(&self, label: usize) -> Result<LabelledArcs, DiagramError> {
        let outer = self.arc(label).ok_or(DiagramError::UnknownLabel(label))?;
        let arcs = self.arcs.iter().filter(|(_, a)| outer.encloses(a.right)).copied().collect();
        Ok(LabelledArcs { arcs })
    }
}

pub fn right_chain(d: &BrauerDiagram) -> Vec<usize> {
    LabelledArcs::of(d).right_chain()
}

pub fn arc_subdiagram(d: &BrauerDiagram, label: usize) -> Result<LabelledArcs, DiagramError> {
    LabelledArcs::of(d).arc_subdiagram(label)
}

/// The right chain tree: the root's children are the right chain of `d`, and
/// each arc's children are the right chain of its arc subdiagram taken
/// inside the enclosing subdiagram.
pub fn right_chain_tree(d: &BrauerDiagram) -> PlanarRootedTree {
    fn attach(parent: usize, sub: &LabelledArcs, children: &mut [Vec<usize>]) {
        let chain = sub.right_chain();
        for &label in &chain {
            let inner = sub.arc_subdiagram(label).expect("chain label is present");
            attach(label, &inner, children);
        }
        children[parent] = chain;
    }
    let mut children = vec![Vec::new(); d.degree() + 1];
    attach(0, &LabelledArcs::of(d), &mut children);
    PlanarRootedTree::from_children(children)
}

/// `Π = γ ∘ τ_R`: the TL diagram associated to `d`.
pub fn tl_projection(d: &BrauerDiagram) -> BrauerDiagram {
    right_chain_tree(d).geometric_dual()
}

/// Secondary labels, indexed by right-standard label minus one.
pub fn secondary_labels(d: &BrauerDiagram) -> Vec<usize> {
    let proj = tl_projection(d).labelling();
    (1..=d.degree()).map(|i| proj.left_of_right(i)).collect()
}

/// Length of the longest common suffix restriction.
pub fn right_agreement(a: &BrauerDiagram, b: &BrauerDiagram) -> Result<usize, DiagramError> {
    if a.size() != b.size() {
        return Err(DiagramError::DegreeMismatch(a.degree(), b.degree()));
    }
    let size = a.size();
    let agrees = |m: usize| {
        let start = size - m;
        (start..size).all(|i| {
            let (pa, pb) = (a.partner(i), b.partner(i));
            match (pa >= start, pb >= start) {
                (true, true) => pa == pb,
                (false, false) => true,
                _ => false,
            }
        })
    };
    // agreement on a suffix implies agreement on every shorter suffix
    let mut m = 0;
    while m < size && agrees(m + 1) {
        m += 1;
    }
    Ok(m)
}

/// `[D]`: new outer vertices joined by an arc.
pub fn nest(d: &BrauerDiagram) -> BrauerDiagram {
    let size = d.size() + 2;
    let mut partner = vec![0; size];
    partner[0] = size - 1;
    partner[size - 1] = 0;
    for (i, &j) in d.partners().iter().enumerate() {
        partner[i + 1] = j + 1;
    }
    BrauerDiagram { partner }
}

pub fn concat_diagrams(a: &BrauerDiagram, b: &BrauerDiagram) -> BrauerDiagram {
    let shift = a.size();
    let mut partner = a.partner.clone();
    partner.extend(b.partners().iter().map(|&j| j + shift));
    BrauerDiagram { partner }
}

pub fn is_prime_diagram(d: &BrauerDiagram) -> bool {
    let n = d.degree();
    n > 0
        && (1..n).all(|m| {
            let cut = 2 * m;
            (0..cut).any(|i| d.partner(i) >= cut)
        })
}

/// All perfect matchings on `2n` vertices, sorted.
pub fn enumerate_diagrams(n: usize) -> Vec<BrauerDiagram> {
    fn go(partner: &mut Vec<usize>, out: &mut Vec<BrauerDiagram>) {
        let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(BrauerDiagram { partner: partner.clone() });
            return;
        };
        for j in first + 1..partner.len() {
            if partner[j] == usize::MAX {
                partner[first] = j;
                partner[j] = first;
                go(partner, out);
                partner[first] = usize::MAX;
                partner[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; 2 * n], &mut out);
    out.sort();
    out
}

pub fn enumerate_tl_diagrams(n: usize) -> Vec<BrauerDiagram> {
    enumerate_diagrams(n).into_iter().filter(is_tl).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> BrauerDiagram {
        parse_diagram(s).unwrap()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(d("2-3,1-4").to_string(), "1-4,2-3");
        assert_eq!(d("1-3,2-4").degree(), 2);
        assert_eq!(parse_diagram("1-2,2-3"), Err(DiagramError::Duplicate(2)));
        assert!(matches!(parse_diagram("1-5,2-3"), Err(DiagramError::OutOfRange { .. })));
        assert!(matches!(parse_diagram("1-x"), Err(DiagramError::BadPair(_))));
        assert!(matches!(parse_diagram("1-1"), Err(DiagramError::BadPair(_))));
        assert_eq!(d(""), BrauerDiagram::empty());
    }

    #[test]
    fn tl_detection() {
        assert!(is_tl(&d("1-4,2-3")));
        assert!(!is_tl(&d("1-3,2-4")));
        assert!(is_tl(&d("1-2,3-4")));
    }

    #[test]
    fn chains() {
        assert_eq!(right_chain(&d("1-4,2-3")), vec![1]);
        assert_eq!(right_chain(&d("1-2,3-4")), vec![1, 2]);
        assert_eq!(right_chain(&d("1-2")), vec![1]);
        assert!(right_chain(&BrauerDiagram::empty()).is_empty());
    }

    #[test]
    fn subdiagrams() {
        let sub = arc_subdiagram(&d("1-4,2-3"), 1).unwrap();
        assert_eq!(sub.labels(), vec![2]);
        assert_eq!(sub.arc(2), Some(Arc::new(1, 2)));
        assert!(arc_subdiagram(&d("1-2,3-4"), 1).unwrap().is_empty());
        let sub = arc_subdiagram(&d("1-3,2-4"), 1).unwrap();
        assert_eq!(sub.labels(), vec![2]);
        assert_eq!(sub.arc(2), Some(Arc::new(0, 2)));
        assert_eq!(arc_subdiagram(&d("1-2"), 2), Err(DiagramError::UnknownLabel(2)));
    }

    #[test]
    fn chain_trees() {
        assert_eq!(right_chain_tree(&d("1-4,2-3")).children(0), &[1]);
        assert_eq!(right_chain_tree(&d("1-4,2-3")).children(1), &[2]);
        let t = right_chain_tree(&d("1-2,3-4"));
        assert_eq!(t.children(0), &[1, 2]);
        assert!(t.children(1).is_empty() && t.children(2).is_empty());
        let t = right_chain_tree(&d("1-3,2-4"));
        assert_eq!(t.children(0), &[1]);
        assert_eq!(t.children(1), &[2]);
    }

    #[test]
    fn chain_tree_uses_nested_subdiagrams() {
        // arc 2-3 is on the top-level chain and also inside 1-7; it must
        // appear once
        let t = right_chain_tree(&d("1-7,2-3,4-8,5-6"));
        assert_eq!(t.node_count(), 4);
        assert_eq!(t.children(0), &[1, 4]);
        assert_eq!(t.children(1), &[2]);
        assert_eq!(t.children(2), &[3]);
    }

    #[test]
    fn projection() {
        assert_eq!(tl_projection(&d("1-3,2-4")), d("1-4,2-3"));
        assert_eq!(tl_projection(&d("1-2,3-4")), d("1-2,3-4"));
        assert_eq!(tl_projection(&d("1-4,2-3")), d("1-4,2-3"));
    }

    #[test]
    fn secondary() {
        // right labels: {2,4} -> 1, {1,3} -> 2
        assert_eq!(secondary_labels(&d("1-3,2-4")), vec![2, 1]);
        assert_eq!(secondary_labels(&d("1-2,3-4")), vec![1, 2]);
        let tl = d("1-6,2-3,4-5");
        let l = tl.labelling();
        let want: Vec<usize> = (1..=3).map(|i| l.left_of_right(i)).collect();
        assert_eq!(secondary_labels(&tl), want);
    }

    #[test]
    fn agreement() {
        assert_eq!(right_agreement(&d("1-3,2-4"), &d("1-4,2-3")).unwrap(), 2);
        assert_eq!(right_agreement(&d("1-3,2-4"), &d("1-3,2-4")).unwrap(), 4);
        assert_eq!(right_agreement(&d("1-2,3-4"), &d("1-4,2-3")).unwrap(), 1);
        assert!(right_agreement(&d("1-2"), &d("1-2,3-4")).is_err());
    }

    #[test]
    fn nest_concat_prime() {
        assert_eq!(nest(&d("1-2")), d("1-4,2-3"));
        assert_eq!(concat_diagrams(&d("1-2"), &d("1-2")), d("1-2,3-4"));
        assert!(is_prime_diagram(&d("1-3,2-4")));
        assert!(!is_prime_diagram(&d("1-2,3-4")));
        assert!(is_prime_diagram(&d("1-4,2-3")));
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_diagrams(1), vec![d("1-2")]);
        assert_eq!(enumerate_diagrams(2).len(), 3);
        assert_eq!(enumerate_diagrams(3).len(), 15);
        assert_eq!(enumerate_tl_diagrams(3).len(), 5);
        assert_eq!(enumerate_diagrams(0), vec![BrauerDiagram::empty()]);
    }

    #[test]
    fn suffix_restriction() {
        let r = d("1-3,2-4").restrict_suffix(3);
        assert_eq!(r.pair_count(), 1);
        assert_eq!(r.singleton_count(), 1);
        assert_eq!(r.partner(0), Some(2));
    }

    #[test]
    fn adjacent_swap() {
        let mut x = d("1-3,2-4");
        x.swap_adjacent(0);
        assert_eq!(x, d("1-4,2-3"));
        let mut y = d("1-2");
        y.swap_adjacent(0);
        assert_eq!(y, d("1-2"));
    }
}
