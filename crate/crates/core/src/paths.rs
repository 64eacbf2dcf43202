//! Dyck and overhang lattice paths.
//!
//! An overhang path of degree `n` is a noncollapsing walk from `(0,0)` to
//! `(2n,0)` inside the strip `0 <= x <= 2n`, `y >= 0`, built from the steps
//!
//! * `1`  : `(a,b) -> (a+1,b+1)`
//! * `2`  : `(a,b) -> (a+1,b-1)`
//! * `2'` : `(a,b) -> (a-1,b+1)`
//!
//! Dyck paths are the overhang paths without `2'` steps.
//!
//! Every path is determined by its *l-vector*: the `k`-th up step of a path
//! of degree `n` starts at `(2k-2-l_k, l_k)`, and the lower region of the
//! path is the lower region of `p_0 = 1212..12` plus, for every `k`, a
//! diagonal strip of `l_k` diamond tiles leaning up-left from the base edge
//! `(2k-2,0)-(2k-1,1)`. The constraint `0 <= l_k <= 2(k-1)` keeps the strip
//! inside the strip `x >= 0`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("unexpected character {found:?} at offset {offset}")]
    BadToken { offset: usize, found: char },
    #[error("step {step} leaves the region at ({x},{y})")]
    LeavesRegion { step: usize, x: i64, y: i64 },
    #[error("step {step} revisits ({x},{y})")]
    Revisits { step: usize, x: i64, y: i64 },
    #[error("path ends at ({x},{y}), expected a point (2n,0)")]
    WrongEndpoint { x: i64, y: i64 },
    #[error("l-vector entry l_{k} = {value} outside 0..={max}")]
    LVectorRange { k: usize, value: usize, max: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A single lattice step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    Up,
    Down,
    OverhangUp,
}

impl Step {
    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::Up => (1, 1),
            Step::Down => (1, -1),
            Step::OverhangUp => (-1, 1),
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Step::Up => "1",
            Step::Down => "2",
            Step::OverhangUp => "2'",
        }
    }
}

/// A validated overhang path. Equality is equality of step words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OverhangPath {
    steps: Vec<Step>,
}

/// Counts of each step kind in a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepCounts {
    pub up: usize,
    pub down: usize,
    pub overhang: usize,
}

fn tokenize(word: &str) -> Result<Vec<Step>, PathError> {
    let mut steps = Vec::with_capacity(word.len());
    let mut chars = word.char_indices().peekable();
    while let Some((offset, c)) = chars.next() {
        match c {
            '1' => steps.push(Step::Up),
            '2' => {
                if matches!(chars.peek(), Some((_, '\''))) {
                    chars.next();
                    steps.push(Step::OverhangUp);
                } else {
                    steps.push(Step::Down);
                }
            }
            c if c.is_whitespace() => {}
            found => return Err(PathError::BadToken { offset, found }),
        }
    }
    Ok(steps)
}

/// Parses a step word such as `"12'1222"`.
pub fn parse_path(word: &str) -> Result<OverhangPath, PathError> {
    OverhangPath::from_steps(tokenize(word)?)
}

pub fn format_path(path: &OverhangPath) -> String {
    path.to_string()
}

impl OverhangPath {
    /// Validates a step sequence. The degree is forced to be the number of
    /// up steps, since `2` and `2'` steps preserve `x + y`.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self, PathError> {
        let n = steps.iter().filter(|s| **s == Step::Up).count() as i64;
        let mut seen = HashSet::with_capacity(steps.len() + 1);
        let (mut x, mut y) = (0i64, 0i64);
        seen.insert((x, y));
        for (i, step) in steps.iter().enumerate() {
            let (dx, dy) = step.delta();
            x += dx;
            y += dy;
            if x < 0 || x > 2 * n || y < 0 {
                return Err(PathError::LeavesRegion { step: i + 1, x, y });
            }
            if !seen.insert((x, y)) {
                return Err(PathError::Revisits { step: i + 1, x, y });
            }
        }
        if (x, y) != (2 * n, 0) {
            return Err(PathError::WrongEndpoint { x, y });
        }
        Ok(Self { steps })
    }

    /// The empty path of degree 0.
    pub fn empty() -> Self {
        Self { steps: Vec::new() }
    }

    /// The lowest path `1212..12`.
    pub fn lowest(n: usize) -> Self {
        let mut steps = Vec::with_capacity(2 * n);
        for _ in 0..n {
            steps.push(Step::Up);
            steps.push(Step::Down);
        }
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn degree(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::Up).count()
    }

    pub fn is_dyck(&self) -> bool {
        !self.steps.contains(&Step::OverhangUp)
    }

    pub fn step_counts(&self) -> StepCounts {
        let mut c = StepCounts::default();
        for s in &self.steps {
            match s {
                Step::Up => c.up += 1,
                Step::Down => c.down += 1,
                Step::OverhangUp => c.overhang += 1,
            }
        }
        c
    }

    /// Vertices visited, starting with `(0,0)`.
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let (mut x, mut y) = (0, 0);
        out.push((x, y));
        for s in &self.steps {
            let (dx, dy) = s.delta();
            x += dx;
            y += dy;
            out.push((x, y));
        }
        out
    }

    pub fn lvector(&self) -> LVector {
        path_to_lvector(self)
    }

    pub fn tiles(&self) -> TileSet {
        self.lvector().tiles()
    }

    pub fn record(&self) -> PathRecord {
        PathRecord {
            degree: self.degree(),
            word: self.to_string(),
            lvector: self.lvector().0,
        }
    }
}

impl fmt::Display for OverhangPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(s.token())?;
        }
        Ok(())
    }
}

impl FromStr for OverhangPath {
    type Err = PathError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_path(s)
    }
}

/// Structured record form of a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub degree: usize,
    pub word: String,
    pub lvector: Vec<usize>,
}

impl PathRecord {
    pub fn to_path(&self) -> Result<OverhangPath, PathError> {
        parse_path(&self.word)
    }
}

/// The l-vector `(l_1, .., l_n)` with `0 <= l_k <= 2(k-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LVector(Vec<usize>);

impl LVector {
    pub fn new(l: Vec<usize>) -> Result<Self, PathError> {
        for (i, &v) in l.iter().enumerate() {
            if v > 2 * i {
                return Err(PathError::LVectorRange { k: i + 1, value: v, max: 2 * i });
            }
        }
        Ok(Self(l))
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Mixed-radix rank in `0..(2n-1)!!`, most significant digit last.
    pub fn rank(&self) -> u64 {
        let mut r = 0u64;
        for (i, &v) in self.0.iter().enumerate().rev() {
            r = r * (2 * i as u64 + 1) + v as u64;
        }
        r
    }

    pub fn unrank(n: usize, mut rank: u64) -> Self {
        let mut l = vec![0; n];
        for (i, slot) in l.iter_mut().enumerate() {
            let radix = 2 * i as u64 + 1;
            *slot = (rank % radix) as usize;
            rank /= radix;
        }
        Self(l)
    }

    pub fn tiles(&self) -> TileSet {
        let mut tiles = BTreeSet::new();
        for (i, &v) in self.0.iter().enumerate() {
            for j in 1..=v {
                tiles.insert(Tile { rect: i + 1, height: j });
            }
        }
        TileSet { degree: self.degree(), tiles }
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// A diamond tile: the `height`-th diamond of the strip based at the
/// `rect`-th base edge (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub rect: usize,
    pub height: usize,
}

impl Tile {
    /// Lowest corner of the diamond in lattice coordinates.
    pub fn bottom_vertex(&self) -> (i64, i64) {
        let k = self.rect as i64;
        let j = self.height as i64;
        (2 * k - 2 - (j - 1), j - 1)
    }

    /// Corners in the order bottom, right, top, left.
    pub fn corners(&self) -> [(i64, i64); 4] {
        let (x, y) = self.bottom_vertex();
        [(x, y), (x + 1, y + 1), (x, y + 2), (x - 1, y + 1)]
    }
}

/// Diamond tiles of a lower region. The `n` base half-diamonds are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSet {
    pub degree: usize,
    pub tiles: BTreeSet<Tile>,
}

impl TileSet {
    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn is_subset(&self, other: &TileSet) -> bool {
        self.tiles.is_subset(&other.tiles)
    }

    /// The skew region `q/p`: tiles of `self` not in `inner`.
    pub fn skew(&self, inner: &TileSet) -> BTreeSet<Tile> {
        self.tiles.difference(&inner.tiles).copied().collect()
    }

    /// Base half-diamonds as triangles `(2k-2,0),(2k-1,1),(2k,0)`.
    pub fn half_tiles(&self) -> Vec<[(i64, i64); 3]> {
        (0..self.degree as i64)
            .map(|k| [(2 * k, 0), (2 * k + 1, 1), (2 * k + 2, 0)])
            .collect()
    }
}

pub fn path_to_lvector(p: &OverhangPath) -> LVector {
    let mut l = Vec::with_capacity(p.degree());
    let mut y = 0i64;
    for s in p.steps() {
        if *s == Step::Up {
            l.push(y as usize);
        }
        y += s.delta().1;
    }
    LVector(l)
}

/// Upper boundary of the lower region described by `l`.
pub fn lvector_to_path(l: &LVector) -> OverhangPath {
    let n = l.degree();
    let mut steps = Vec::new();
    for k in 0..n {
        steps.push(Step::Up);
        let top = l.0[k] + 1;
        let next = if k + 1 < n { l.0[k + 1] } else { 0 };
        if next < top {
            steps.extend(std::iter::repeat_n(Step::Down, top - next));
        } else {
            steps.extend(std::iter::repeat_n(Step::OverhangUp, next - top));
        }
    }
    OverhangPath { steps }
}

/// Every overhang path of degree `n`, by depth-first search over step words.
pub fn enumerate_paths_dfs(n: usize) -> Vec<OverhangPath> {
    fn go(
        n: i64,
        pos: (i64, i64),
        ups: i64,
        steps: &mut Vec<Step>,
        seen: &mut HashSet<(i64, i64)>,
        out: &mut Vec<OverhangPath>,
    ) {
        if pos == (2 * n, 0) {
            out.push(OverhangPath { steps: steps.clone() });
            return;
        }
        for step in [Step::Up, Step::Down, Step::OverhangUp] {
            if step == Step::Up && ups == n {
                continue;
            }
            let (dx, dy) = step.delta();
            let next = (pos.0 + dx, pos.1 + dy);
            if next.0 < 0 || next.0 > 2 * n || next.1 < 0 || seen.contains(&next) {
                continue;
            }
            // the endpoint lies on the last diagonal; overshooting it is fatal
            if ups == n && next.0 + next.1 == 2 * n && step == Step::OverhangUp {
                continue;
            }
            seen.insert(next);
            steps.push(step);
            go(n, next, ups + (step == Step::Up) as i64, steps, seen, out);
            steps.pop();
            seen.remove(&next);
        }
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    seen.insert((0, 0));
    go(n as i64, (0, 0), 0, &mut Vec::new(), &mut seen, &mut out);
    out.sort();
    out
}

/// Number of overhang paths of degree `n`, `(2n-1)!!`.
pub fn path_count(n: usize) -> u64 {
    (1..=n as u64).map(|k| 2 * k - 1).product()
}

/// All l-vectors of degree `n` in rank order.
pub fn enumerate_lvectors(n: usize) -> impl Iterator<Item = LVector> {
    (0..path_count(n)).map(move |r| LVector::unrank(n, r))
}

/// Every overhang path of degree `n`, sorted by word.
pub fn enumerate_paths(n: usize) -> Vec<OverhangPath> {
    let mut out: Vec<_> = enumerate_lvectors(n).map(|l| lvector_to_path(&l)).collect();
    out.sort();
    out
}

/// Every Dyck path of degree `n`, sorted by word.
pub fn enumerate_dyck(n: usize) -> Vec<OverhangPath> {
    let mut out = Vec::new();
    let mut l = vec![0usize; n];
    fn go(k: usize, l: &mut Vec<usize>, out: &mut Vec<OverhangPath>) {
        if k == l.len() {
            out.push(lvector_to_path(&LVector(l.clone())));
            return;
        }
        let hi = if k == 0 { 0 } else { l[k - 1] + 1 };
        for v in 0..=hi {
            l[k] = v;
            go(k + 1, l, out);
        }
    }
    go(0, &mut l, &mut out);
    out.sort();
    out
}

/// Containment of lower regions.
pub fn path_leq(p: &OverhangPath, q: &OverhangPath) -> Result<bool, PathError> {
    let (a, b) = (p.lvector(), q.lvector());
    if a.degree() != b.degree() {
        return Err(PathError::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok(a.leq(&b))
}

fn root_lvector(l: &LVector) -> LVector {
    let mut t = Vec::with_capacity(l.degree());
    for (k, &v) in l.0.iter().enumerate() {
        let cap = if k == 0 { 0 } else { t[k - 1] + 1 };
        t.push(v.min(cap));
    }
    LVector(t)
}

/// The maximal Dyck path below `p`.
pub fn root_dyck(p: &OverhangPath) -> OverhangPath {
    lvector_to_path(&root_lvector(&p.lvector()))
}

/// Side-by-side concatenation `a * b`.
pub fn concat_paths(a: &OverhangPath, b: &OverhangPath) -> OverhangPath {
    let mut steps = a.steps.clone();
    steps.extend_from_slice(&b.steps);
    OverhangPath { steps }
}

/// Whether `p` splits as `a * b` with `a` of degree `m`.
fn splits_at(l: &[usize], m: usize) -> bool {
    l.iter().enumerate().skip(m).all(|(k, &v)| v <= 2 * (k - m))
}

pub fn is_prime_path(p: &OverhangPath) -> bool {
    let l = p.lvector();
    let n = l.degree();
    n > 0 && (1..n).all(|m| !splits_at(&l.0, m))
}

/// Factorization into primes. The empty path has no factors.
pub fn prime_factorize(p: &OverhangPath) -> Vec<OverhangPath> {
    let l = p.lvector().0;
    let mut cuts = vec![0];
    for m in 1..l.len() {
        let last = *cuts.last().unwrap();
        if splits_at(&l[last..], m - last) {
            cuts.push(m);
        }
    }
    cuts.push(l.len());
    cuts.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let part = l[w[0]..w[1]].to_vec();
            lvector_to_path(&LVector(part))
        })
        .collect()
}

/// Lengths of the overhang stacks: entry `i-1` is the number of tiles outside
/// the root attached to the `i`-th up step counted from the right.
pub fn stack_lengths(p: &OverhangPath) -> Vec<usize> {
    let l = p.lvector();
    let t = root_lvector(&l);
    let n = l.degree();
    (1..=n).map(|i| l.0[n - i] - t.0[n - i]).collect()
}

/// Adds left-overhanging stacks to a Dyck path; `stacks[i-1]` goes on the
/// `i`-th up step from the right. Fails if the result leaves the strip.
pub fn with_stacks(root: &OverhangPath, stacks: &[usize]) -> Result<OverhangPath, PathError> {
    let t = root.lvector();
    let n = t.degree();
    if stacks.len() != n {
        return Err(PathError::DegreeMismatch(n, stacks.len()));
    }
    let l: Vec<usize> = (0..n).map(|k| t.0[k] + stacks[n - 1 - k]).collect();
    Ok(lvector_to_path(&LVector::new(l)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(w: &str) -> OverhangPath {
        parse_path(w).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("1212").degree(), 2);
        assert!(matches!(parse_path("12'2"), Err(PathError::Revisits { .. })));
        assert!(matches!(parse_path("21"), Err(PathError::LeavesRegion { .. })));
        assert!(matches!(parse_path("12x"), Err(PathError::BadToken { offset: 2, found: 'x' })));
        assert!(matches!(parse_path("11"), Err(PathError::WrongEndpoint { .. })));
        assert_eq!(p("").degree(), 0);
        assert_eq!(p("12'1222").to_string(), "12'1222");
    }

    #[test]
    fn lvector_examples() {
        assert_eq!(p("1212").lvector().as_slice(), &[0, 0]);
        assert_eq!(p("1122").lvector().as_slice(), &[0, 1]);
        assert_eq!(p("12'1222").lvector().as_slice(), &[0, 2]);
        assert_eq!(lvector_to_path(&LVector::new(vec![0, 2]).unwrap()), p("12'1222"));
        assert_eq!(lvector_to_path(&LVector::zero(3)), p("121212"));
        assert!(LVector::new(vec![1]).is_err());
        assert!(LVector::new(vec![0, 3]).is_err());
    }

    #[test]
    fn degree_two_census() {
        let got: BTreeSet<String> = enumerate_paths(2).iter().map(|p| p.to_string()).collect();
        let want: BTreeSet<String> =
            ["1122", "12'1222", "1212"].iter().map(|s| s.to_string()).collect();
        assert_eq!(got, want);
        assert_eq!(enumerate_paths(1), vec![p("12")]);
        assert_eq!(enumerate_paths(0), vec![OverhangPath::empty()]);
    }

    #[test]
    fn dfs_matches_lvectors() {
        for n in 0..=5 {
            let dfs = enumerate_paths_dfs(n);
            assert_eq!(dfs.len() as u64, path_count(n));
            assert_eq!(dfs, enumerate_paths(n));
        }
    }

    #[test]
    fn order_and_root() {
        assert!(path_leq(&p("1122"), &p("12'1222")).unwrap());
        assert!(!path_leq(&p("12'1222"), &p("1122")).unwrap());
        assert!(path_leq(&p("12"), &p("1212")).is_err());
        assert_eq!(root_dyck(&p("12'1222")), p("1122"));
        assert_eq!(root_dyck(&p("1212")), p("1212"));
        for t in enumerate_dyck(4) {
            assert_eq!(root_dyck(&t), t);
        }
    }

    #[test]
    fn concat_and_primes() {
        assert_eq!(concat_paths(&p("12"), &p("12")), p("1212"));
        assert_eq!(concat_paths(&p("12"), &p("1122")), p("121122"));
        let c = concat_paths(&p("12'1222"), &p("12"));
        assert_eq!(c.to_string(), "12'122212");
        assert_eq!(c.lvector().as_slice(), &[0, 2, 0]);
        assert_eq!(prime_factorize(&p("1212")), vec![p("12"), p("12")]);
        assert_eq!(prime_factorize(&p("12'1222")), vec![p("12'1222")]);
        assert_eq!(prime_factorize(&p("1122")), vec![p("1122")]);
        assert!(prime_factorize(&OverhangPath::empty()).is_empty());
    }

    #[test]
    fn stacks() {
        assert_eq!(stack_lengths(&p("12'1222")), vec![1, 0]);
        assert_eq!(stack_lengths(&p("1212")), vec![0, 0]);
        assert_eq!(stack_lengths(&p("111222")), vec![0, 0, 0]);
        assert_eq!(with_stacks(&p("1122"), &[1, 0]).unwrap(), p("12'1222"));
        assert!(with_stacks(&p("1212"), &[0, 1]).is_err());
    }

    #[test]
    fn step_counts_match_degree() {
        for n in 0..=5 {
            for path in enumerate_paths(n) {
                let c = path.step_counts();
                assert_eq!(c.up, n);
                assert_eq!(c.down, n + c.overhang);
                assert_eq!(path.steps().len(), 2 * n + 2 * c.overhang);
            }
        }
    }

    #[test]
    fn rank_round_trip() {
        for n in 0..=5 {
            for (r, l) in enumerate_lvectors(n).enumerate() {
                assert_eq!(l.rank(), r as u64);
            }
        }
    }

    #[test]
    fn tile_geometry() {
        let t = p("12'1222").tiles();
        assert_eq!(t.len(), 2);
        let bottoms: Vec<_> = t.tiles.iter().map(|t| t.bottom_vertex()).collect();
        assert_eq!(bottoms, vec![(2, 0), (1, 1)]);
        assert_eq!(t.half_tiles().len(), 2);
        assert_eq!(t.skew(&p("1122").tiles()).len(), 1);
    }
}
