//! Hecke-algebra action on standard tableaux of multi-partitions.
//!
//! For `T < σ_i T` with `h` the generalised hook length of `i, i+1` in `T`
//! and `f = q/[h]`, the generator `g_i` acts on the pair by
//!
//! ```text
//! g T   = (1 - f[h+1]) T  -  f[h-1] σT
//! g σT  =   -f[h+1]    T  + (1 - f[h-1]) σT
//! ```
//!
//! and by `1` or `-q²` when `i, i+1` share a row or a column. The
//! eigenvalues are `1` and `-q²`, so every generator satisfies
//! `(g - 1)(g + q²) = 0`. This is the presentation `(g - q)(g + 1) = 0`
//! rescaled by `q`.
//!
//! Hook lengths for arbitrary shapes use axial distance: the content
//! `col - row` inside each component, shifted by the component's charge.
//! For two one-row components this is the walk formula
//! `h = (x_1 - x_2) + height after i - 1 steps`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::par::Exec;
use crate::qfunc::{qint, Pole, QPoint, QValue, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("malformed shape {0:?}")]
    BadShape(String),
    #[error("malformed walk {0:?}")]
    BadWalk(String),
    #[error("walk {walk} does not fit shape {shape}")]
    WalkShape { walk: String, shape: String },
    #[error("expected {expected} charges, found {found}")]
    ChargeCount { expected: usize, found: usize },
    #[error("generator g_{i} out of range 1..={max}")]
    GeneratorRange { i: usize, max: usize },
    #[error("shape {0} is not a pair of one-row components")]
    NotWalkShape(String),
    #[error(transparent)]
    HookVanishes(#[from] HookVanishes),
}

/// `[h] = 0` makes the action of `g_i` on the pair undefined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("hook length 0 for g_{generator} on the pair ({lower}, {upper})")]
pub struct HookVanishes {
    pub generator: usize,
    pub lower: String,
    pub upper: String,
}

/// Weakly decreasing row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut rows: Vec<usize>) -> Result<Self, HeckeError> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(HeckeError::BadShape(format!("{rows:?}")));
        }
        Ok(Self(rows))
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A tuple of Young diagrams, written `((2,1),(1))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiShape {
    components: Vec<Partition>,
}

impl MultiShape {
    pub fn new(components: Vec<Partition>) -> Self {
        Self { components }
    }

    /// `((a),(b))`.
    pub fn two_rows(a: usize, b: usize) -> Self {
        let row = |k| Partition::new(vec![k]).expect("single row");
        Self::new(vec![row(a), row(b)])
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    /// Two components of at most one row each.
    pub fn is_walk_shape(&self) -> bool {
        self.components.len() == 2 && self.components.iter().all(|p| p.rows().len() <= 1)
    }

    fn row_offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.components
            .iter()
            .map(|p| {
                let start = acc;
                acc += p.rows().len();
                start
            })
            .collect()
    }
}

impl fmt::Display for MultiShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MultiShape {
    type Err = HeckeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HeckeError::BadShape(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let mut components = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let rows = if body[..close].is_empty() {
                Vec::new()
            } else {
                body[..close]
                    .split(',')
                    .map(|r| r.parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?
            };
            components.push(Partition::new(rows).map_err(|_| bad())?);
            rest = &body[close + 1..];
            if let Some(r) = rest.strip_prefix(',') {
                if r.is_empty() {
                    return Err(bad());
                }
                rest = r;
            } else if !rest.is_empty() {
                return Err(bad());
            }
        }
        if components.is_empty() {
            return Err(bad());
        }
        Ok(Self { components })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub component: usize,
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

/// A standard tableau, stored as the cell of each symbol `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    cells: Vec<Cell>,
    global_rows: Vec<usize>,
}

impl StandardTableau {
    fn from_cells(shape: &MultiShape, cells: Vec<Cell>) -> Self {
        let offsets = shape.row_offsets();
        let global_rows = cells.iter().map(|c| offsets[c.component] + c.row).collect();
        Self { cells, global_rows }
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// Cell of symbol `s` (1-based).
    pub fn cell(&self, s: usize) -> Cell {
        self.cells[s - 1]
    }

    /// Row of symbol `s` once components are stacked top to bottom.
    pub fn global_row(&self, s: usize) -> usize {
        self.global_rows[s - 1]
    }

    /// The order `<`: compare the highest symbol lying in different rows;
    /// the tableau holding it in the earlier row is larger.
    pub fn cmp_order(&self, other: &Self) -> Ordering {
        for s in (1..=self.size()).rev() {
            let (a, b) = (self.global_row(s), other.global_row(s));
            if a != b {
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }

    /// `σ_i T`, which need not be standard.
    pub fn swap(&self, i: usize) -> Self {
        let mut t = self.clone();
        t.cells.swap(i - 1, i);
        t.global_rows.swap(i - 1, i);
        t
    }

    /// Generalised hook length of `i, i+1` for the given charges.
    pub fn hook(&self, i: usize, charges: &[i64]) -> i64 {
        let (a, b) = (self.cell(i), self.cell(i + 1));
        a.content() - b.content() + charges[a.component] - charges[b.component]
    }

    fn key(&self) -> Vec<usize> {
        self.global_rows.clone()
    }
}

impl fmt::Display for StandardTableau {
    /// Component rows separated by `/`, components by `|`: `12/3|4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows: Vec<Vec<Vec<usize>>> = Vec::new();
        for (k, c) in self.cells.iter().enumerate() {
            while rows.len() <= c.component {
                rows.push(Vec::new());
            }
            let comp = &mut rows[c.component];
            while comp.len() <= c.row {
                comp.push(Vec::new());
            }
            comp[c.row].push(k + 1);
        }
        let comps: Vec<String> = rows
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|r| r.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "))
                    .collect::<Vec<_>>()
                    .join("/")
            })
            .collect();
        f.write_str(&comps.join("|"))
    }
}

/// Every standard tableau of the shape, sorted increasingly by `<`.
pub fn enumerate_tableaux(shape: &MultiShape) -> Vec<StandardTableau> {
    fn grow(
        shape: &MultiShape,
        filled: &mut [Vec<usize>],
        cells: &mut Vec<Cell>,
        out: &mut Vec<StandardTableau>,
    ) {
        if cells.len() == shape.size() {
            out.push(StandardTableau::from_cells(shape, cells.clone()));
            return;
        }
        for (c, part) in shape.components().iter().enumerate() {
            for (r, &len) in part.rows().iter().enumerate() {
                let col = filled[c][r];
                if col < len && (r == 0 || filled[c][r - 1] > col) {
                    filled[c][r] += 1;
                    cells.push(Cell { component: c, row: r, col });
                    grow(shape, filled, cells, out);
                    cells.pop();
                    filled[c][r] -= 1;
                }
            }
        }
    }
    let mut filled: Vec<Vec<usize>> =
        shape.components().iter().map(|p| vec![0; p.rows().len()]).collect();
    let mut out = Vec::new();
    grow(shape, &mut filled, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.cmp_order(b));
    out
}

/// A tableau of shape `((a),(b))` as its sequence of component indices,
/// written `1212`: letter `1` steps up, letter `2` steps down.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk(Vec<u8>);

impl Walk {
    pub fn new(letters: Vec<u8>) -> Result<Self, HeckeError> {
        if letters.iter().any(|&a| a != 1 && a != 2) {
            let s: String = letters.iter().map(|a| a.to_string()).collect();
            return Err(HeckeError::BadWalk(s));
        }
        Ok(Self(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Height after `k` steps.
    pub fn height(&self, k: usize) -> i64 {
        self.0[..k].iter().map(|&a| if a == 1 { 1 } else { -1 }).sum()
    }

    /// Heights after `0..=n` steps.
    pub fn heights(&self) -> Vec<i64> {
        (0..=self.len()).map(|k| self.height(k)).collect()
    }

    pub fn min_height(&self) -> i64 {
        self.heights().into_iter().min().unwrap_or(0)
    }

    pub fn max_height(&self) -> i64 {
        self.heights().into_iter().max().unwrap_or(0)
    }

    pub fn from_tableau(t: &StandardTableau) -> Self {
        Self((1..=t.size()).map(|s| t.cell(s).component as u8 + 1).collect())
    }

    pub fn to_tableau(&self, shape: &MultiShape) -> Result<StandardTableau, HeckeError> {
        if !shape.is_walk_shape() {
            return Err(HeckeError::NotWalkShape(shape.to_string()));
        }
        let mut used = [0usize; 2];
        let mut cells = Vec::with_capacity(self.len());
        for &a in &self.0 {
            let c = (a - 1) as usize;
            cells.push(Cell { component: c, row: 0, col: used[c] });
            used[c] += 1;
        }
        let fits = (0..2).all(|c| used[c] == shape.components()[c].size());
        if !fits {
            return Err(HeckeError::WalkShape { walk: self.to_string(), shape: shape.to_string() });
        }
        Ok(StandardTableau::from_cells(shape, cells))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for Walk {
    type Err = HeckeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(HeckeError::BadWalk(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self(letters))
    }
}

/// Square matrix over `Q(q)`; column `c` is the image of basis element `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    dim: usize,
    data: Vec<RatFunc>,
}

impl RatMatrix {
    pub fn zero(dim: usize) -> Self {
        Self { dim, data: vec![RatFunc::zero(); dim * dim] }
    }

    pub fn scalar(dim: usize, c: &RatFunc) -> Self {
        let mut m = Self::zero(dim);
        for k in 0..dim {
            m.data[k * dim + k] = c.clone();
        }
        m
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, &RatFunc::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &RatFunc {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RatFunc) {
        self.data[r * self.dim + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFunc::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Product, skipping zero entries.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let t = &out.data[r * n + c] + &(a * b);
                        out.data[r * n + c] = t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Self { dim: self.dim, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Self { dim: self.dim, data }
    }

    /// Principal submatrix on the given indices.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let mut m = Self::zero(idx.len());
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                m.set(r, c, self.get(i, j).clone());
            }
        }
        m
    }
}

/// The module `R^λ` with charges `x`, on the basis of standard tableaux.
#[derive(Debug, Clone)]
pub struct WalkModuleAction {
    shape: MultiShape,
    charges: Vec<i64>,
    basis: Vec<StandardTableau>,
    index: HashMap<Vec<usize>, usize>,
}

impl WalkModuleAction {
    pub fn new(shape: MultiShape, charges: Vec<i64>) -> Result<Self, HeckeError> {
        if charges.len() != shape.components().len() {
            return Err(HeckeError::ChargeCount {
                expected: shape.components().len(),
                found: charges.len(),
            });
        }
        let basis = enumerate_tableaux(&shape);
        let index = basis.iter().enumerate().map(|(k, t)| (t.key(), k)).collect();
        Ok(Self { shape, charges, basis, index })
    }

    /// `((a),(b))` with `x_1 - x_2 = e`.
    pub fn two_rows(a: usize, b: usize, e: i64) -> Self {
        Self::new(MultiShape::two_rows(a, b), vec![e, 0]).expect("two charges")
    }

    pub fn shape(&self) -> &MultiShape {
        &self.shape
    }

    pub fn charges(&self) -> &[i64] {
        &self.charges
    }

    pub fn basis(&self) -> &[StandardTableau] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> usize {
        self.shape.size()
    }

    /// Basis as walks, for pairs of one-row components.
    pub fn walks(&self) -> Option<Vec<Walk>> {
        self.shape.is_walk_shape().then(|| self.basis.iter().map(Walk::from_tableau).collect())
    }

    pub fn index_of(&self, t: &StandardTableau) -> Option<usize> {
        self.index.get(&t.key()).copied()
    }

    pub fn index_of_walk(&self, w: &Walk) -> Result<usize, HeckeError> {
        let t = w.to_tableau(&self.shape)?;
        Ok(self.index_of(&t).expect("walk tableau is standard"))
    }

    /// Hook length governing `g_i` on the pair containing basis element `k`,
    /// taken in the smaller tableau; `None` outside case (c).
    pub fn pair_hook(&self, i: usize, k: usize) -> Option<i64> {
        let t = &self.basis[k];
        let (a, b) = (t.cell(i), t.cell(i + 1));
        if t.global_row(i) == t.global_row(i + 1) || (a.component == b.component && a.col == b.col) {
            return None;
        }
        let s = t.swap(i);
        let lower = if t.cmp_order(&s) == Ordering::Less { t } else { &s };
        Some(lower.hook(i, &self.charges))
    }

    fn check_generator(&self, i: usize) -> Result<(), HeckeError> {
        let max = self.degree().saturating_sub(1);
        if i == 0 || i > max {
            return Err(HeckeError::GeneratorRange { i, max });
        }
        Ok(())
    }

    /// `g_i` applied to basis element `k`, as `(index, coefficient)` terms.
    /// Zero coefficients inside a mixing pair are kept.
    pub fn act(&self, i: usize, k: usize) -> Result<Vec<(usize, RatFunc)>, HeckeError> {
        self.check_generator(i)?;
        let t = &self.basis[k];
        let (a, b) = (t.cell(i), t.cell(i + 1));
        if t.global_row(i) == t.global_row(i + 1) {
            return Ok(vec![(k, RatFunc::one())]);
        }
        if a.component == b.component && a.col == b.col {
            return Ok(vec![(k, -RatFunc::q_pow(2))]);
        }
        let s = t.swap(i);
        let j = self.index_of(&s).expect("σ_i of a mixing tableau is standard");
        let t_is_lower = t.cmp_order(&s) == Ordering::Less;
        let (lower, upper) = if t_is_lower { (k, j) } else { (j, k) };
        let h = self.basis[lower].hook(i, &self.charges);
        if h == 0 {
            return Err(HookVanishes {
                generator: i,
                lower: self.label(lower),
                upper: self.label(upper),
            }
            .into());
        }
        let f = &RatFunc::q() / &qint(h);
        let up = &f * &qint(h + 1);
        let down = &f * &qint(h - 1);
        let one = RatFunc::one();
        Ok(if t_is_lower {
            vec![(lower, &one - &up), (upper, -down)]
        } else {
            vec![(lower, -up), (upper, &one - &down)]
        })
    }

    /// Walk text for walk shapes, tableau text otherwise.
    pub fn label(&self, k: usize) -> String {
        if self.shape.is_walk_shape() {
            Walk::from_tableau(&self.basis[k]).to_string()
        } else {
            self.basis[k].to_string()
        }
    }

    pub fn generator_matrix(&self, i: usize) -> Result<RatMatrix, HeckeError> {
        self.check_generator(i)?;
        let mut m = RatMatrix::zero(self.dim());
        for c in 0..self.dim() {
            for (r, v) in self.act(i, c)? {
                m.set(r, c, v);
            }
        }
        Ok(m)
    }

    pub fn generator_matrices(&self) -> Result<Vec<RatMatrix>, HeckeError> {
        (1..self.degree()).map(|i| self.generator_matrix(i)).collect()
    }

    /// Matrices of the action restricted to the basis subset `idx`. Only
    /// meaningful when the subset spans a submodule; terms leaving it are
    /// dropped. Elements outside `idx` are never acted on.
    pub fn restricted_matrices(&self, idx: &[usize]) -> Result<Vec<RatMatrix>, HeckeError> {
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(p, &k)| (k, p)).collect();
        (1..self.degree())
            .map(|i| {
                let mut m = RatMatrix::zero(idx.len());
                for (c, &k) in idx.iter().enumerate() {
                    for (r, v) in self.act(i, k)? {
                        if let Some(&p) = pos.get(&r) {
                            m.set(p, c, v);
                        }
                    }
                }
                Ok(m)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    /// Nonzero entries of the residue matrix.
    pub residue_entries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub dim: usize,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

#[derive(Debug, Clone, Copy)]
enum Relation {
    Quadratic(usize),
    Braid(usize),
    Commute(usize, usize),
}

/// Checks `(g_i - 1)(g_i + q²) = 0`, the braid relation for adjacent
/// generators and commutation for `|i - j| >= 2`, exactly.
pub fn verify_relations(gens: &[RatMatrix], exec: Exec) -> RelationReport {
    let dim = gens.first().map_or(0, RatMatrix::dim);
    let k = gens.len();
    let mut jobs = Vec::new();
    for i in 0..k {
        jobs.push(Relation::Quadratic(i));
        if i + 1 < k {
            jobs.push(Relation::Braid(i));
        }
        for j in i + 2..k {
            jobs.push(Relation::Commute(i, j));
        }
    }
    let checks = exec.map(&jobs, |&job| {
        let (name, residue) = match job {
            Relation::Quadratic(i) => {
                let g = &gens[i];
                let a = g.sub(&RatMatrix::identity(dim));
                let b = g.add(&RatMatrix::scalar(dim, &RatFunc::q_pow(2)));
                (format!("quadratic g{}", i + 1), a.mul(&b))
            }
            Relation::Braid(i) => {
                let (a, b) = (&gens[i], &gens[i + 1]);
                let lhs = a.mul(b).mul(a);
                let rhs = b.mul(a).mul(b);
                (format!("braid g{} g{}", i + 1, i + 2), lhs.sub(&rhs))
            }
            Relation::Commute(i, j) => {
                let (a, b) = (&gens[i], &gens[j]);
                (format!("commute g{} g{}", i + 1, j + 1), a.mul(b).sub(&b.mul(a)))
            }
        };
        let residue_entries = residue.nonzero_count();
        RelationCheck { name, holds: residue_entries == 0, residue_entries }
    });
    RelationReport { dim, checks }
}

/// A set of basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisSubset {
    /// Walks never below height 0.
    NonNegative,
    /// Walks whose heights all lie in `lo..=hi`.
    Band { lo: i64, hi: i64 },
    /// All walks except these.
    Exclude(Vec<Walk>),
    /// Exactly these walks.
    Walks(Vec<Walk>),
    /// Basis indices, for any shape.
    Indices(Vec<usize>),
}

impl BasisSubset {
    pub fn indices(&self, action: &WalkModuleAction) -> Result<Vec<usize>, HeckeError> {
        if let BasisSubset::Indices(idx) = self {
            return Ok(idx.clone());
        }
        let walks = action
            .walks()
            .ok_or_else(|| HeckeError::NotWalkShape(action.shape().to_string()))?;
        let listed = |ws: &[Walk]| -> Result<Vec<usize>, HeckeError> {
            ws.iter().map(|w| action.index_of_walk(w)).collect()
        };
        Ok(match self {
            BasisSubset::NonNegative => {
                (0..walks.len()).filter(|&k| walks[k].min_height() >= 0).collect()
            }
            BasisSubset::Band { lo, hi } => (0..walks.len())
                .filter(|&k| walks[k].min_height() >= *lo && walks[k].max_height() <= *hi)
                .collect(),
            BasisSubset::Exclude(ws) => {
                let out = listed(ws)?;
                (0..walks.len()).filter(|k| !out.contains(k)).collect()
            }
            BasisSubset::Walks(ws) => {
                let mut idx = listed(ws)?;
                idx.sort_unstable();
                idx.dedup();
                idx
            }
            BasisSubset::Indices(_) => unreachable!(),
        })
    }
}

/// A coefficient of `g_i s` on a basis element outside the subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leak {
    pub generator: usize,
    pub from: usize,
    pub to: usize,
    pub coefficient: RatFunc,
    /// Order of vanishing at the requested point; `None` for the zero
    /// function or when no point was given.
    pub valuation: Option<i64>,
    pub value: Option<Result<QValue, Pole>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecouplingReport {
    pub subset: Vec<usize>,
    pub point: Option<QPoint>,
    pub leaks: Vec<Leak>,
    /// Actions on subset elements that are undefined because `[h] = 0`.
    pub undefined: Vec<HookVanishes>,
}

impl DecouplingReport {
    pub fn nonzero_leaks(&self) -> impl Iterator<Item = &Leak> {
        self.leaks.iter().filter(|l| !l.coefficient.is_zero())
    }

    /// The subset spans a submodule at generic `q`.
    pub fn is_invariant(&self) -> bool {
        self.undefined.is_empty() && self.nonzero_leaks().next().is_none()
    }

    pub fn poles(&self) -> impl Iterator<Item = &Leak> {
        self.leaks.iter().filter(|l| l.valuation.is_some_and(|v| v < 0))
    }
}

/// Every coefficient by which a generator carries a subset element outside
/// the subset, with valuations at `point` when given.
pub fn decoupling_report(
    action: &WalkModuleAction,
    subset: &BasisSubset,
    point: Option<&QPoint>,
) -> Result<DecouplingReport, HeckeError> {
    let idx = subset.indices(action)?;
    let inside: Vec<bool> = {
        let mut v = vec![false; action.dim()];
        for &k in &idx {
            v[k] = true;
        }
        v
    };
    let mut leaks = Vec::new();
    let mut undefined = Vec::new();
    for i in 1..action.degree() {
        for &k in &idx {
            let terms = match action.act(i, k) {
                Ok(t) => t,
                Err(HeckeError::HookVanishes(hv)) => {
                    undefined.push(hv);
                    continue;
                }
                Err(e) => return Err(e),
            };
            for (r, coefficient) in terms {
                if inside[r] {
                    continue;
                }
                let (valuation, value) = match point {
                    Some(p) if !coefficient.is_zero() => {
                        (Some(coefficient.valuation_at(p)), Some(coefficient.eval_at(p)))
                    }
                    _ => (None, None),
                };
                leaks.push(Leak { generator: i, from: k, to: r, coefficient, valuation, value });
            }
        }
    }
    Ok(DecouplingReport { subset: idx, point: point.cloned(), leaks, undefined })
}

/// Smallest `|e|`-ordered charge offsets in `range` for which every hook
/// of the two-row module is nonzero, i.e. the full action is defined.
pub fn defined_offsets(a: usize, b: usize, range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
    range
        .filter(|&e| WalkModuleAction::two_rows(a, b, e).generator_matrices().is_ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Walk {
        s.parse().unwrap()
    }

    #[test]
    fn shapes_parse() {
        let s: MultiShape = "((2,1),(1))".parse().unwrap();
        assert_eq!(s.size(), 4);
        assert_eq!(s.to_string(), "((2,1),(1))");
        assert!(MultiShape::two_rows(2, 2).is_walk_shape());
        assert!("((1,2))".parse::<MultiShape>().is_err());
        assert!("(2)".parse::<MultiShape>().is_err());
        assert_eq!("((),(3))".parse::<MultiShape>().unwrap().size(), 3);
    }

    #[test]
    fn tableau_counts() {
        let walks: Vec<String> = enumerate_tableaux(&MultiShape::two_rows(2, 2))
            .iter()
            .map(|t| Walk::from_tableau(t).to_string())
            .collect();
        let mut sorted = walks.clone();
        sorted.sort();
        assert_eq!(sorted, ["1122", "1212", "1221", "2112", "2121", "2211"]);
        assert_eq!(enumerate_tableaux(&"((4))".parse().unwrap()).len(), 1);
        assert_eq!(enumerate_tableaux(&MultiShape::two_rows(1, 1)).len(), 2);
        assert_eq!(enumerate_tableaux(&"((2,1))".parse().unwrap()).len(), 2);
        assert_eq!(enumerate_tableaux(&"((1),(1),(1))".parse().unwrap()).len(), 6);
        assert_eq!(enumerate_tableaux(&"((2,1),(1))".parse().unwrap()).len(), 8);
    }

    #[test]
    fn order_on_walks() {
        // at the highest differing position the larger walk has letter 1
        let basis = enumerate_tableaux(&MultiShape::two_rows(2, 2));
        let walks: Vec<String> = basis.iter().map(|t| Walk::from_tableau(t).to_string()).collect();
        assert_eq!(walks, ["1122", "1212", "2112", "1221", "2121", "2211"]);
    }

    #[test]
    fn walk_hooks() {
        let m = WalkModuleAction::two_rows(2, 2, 1);
        // pair (1122, 1212) at i = 2: lower is 1122, height after one step is 1
        assert_eq!(m.pair_hook(2, m.index_of_walk(&w("1212")).unwrap()), Some(2));
        // peak at height 0: pair (1221, 2121) at i = 1
        assert_eq!(m.pair_hook(1, m.index_of_walk(&w("1221")).unwrap()), Some(1));
        // valley below the axis gives [0]
        assert_eq!(m.pair_hook(2, m.index_of_walk(&w("2211")).unwrap()), Some(0));
        assert!(matches!(m.generator_matrix(2), Err(HeckeError::HookVanishes(_))));
        let m0 = WalkModuleAction::two_rows(3, 3, 0);
        for (k, walk) in m0.walks().unwrap().iter().enumerate() {
            for i in 1..6 {
                if let Some(h) = m0.pair_hook(i, k) {
                    let lower = if walk.letters()[i - 1] == 1 { walk.clone() } else {
                        let mut l = walk.letters().to_vec();
                        l.swap(i - 1, i);
                        Walk::new(l).unwrap()
                    };
                    assert_eq!(h, lower.height(i - 1));
                }
            }
        }
    }

    #[test]
    fn rank_two_block() {
        for e in [-3, 2, 5] {
            let m = WalkModuleAction::two_rows(1, 1, e);
            let g = m.generator_matrix(1).unwrap();
            let trace = g.get(0, 0) + g.get(1, 1);
            let det = &(g.get(0, 0) * g.get(1, 1)) - &(g.get(0, 1) * g.get(1, 0));
            assert_eq!(trace, &RatFunc::one() - &RatFunc::q_pow(2));
            assert_eq!(det, -RatFunc::q_pow(2));
        }
        let one_row = WalkModuleAction::new("((2))".parse().unwrap(), vec![0]).unwrap();
        assert_eq!(one_row.generator_matrix(1).unwrap(), RatMatrix::identity(1));
        let column = WalkModuleAction::new("((1,1))".parse().unwrap(), vec![0]).unwrap();
        assert_eq!(column.generator_matrix(1).unwrap(), RatMatrix::scalar(1, &-RatFunc::q_pow(2)));
    }

    #[test]
    fn explicit_entries() {
        // ((1),(1)) with e = 2: lower walk 12, h = 2, f = q/[2]
        let m = WalkModuleAction::two_rows(1, 1, 2);
        assert_eq!(m.label(0), "12");
        let g = m.generator_matrix(1).unwrap();
        let f = &RatFunc::q() / &qint(2);
        assert_eq!(g.get(0, 0), &(&RatFunc::one() - &(&f * &qint(3))));
        assert_eq!(g.get(1, 0), &-(&f * &qint(1)));
        assert_eq!(g.get(0, 1), &-(&f * &qint(3)));
        assert_eq!(g.get(1, 1), &(&RatFunc::one() - &f));
        assert_eq!(g.get(1, 0).to_string(), "(-q^2) / (q^2 + 1)");
    }

    #[test]
    fn relations_small() {
        for (shape, charges) in [
            ("((2),(1))", vec![-3, 0]),
            ("((2),(2))", vec![0, 5]),
            ("((2,1))", vec![0]),
            ("((1),(1),(1))", vec![0, 5, 11]),
        ] {
            let m = WalkModuleAction::new(shape.parse().unwrap(), charges).unwrap();
            let gens = m.generator_matrices().unwrap();
            let r = verify_relations(&gens, Exec::Sequential);
            assert!(r.all_hold(), "{shape}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn nonnegative_submodule() {
        let m = WalkModuleAction::two_rows(2, 2, 1);
        let r = decoupling_report(&m, &BasisSubset::NonNegative, None).unwrap();
        assert_eq!(r.subset.len(), 2);
        assert!(r.is_invariant());
        assert!(!r.leaks.is_empty());
        let gens = m.restricted_matrices(&r.subset).unwrap();
        assert!(verify_relations(&gens, Exec::Sequential).all_hold());
    }

    #[test]
    fn quotient_at_two() {
        let m = WalkModuleAction::two_rows(2, 2, 2);
        let r = decoupling_report(&m, &BasisSubset::Exclude(vec![w("2211")]), None).unwrap();
        assert!(r.is_invariant());
        // the walk itself does leak into the rest
        let r = decoupling_report(&m, &BasisSubset::Walks(vec![w("2211")]), None).unwrap();
        assert!(!r.is_invariant());
    }

    #[test]
    fn wall_valuations() {
        let m = WalkModuleAction::two_rows(3, 3, 1);
        let q0 = QPoint::RootOfUnity(6);
        let r = decoupling_report(&m, &BasisSubset::Band { lo: 0, hi: 2 }, Some(&q0)).unwrap();
        assert!(r.undefined.is_empty());
        assert!(r.poles().next().is_some());
    }
}
