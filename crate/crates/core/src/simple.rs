//! The mixed-radix bijection `κ` and its route to overhang paths.
//!
//! `κ` peels a diagram from the right: delete the rightmost vertex, record
//! the 1-based position of its now-unpaired partner among the remaining
//! `2i - 1` vertices, delete that vertex too, and repeat. The resulting tuple
//! becomes a grid walk with steps `(1,0)`, `(0,1)`, `(-1,0)` whose `i`-th
//! vertical step sits at `x = x_i - i`, and rotating that walk by 45 degrees
//! gives an overhang path.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagrams::BrauerDiagram;
use crate::paths::{OverhangPath, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("entry x_{i} = {value} outside 1..={max}")]
    Range { i: usize, value: i64, max: i64 },
    #[error("malformed tuple {0:?}")]
    Parse(String),
    #[error("grid entry {i} = {value} outside -{bound}..={bound}")]
    GridRange { i: usize, value: i64, bound: i64 },
    #[error("path does not come from a grid walk: {0}")]
    NotGrid(String),
}

/// `(x_1, .., x_n)` with `1 <= x_i < 2i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RadixTuple(Vec<i64>);

impl RadixTuple {
    pub fn new(x: Vec<i64>) -> Result<Self, TupleError> {
        for (k, &v) in x.iter().enumerate() {
            let i = k as i64 + 1;
            if v < 1 || v >= 2 * i {
                return Err(TupleError::Range { i: k + 1, value: v, max: 2 * i - 1 });
            }
        }
        Ok(Self(x))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for RadixTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for RadixTuple {
    type Err = TupleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Self(Vec::new()));
        }
        let x = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| TupleError::Parse(s.into())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(x)
    }
}

/// x-coordinates of the `(0,1)` steps of a grid walk from `(0,0)` to `(n,n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridPath {
    vertical_xs: Vec<i64>,
}

impl GridPath {
    pub fn new(vertical_xs: Vec<i64>) -> Result<Self, TupleError> {
        for (k, &v) in vertical_xs.iter().enumerate() {
            let bound = k as i64;
            if v.abs() > bound {
                return Err(TupleError::GridRange { i: k + 1, value: v, bound });
            }
        }
        Ok(Self { vertical_xs })
    }

    pub fn vertical_xs(&self) -> &[i64] {
        &self.vertical_xs
    }

    pub fn degree(&self) -> usize {
        self.vertical_xs.len()
    }

    /// Vertices of the walk, starting at the origin.
    pub fn points(&self) -> Vec<(i64, i64)> {
        let n = self.degree() as i64;
        let mut pts = vec![(0, 0)];
        let mut x = 0;
        let walk_to = |pts: &mut Vec<(i64, i64)>, x: &mut i64, to: i64, y: i64| {
            while *x != to {
                *x += (to - *x).signum();
                pts.push((*x, y));
            }
        };
        for (y, &v) in self.vertical_xs.iter().enumerate() {
            walk_to(&mut pts, &mut x, v, y as i64);
            pts.push((x, y as i64 + 1));
        }
        walk_to(&mut pts, &mut x, n, n);
        pts
    }
}

impl fmt::Display for GridPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertical_xs.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `κ = d_2 ∘ d_4 ∘ .. ∘ d_2n`.
pub fn kappa(d: &BrauerDiagram) -> RadixTuple {
    let n = d.degree();
    // positions still present, left to right, with their original indices
    let mut alive: Vec<usize> = (0..d.size()).collect();
    let mut x = vec![0; n];
    for i in (1..=n).rev() {
        let last = alive.pop().expect("2i vertices remain");
        let single = d.partner(last);
        let at = alive.iter().position(|&v| v == single).expect("partner is alive");
        x[i - 1] = at as i64 + 1;
        alive.remove(at);
    }
    RadixTuple(x)
}

pub fn kappa_inverse(x: &RadixTuple) -> BrauerDiagram {
    // rebuild left to right: each stage inserts a singleton at x_i and pairs
    // it with a new rightmost vertex
    let mut partner: Vec<usize> = Vec::new();
    for &xi in x.as_slice() {
        let at = (xi - 1) as usize;
        for p in partner.iter_mut() {
            if *p >= at {
                *p += 1;
            }
        }
        partner.insert(at, usize::MAX);
        let right = partner.len();
        partner[at] = right;
        partner.push(at);
    }
    BrauerDiagram::from_partner(partner).expect("inserted pairs form a matching")
}

pub fn tuple_to_grid(x: &RadixTuple) -> GridPath {
    let xs = x.as_slice().iter().enumerate().map(|(k, &v)| v - (k as i64 + 1)).collect();
    GridPath { vertical_xs: xs }
}

pub fn grid_to_tuple(g: &GridPath) -> RadixTuple {
    RadixTuple(g.vertical_xs.iter().enumerate().map(|(k, &v)| v + k as i64 + 1).collect())
}

/// Rotation `(x,y) -> (x+y, y-x)`: `(0,1)` becomes `1`, `(1,0)` becomes `2`
/// and `(-1,0)` becomes `2'`.
pub fn grid_to_overhang(g: &GridPath) -> OverhangPath {
    let pts = g.points();
    let steps = pts
        .windows(2)
        .map(|w| match (w[1].0 - w[0].0, w[1].1 - w[0].1) {
            (0, 1) => Step::Up,
            (1, 0) => Step::Down,
            (-1, 0) => Step::OverhangUp,
            other => unreachable!("grid step {other:?}"),
        })
        .collect();
    OverhangPath::from_steps(steps).expect("rotated grid walk is an overhang path")
}

pub fn overhang_to_grid(p: &OverhangPath) -> Result<GridPath, TupleError> {
    // undo the rotation: (X,Y) -> ((X-Y)/2, (X+Y)/2)
    let xs = p
        .vertices()
        .windows(2)
        .filter(|w| w[1].0 - w[0].0 == 1 && w[1].1 - w[0].1 == 1)
        .map(|w| (w[0].0 - w[0].1) / 2)
        .collect();
    GridPath::new(xs).map_err(|_| TupleError::NotGrid(p.to_string()))
}

/// `J_n -> A_n -> O_n -> Y_n`.
pub fn simple_bijection(d: &BrauerDiagram) -> OverhangPath {
    grid_to_overhang(&tuple_to_grid(&kappa(d)))
}

pub fn simple_bijection_inverse(p: &OverhangPath) -> Result<BrauerDiagram, TupleError> {
    let g = overhang_to_grid(p)?;
    let x = RadixTuple::new(grid_to_tuple(&g).0)?;
    Ok(kappa_inverse(&x))
}

/// Every element of `A_n` in lexicographic order.
pub fn enumerate_tuples(n: usize) -> Vec<RadixTuple> {
    let mut out = vec![Vec::new()];
    for i in 1..=n as i64 {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (1..2 * i).map(move |v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out.into_iter().map(RadixTuple).collect()
}
