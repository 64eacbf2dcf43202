//! Specialisation of rational functions at rational points and at primitive
//! roots of unity.

use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{Poly, RatFunc};

/// A value of `q`: a rational number or `exp(2πi/m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QPoint {
    Rational(BigRational),
    /// A primitive root of unity of the given order.
    RootOfUnity(u32),
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QPoint::Rational(a) => write!(f, "q = {a}"),
            QPoint::RootOfUnity(m) => write!(f, "q = exp(2πi/{m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pole of order {order} at {point}")]
pub struct Pole {
    pub point: QPoint,
    pub order: u64,
}

/// An element of `Q[x]/Φ_m`, reduced to degree below `φ(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicValue {
    pub order: u32,
    pub residue: Poly,
}

impl CyclotomicValue {
    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// Numerical value as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let theta = std::f64::consts::TAU / f64::from(self.order);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.residue.coeffs().iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * (theta * k as f64).cos();
            im += c * (theta * k as f64).sin();
        }
        (re, im)
    }
}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod Φ_{}", self.residue, self.order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QValue {
    Rational(BigRational),
    Cyclotomic(CyclotomicValue),
}

impl QValue {
    pub fn is_zero(&self) -> bool {
        match self {
            QValue::Rational(a) => a.is_zero(),
            QValue::Cyclotomic(c) => c.is_zero(),
        }
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Rational(a) => write!(f, "{a}"),
            QValue::Cyclotomic(c) => write!(f, "{c}"),
        }
    }
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic(m: u32) -> Poly {
    assert!(m > 0, "cyclotomic order must be positive");
    let m = m as usize;
    let mut p = &Poly::x_pow(m) - &Poly::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = p.div_rem(&cyclotomic(d as u32)).0;
    }
    p
}

/// How many times `factor` divides `p`; `p` must be nonzero.
fn multiplicity(p: &Poly, factor: &Poly) -> i64 {
    let mut p = p.clone();
    let mut k = 0;
    loop {
        let (quo, rem) = p.div_rem(factor);
        if !rem.is_zero() {
            return k;
        }
        p = quo;
        k += 1;
    }
}

fn linear_factor(a: &BigRational) -> Poly {
    Poly::from_coeffs(vec![-a.clone(), BigRational::from_integer(1.into())])
}

fn point_factor(point: &QPoint) -> Poly {
    match point {
        QPoint::Rational(a) => linear_factor(a),
        QPoint::RootOfUnity(m) => cyclotomic(*m),
    }
}

pub(super) fn valuation_at(f: &RatFunc, point: &QPoint) -> i64 {
    assert!(!f.is_zero(), "valuation of the zero function is infinite");
    let factor = point_factor(point);
    multiplicity(f.num(), &factor) - multiplicity(f.den(), &factor)
}

/// Inverse of `a` modulo the irreducible `m`, by the extended Euclidean
/// algorithm. `a` must be nonzero modulo `m`.
fn inverse_mod(a: &Poly, m: &Poly) -> Poly {
    let (mut r0, mut r1) = (m.clone(), a.div_rem(m).1);
    let (mut s0, mut s1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (quo, rem) = r0.div_rem(&r1);
        let s2 = &s0 - &(&quo * &s1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant since gcd(a, m) = 1
    let c = r0.coeff(0).recip();
    s0.scale(&c).div_rem(m).1
}

pub(super) fn eval_at(f: &RatFunc, point: &QPoint) -> Result<QValue, Pole> {
    if f.is_zero() {
        return Ok(match point {
            QPoint::Rational(_) => QValue::Rational(BigRational::zero()),
            QPoint::RootOfUnity(m) => {
                QValue::Cyclotomic(CyclotomicValue { order: *m, residue: Poly::zero() })
            }
        });
    }
    let v = valuation_at(f, point);
    if v < 0 {
        return Err(Pole { point: point.clone(), order: v.unsigned_abs() });
    }
    match point {
        QPoint::Rational(a) => Ok(QValue::Rational(f.num().eval(a) / f.den().eval(a))),
        QPoint::RootOfUnity(m) => {
            let phi = cyclotomic(*m);
            let inv = inverse_mod(f.den(), &phi);
            let residue = (&f.num().div_rem(&phi).1 * &inv).div_rem(&phi).1;
            Ok(QValue::Cyclotomic(CyclotomicValue { order: *m, residue }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfunc::qint;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn quantum_integers_at_points() {
        let two = QPoint::Rational(BigRational::from_integer(2.into()));
        let got = qint(3).eval_at(&two).unwrap();
        assert_eq!(got, QValue::Rational(BigRational::new(21.into(), 4.into())));

        let i = QPoint::RootOfUnity(4);
        assert!(qint(2).eval_at(&i).unwrap().is_zero());
        let inv = qint(2).inv().unwrap();
        assert_eq!(inv.valuation_at(&i), -1);
        assert_eq!(inv.eval_at(&i), Err(Pole { point: i.clone(), order: 1 }));

        for l in 2..=6u32 {
            let root = QPoint::RootOfUnity(2 * l);
            assert_eq!(qint(l as i64).valuation_at(&root), 1, "l = {l}");
            for h in 1..l as i64 {
                assert_eq!(qint(h).valuation_at(&root), 0);
            }
        }
    }

    #[test]
    fn cyclotomic_values() {
        // [3] = q^2 + 1 + q^-2 at q = i is -1
        let v = qint(3).eval_at(&QPoint::RootOfUnity(4)).unwrap();
        let QValue::Cyclotomic(c) = v else { panic!("expected cyclotomic value") };
        assert_eq!(c.residue, Poly::from_ints(&[-1]));
        let (re, im) = c.to_complex();
        assert!((re + 1.0).abs() < 1e-12 && im.abs() < 1e-12);

        // 1/(q+2) at exp(2πi/6), checked numerically
        let f = RatFunc::new(Poly::one(), Poly::from_ints(&[2, 1])).unwrap();
        let QValue::Cyclotomic(c) = f.eval_at(&QPoint::RootOfUnity(6)).unwrap() else {
            panic!("expected cyclotomic value")
        };
        let (re, im) = c.to_complex();
        let t = std::f64::consts::TAU / 6.0;
        let (dr, di) = (t.cos() + 2.0, t.sin());
        let norm = dr * dr + di * di;
        assert!((re - dr / norm).abs() < 1e-12 && (im + di / norm).abs() < 1e-12);
    }
}
