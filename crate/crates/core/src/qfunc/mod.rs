//! Exact rational functions of one variable `q` over `Q`.
//!
//! Values are kept as reduced fractions with a monic denominator, so two
//! equal functions always have identical representations.

mod eval;
mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use eval::{cyclotomic, CyclotomicValue, Pole, QPoint, QValue};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QFuncError {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a rational function")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduces `num / den`; fails when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Result<Self, QFuncError> {
        if den.is_zero() {
            return Err(QFuncError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().expect("nonzero").recip();
        Ok(Self { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Poly::from_ints(&[c]))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::x_pow(k as usize))
        } else {
            Self { num: Poly::one(), den: Poly::x_pow(k.unsigned_abs() as usize) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self, QFuncError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, QFuncError> {
        if rhs.is_zero() {
            return Err(QFuncError::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `point`, or the pole there.
    pub fn eval_at(&self, point: &QPoint) -> Result<QValue, Pole> {
        eval::eval_at(self, point)
    }

    /// Order of vanishing at `point`; negative for a pole.
    pub fn valuation_at(&self, point: &QPoint) -> i64 {
        eval::valuation_at(self, point)
    }
}

/// The balanced quantum integer `[h] = (q^h - q^-h) / (q - q^-1)`.
pub fn qint(h: i64) -> RatFunc {
    if h == 0 {
        return RatFunc::zero();
    }
    let m = h.unsigned_abs() as usize;
    // q^{-(m-1)} (1 + q^2 + .. + q^{2(m-1)})
    let mut coeffs = vec![BigRational::zero(); 2 * m - 1];
    for k in 0..m {
        coeffs[2 * k] = BigRational::one();
    }
    let sign = if h < 0 { -BigRational::one() } else { BigRational::one() };
    let num = Poly::from_coeffs(coeffs).scale(&sign);
    RatFunc { num, den: Poly::x_pow(m - 1) }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

/// Panics on a zero divisor; use [`RatFunc::checked_div`] to handle it.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

/// `num` alone when the denominator is 1, otherwise `(num) / (den)`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl FromStr for RatFunc {
    type Err = QFuncError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || QFuncError::Parse(s.to_string());
        let (num, den) = match s.split_once(" / ") {
            Some((a, b)) => (parse_poly(a).ok_or_else(err)?, parse_poly(b).ok_or_else(err)?),
            None => (parse_poly(s).ok_or_else(err)?, Poly::one()),
        };
        RatFunc::new(num, den)
    }
}

fn parse_poly(text: &str) -> Option<Poly> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(&t);
    if t.is_empty() {
        return None;
    }
    let mut acc = Poly::zero();
    let bytes = t.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigRational::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let end = (i..bytes.len()).find(|&j| bytes[j] == b'+' || bytes[j] == b'-').unwrap_or(bytes.len());
        let term = &t[i..end];
        i = end;
        let (coef, power) = match term.find('q') {
            None => (term, None),
            Some(pos) => (term[..pos].trim_end_matches('*'), Some(&term[pos + 1..])),
        };
        let c = if coef.is_empty() {
            BigRational::one()
        } else {
            match coef.split_once('/') {
                Some((a, b)) => {
                    let d: BigInt = b.parse().ok()?;
                    if d.is_zero() {
                        return None;
                    }
                    BigRational::new(a.parse().ok()?, d)
                }
                None => BigRational::from_integer(coef.parse().ok()?),
            }
        };
        let k = match power {
            None => 0,
            Some("") => 1,
            Some(p) => p.strip_prefix('^')?.parse().ok()?,
        };
        acc = &acc + &Poly::monomial(sign * c, k);
    }
    Some(acc)
}
