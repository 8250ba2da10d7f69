use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// Dense univariate polynomial in `q` with exact integer coefficients.
///
/// Coefficient `i` multiplies `q^i`. Trailing zeros are always trimmed, so
/// structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(value: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![value.into()])
    }

    /// `coeff·q^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: usize) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = coeff;
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `P(-q)`.
    pub fn substitute_neg(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self { coeffs }
    }

    /// `P(q^factor)`.
    pub fn stretch(&self, factor: usize) -> Self {
        assert!(factor > 0, "stretch factor must be positive");
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut coeffs = vec![BigInt::zero(); deg * factor + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * factor] = c.clone();
        }
        Self { coeffs }
    }

    /// `q^exp·P(q)`.
    pub fn shift(&self, exp: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }
}

impl From<i64> for IntPolynomial {
    fn from(value: i64) -> Self {
        Self::constant(value)
    }
}

impl Add<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<IntPolynomial> for &IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl Sum for IntPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl Product for IntPolynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

const MINUS: &str = "\u{2212}";

/// Sparse text form, ascending exponent: `1 + q^2 − q^8 − q^10`, `3*q − 2*q^4`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (exp, coeff)) in self.terms().enumerate() {
            let negative = coeff.is_negative();
            match (k, negative) {
                (0, false) => {}
                (0, true) => f.write_str(MINUS)?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => write!(f, " {MINUS} ")?,
            }
            let magnitude = coeff.abs();
            let unit = magnitude.is_one();
            match exp {
                0 => write!(f, "{magnitude}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{magnitude}*q")?,
                _ if unit => write!(f, "q^{exp}")?,
                _ => write!(f, "{magnitude}*q^{exp}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: `[[exponent, "coefficient"], …]` over nonzero terms.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let count = self.terms().count();
        let mut seq = serializer.serialize_seq(Some(count))?;
        for (exp, coeff) in self.terms() {
            seq.serialize_element(&(exp, coeff.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms: Vec<(usize, String)> = Vec::deserialize(deserializer)?;
        let mut p = IntPolynomial::zero();
        for (exp, text) in terms {
            let coeff: BigInt = text.parse().map_err(de::Error::custom)?;
            p += &IntPolynomial::monomial(coeff, exp);
        }
        Ok(p)
    }
}

/// Dense exact counter used inside enumeration loops.
///
/// Counts are fixed-width; an overflowing update panics rather than wraps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    counts: Vec<i64>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, exp: usize, delta: i64) {
        if exp >= self.counts.len() {
            self.counts.resize(exp + 1, 0);
        }
        self.counts[exp] = self.counts[exp]
            .checked_add(delta)
            .expect("coefficient overflow in tally");
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        for (exp, &v) in other.counts.iter().enumerate() {
            self.add(exp, v);
        }
        self
    }

    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.counts.iter().map(|&c| BigInt::from(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[0, 0, 3]).degree(), Some(2));
        assert_eq!(&p(&[1, 1]) - &p(&[1, 1]), IntPolynomial::zero());
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[1, -1]);
        assert_eq!(&a * &b, p(&[1, 0, -1]));
        assert_eq!(&a + &b, p(&[2]));
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(a.pow(0), IntPolynomial::one());
        assert_eq!(a.shift(2), p(&[0, 0, 1, 1]));
        assert_eq!(a.stretch(3), p(&[1, 0, 0, 1]));
        assert_eq!(a.eval(&BigInt::from(2)), BigInt::from(3));
        assert_eq!(p(&[1, 2, 3]).value_at_one(), BigInt::from(6));
    }

    #[test]
    fn text_form() {
        assert_eq!(
            p(&[1, 0, 1, 0, 0, 0, 0, 0, -1, 0, -1]).to_string(),
            "1 + q^2 − q^8 − q^10"
        );
        assert_eq!(p(&[0, -3, 0, 2]).to_string(), "−3*q + 2*q^3");
        assert_eq!(p(&[-1, 1]).to_string(), "−1 + q");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(p(&[0, 0, 5]).to_string(), "5*q^2");
    }

    #[test]
    fn json_form() {
        let a = p(&[1, 0, -12]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"[[0,"1"],[2,"-12"]]"#);
        let back: IntPolynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(serde_json::to_string(&IntPolynomial::zero()).unwrap(), "[]");
    }

    #[test]
    fn huge_coefficients_stay_exact() {
        let big = p(&[i64::MAX, i64::MAX]);
        let sq = &big * &big;
        let m = BigInt::from(i64::MAX);
        assert_eq!(sq.coeff(1), &m * &m * 2);
    }

    #[test]
    fn tally_merges() {
        let mut a = Tally::new();
        a.add(3, 2);
        let mut b = Tally::new();
        b.add(0, -1);
        b.add(3, -2);
        assert_eq!(a.merge(b).to_polynomial(), p(&[-1]));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn tally_overflow_aborts() {
        let mut a = Tally::new();
        a.add(0, i64::MAX);
        a.add(0, 1);
    }
}
