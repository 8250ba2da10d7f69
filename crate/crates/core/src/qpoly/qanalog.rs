//! q-integers, signed q-integer products, Gaussian binomials and
//! q-binomial (Gauss) inversion.

use std::fmt;

use num_bigint::BigInt;

use super::IntPolynomial;
use crate::error::{Error, Result};

/// `[m]_q = 1 + q + … + q^{m-1}`.
pub fn q_integer(m: usize) -> Result<IntPolynomial> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "q-integer [0]_q is not defined here".into(),
        ));
    }
    Ok(IntPolynomial::from_coeffs(vec![BigInt::from(1); m]))
}

/// `Π_{i=from..=to} [c·i]_q`, the empty product being 1.
pub fn q_partial_factorial(c: usize, from: usize, to: usize) -> IntPolynomial {
    (from..=to)
        .map(|i| q_integer(c * i).expect("c·i > 0"))
        .product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// Signs `ε_1 … ε_n`; factor `i` of a product is evaluated at `ε_i·q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern(pub Vec<Sign>);

impl SignPattern {
    pub fn all_plus(n: usize) -> Self {
        Self(vec![Sign::Plus; n])
    }

    pub fn all_minus(n: usize) -> Self {
        Self(vec![Sign::Minus; n])
    }

    /// Alternating signs, with factor 1 taking `first`.
    pub fn alternating(n: usize, first: Sign) -> Self {
        Self(
            (0..n)
                .map(|i| {
                    if i % 2 == 0 {
                        first
                    } else if first == Sign::Plus {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect(),
        )
    }

    /// All `2ⁿ` patterns, ordered by the bit mask with bit `i` set for a minus at factor `i+1`.
    pub fn all(n: usize) -> impl Iterator<Item = SignPattern> {
        (0u64..1 << n).map(move |mask| {
            SignPattern(
                (0..n)
                    .map(|i| Sign::from_parity(mask >> i & 1 == 1))
                    .collect(),
            )
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "\u{2212}",
            })?;
        }
        f.write_str(")")
    }
}

/// `Π_{i=1..n} [i·c]_{ε_i q}`.
pub fn q_product(c: usize, pattern: &SignPattern) -> IntPolynomial {
    pattern
        .0
        .iter()
        .enumerate()
        .map(|(i, sign)| {
            let factor = q_integer(c * (i + 1)).expect("c ≥ 1");
            match sign {
                Sign::Plus => factor,
                Sign::Minus => factor.substitute_neg(),
            }
        })
        .product()
}

/// Gaussian binomial `[n choose k]` in the variable `q^c`, built with the
/// q-Pascal rule `[n,k] = [n-1,k-1] + q^k·[n-1,k]`.
pub fn q_binomial(n: usize, k: usize, c: usize) -> Result<IntPolynomial> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "q-binomial with k = {k} > n = {n}"
        )));
    }
    Ok(q_binomial_row(n)[k].stretch(c))
}

/// Row `n` of the Gaussian triangle in base `q`.
fn q_binomial_row(n: usize) -> Vec<IntPolynomial> {
    let mut row = vec![IntPolynomial::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let left = if k > 0 {
                row[k - 1].clone()
            } else {
                IntPolynomial::zero()
            };
            let right = if k < m {
                row[k].shift(k)
            } else {
                IntPolynomial::zero()
            };
            next.push(left + right);
        }
        row = next;
    }
    row
}

/// Binomial transform `f_m = Σ_k [m choose k]_{q^c}·g_k`, for `m = 0..len`.
pub fn gauss_forward(g: &[IntPolynomial], c: usize) -> Vec<IntPolynomial> {
    (0..g.len())
        .map(|m| {
            let row = q_binomial_row(m);
            (0..=m).map(|k| &row[k].stretch(c) * &g[k]).sum()
        })
        .collect()
}

/// Inverse of [`gauss_forward`]:
/// `g_m = Σ_k [m choose k]_{q^c}·(-1)^{m-k}·q^{c·C(m-k,2)}·f_k`.
pub fn gauss_inversion(f: &[IntPolynomial], c: usize) -> Vec<IntPolynomial> {
    (0..f.len())
        .map(|m| {
            let row = q_binomial_row(m);
            (0..=m)
                .map(|k| {
                    let j = m - k;
                    let term = (&row[k].stretch(c) * &f[k]).shift(c * j * j.saturating_sub(1) / 2);
                    if j % 2 == 1 {
                        -term
                    } else {
                        term
                    }
                })
                .sum()
        })
        .collect()
}

/// One summand `sign·core·((1-q)/(1+q))^exponent` of a rational expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTerm {
    pub negative: bool,
    pub core: IntPolynomial,
    pub exponent: u32,
}

impl RationalTerm {
    pub fn new(negative: bool, core: IntPolynomial, exponent: u32) -> Self {
        Self {
            negative,
            core,
            exponent,
        }
    }
}

/// `Σ sign·core·(1-q)^e·(1+q)^{E-e}`, i.e. the terms multiplied through by `(1+q)^E`.
pub fn cleared_sum(terms: &[RationalTerm], clearing: u32) -> Result<IntPolynomial> {
    let one_minus = IntPolynomial::from_i64s(&[1, -1]);
    let one_plus = IntPolynomial::from_i64s(&[1, 1]);
    terms
        .iter()
        .map(|t| {
            if t.exponent > clearing {
                return Err(Error::InvalidArgument(format!(
                    "term exponent {} exceeds clearing exponent {clearing}",
                    t.exponent
                )));
            }
            let v = &(&t.core * &one_minus.pow(t.exponent)) * &one_plus.pow(clearing - t.exponent);
            Ok(if t.negative { -v } else { v })
        })
        .sum()
}

/// Decides `lhs = Σ sign·core·((1-q)/(1+q))^e` by comparing
/// `lhs·(1+q)^E` with the cleared sum.
pub fn rational_check(lhs: &IntPolynomial, terms: &[RationalTerm], clearing: u32) -> Result<bool> {
    let rhs = cleared_sum(terms, clearing)?;
    let one_plus = IntPolynomial::from_i64s(&[1, 1]);
    Ok(lhs * &one_plus.pow(clearing) == rhs)
}
