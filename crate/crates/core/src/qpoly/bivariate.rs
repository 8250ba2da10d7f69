use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

/// Sparse polynomial in `t` and `q`, keyed by `(t-exponent, q-exponent)`.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariateDistribution {
    entries: BTreeMap<(u64, u64), BigInt>,
}

/// A monomial whose coefficient differs from that of its transpose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymmetryWitness {
    pub t_exp: u64,
    pub q_exp: u64,
    /// Coefficient of `t^a q^b`.
    pub coeff: String,
    /// Coefficient of `t^b q^a`.
    pub transposed_coeff: String,
}

impl BivariateDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn accumulate(&mut self, t_exp: u64, q_exp: u64, coeff: impl Into<BigInt>) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        let slot = self.entries.entry((t_exp, q_exp)).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.entries.remove(&(t_exp, q_exp));
        }
    }

    pub fn merge(mut self, other: BivariateDistribution) -> Self {
        for ((t, q), c) in other.entries {
            self.accumulate(t, q, c);
        }
        self
    }

    pub fn coeff(&self, t_exp: u64, q_exp: u64) -> BigInt {
        self.entries
            .get(&(t_exp, q_exp))
            .cloned()
            .unwrap_or_default()
    }

    pub fn transpose(&self) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|(&(t, q), c)| ((q, t), c.clone()))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry_witness().is_none()
    }

    /// The smallest monomial `t^a q^b` (in `(a, b)` order) whose coefficient
    /// differs from that of `t^b q^a`.
    pub fn asymmetry_witness(&self) -> Option<AsymmetryWitness> {
        let mut keys: Vec<(u64, u64)> = self.entries.keys().copied().collect();
        keys.extend(self.entries.keys().map(|&(t, q)| (q, t)));
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().find_map(|(a, b)| {
            let here = self.coeff(a, b);
            let there = self.coeff(b, a);
            (here != there).then(|| AsymmetryWitness {
                t_exp: a,
                q_exp: b,
                coeff: here.to_string(),
                transposed_coeff: there.to_string(),
            })
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u64, u64), &BigInt)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }
}

/// JSON form: `[[t_exp, q_exp, "coefficient"], …]`.
impl Serialize for BivariateDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (&(t, q), c) in &self.entries {
            seq.serialize_element(&(t, q, c.to_string()))?;
        }
        seq.end()
    }
}
