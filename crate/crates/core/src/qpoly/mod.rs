//! Exact polynomial arithmetic in `q` and the q-analog toolkit built on it.
//!
//! Everything here is division-free: q-binomials come from the Pascal rule,
//! and identities involving powers of `(1-q)/(1+q)` are compared after
//! multiplying through by a power of `(1+q)`.

mod bivariate;
mod poly;
mod qanalog;

pub use bivariate::{AsymmetryWitness, BivariateDistribution};
pub use poly::{IntPolynomial, Tally};
pub use qanalog::{
    cleared_sum, gauss_forward, gauss_inversion, q_binomial, q_integer, q_partial_factorial,
    q_product, rational_check, RationalTerm, Sign, SignPattern,
};
