//! Signed Mahonian identities, the `(inv~, fmaj)` symmetry conjecture, and
//! the suite runner that checks everything over a grid of `(c, n)`.
//!
//! Each check enumerates the group for the left side and evaluates a closed
//! form for the right side.

mod suite;

use std::time::Instant;

use serde_json::json;

use crate::colored::{ColoredPermutation, ColoredSequence, GroupParams};
use crate::enumerate::{checked_order, par_fold};
use crate::error::Result;
use crate::qpoly::{
    cleared_sum, q_integer, q_partial_factorial, q_product, BivariateDistribution, IntPolynomial,
    RationalTerm, Sign, SignPattern, Tally,
};
use crate::report::{Claim, IdentityId, IdentityReport, Labeled, ReportValue};
use crate::statistics::{fmaj, inv, inv_tilde, length};

pub use suite::{run_check, run_suite, SkippedCell, SuiteConfig, SuiteRun};

/// A statistic usable inside a parallel fold.
pub type Statistic = fn(&ColoredPermutation) -> u64;

/// `Σ sign(π) q^{weight(π)}` over `G_{c,n}`, where `negative(π)` selects a minus sign.
pub fn signed_generating_function(
    c: u32,
    n: u32,
    budget: u64,
    weight: Statistic,
    negative: fn(&ColoredPermutation) -> bool,
) -> Result<IntPolynomial> {
    let tally = par_fold(
        GroupParams::new(c, n)?,
        budget,
        Tally::new,
        |acc, p| acc.add(weight(p) as usize, if negative(p) { -1 } else { 1 }),
        Tally::merge,
    )?;
    Ok(tally.to_polynomial())
}

/// Joint distribution `Σ t^{first(π)} q^{second(π)}` over `G_{c,n}`.
pub fn joint_distribution(
    c: u32,
    n: u32,
    budget: u64,
    first: Statistic,
    second: Statistic,
) -> Result<BivariateDistribution> {
    par_fold(
        GroupParams::new(c, n)?,
        budget,
        BivariateDistribution::new,
        |acc, p| acc.accumulate(first(p), second(p), 1),
        BivariateDistribution::merge,
    )
}

fn fmaj_stat(p: &ColoredPermutation) -> u64 {
    fmaj(p)
}

fn inv_tilde_stat(p: &ColoredPermutation) -> u64 {
    inv_tilde(p)
}

fn odd_length(p: &ColoredPermutation) -> bool {
    length(p) % 2 == 1
}

fn odd_underlying_length(p: &ColoredPermutation) -> bool {
    inv(&p.underlying()) % 2 == 1
}

fn odd_inv_tilde(p: &ColoredPermutation) -> bool {
    inv_tilde(p) % 2 == 1
}

fn odd_fmaj(p: &ColoredPermutation) -> bool {
    fmaj(p) % 2 == 1
}

fn never(_: &ColoredPermutation) -> bool {
    false
}

/// `[c]_q [2c]_{-q} [3c]_q …`, factor `i` taking `-q` for even `i`.
pub fn biagioli_caselli_product(c: u32, n: u32) -> IntPolynomial {
    q_product(
        c as usize,
        &SignPattern::alternating(n as usize, Sign::Plus),
    )
}

/// `[c]_{-q} [2c]_q [3c]_{-q} …`, factor `i` taking `-q` for odd `i`.
pub fn even_signed_product(c: u32, n: u32) -> IntPolynomial {
    q_product(
        c as usize,
        &SignPattern::alternating(n as usize, Sign::Minus),
    )
}

/// The odd-`c` product for `Σ (-1)^{inv~} q^fmaj`: the alternating product
/// starting with `+` for even `n`, and
/// `[c]_{-q} · [c]_q [2c]_{-q} … [(n-1)c]_{-q} · [n]_{q^c}` for odd `n`.
pub fn odd_inv_tilde_product(c: u32, n: u32) -> IntPolynomial {
    if n.is_multiple_of(2) {
        return biagioli_caselli_product(c, n);
    }
    let c = c as usize;
    let head = q_integer(c).expect("c ≥ 1").substitute_neg();
    let middle = q_product(c, &SignPattern::alternating(n as usize - 1, Sign::Plus));
    let tail = q_integer(n as usize).expect("n odd").stretch(c);
    &(&head * &middle) * &tail
}

fn finish(start: Instant, size: u64, report: IdentityReport) -> IdentityReport {
    IdentityReport {
        elapsed: start.elapsed(),
        ..report.with_group_size(size)
    }
}

/// `Σ q^fmaj = Π_{i=1..n} [ci]_q`.
pub fn verify_fmaj_product(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let lhs = signed_generating_function(c, n, budget, fmaj_stat, never)?;
    let rhs = q_partial_factorial(c as usize, 1, n as usize);
    Ok(finish(
        start,
        size,
        IdentityReport::new(
            IdentityId::FmajProduct,
            c,
            n,
            ReportValue::Poly(lhs),
            ReportValue::Poly(rhs),
        ),
    ))
}

/// `Σ (-1)^{L(|π|)} q^fmaj = [c]_q [2c]_{-q} [3c]_q …`.
pub fn verify_biagioli_caselli(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let lhs = signed_generating_function(c, n, budget, fmaj_stat, odd_underlying_length)?;
    Ok(finish(
        start,
        size,
        IdentityReport::new(
            IdentityId::BiagioliCaselli,
            c,
            n,
            ReportValue::Poly(lhs),
            ReportValue::Poly(biagioli_caselli_product(c, n)),
        ),
    ))
}

/// For even `c`: `Σ (-1)^L q^fmaj` equals `[c]_{-q} [2c]_q …` and also
/// `((1-q)/(1+q))^{⌊(n+1)/2⌋} Π [ci]_q`, the latter compared after clearing.
pub fn verify_signed_mahonian_even(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    IdentityId::SignedEven.require(c)?;
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let signed = signed_generating_function(c, n, budget, fmaj_stat, odd_length)?;
    let clearing = n.div_ceil(2);
    let one_plus = IntPolynomial::from_i64s(&[1, 1]).pow(clearing);
    let rational = [RationalTerm::new(
        false,
        q_partial_factorial(c as usize, 1, n as usize),
        clearing,
    )];
    let lhs = ReportValue::Polys(vec![
        Labeled::new("product", signed.clone()),
        Labeled::new("rational cleared", &signed * &one_plus),
    ]);
    let rhs = ReportValue::Polys(vec![
        Labeled::new("product", even_signed_product(c, n)),
        Labeled::new("rational cleared", cleared_sum(&rational, clearing)?),
    ]);
    Ok(finish(
        start,
        size,
        IdentityReport::new(IdentityId::SignedEven, c, n, lhs, rhs)
            .with_extra(format!("rational form multiplied by (1+q)^{clearing}"))
            .with_detail(signed.to_string()),
    ))
}

/// For even `c`: `Σ (-1)^{inv~} q^fmaj` and `Σ (-1)^fmaj q^{inv~}` both equal `Π [ci]_{-q}`.
pub fn verify_invtilde_even(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    IdentityId::InvTildeEven.require(c)?;
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let target = q_product(c as usize, &SignPattern::all_minus(n as usize));
    let lhs = ReportValue::Polys(vec![
        Labeled::new(
            "sign inv~, weight fmaj",
            signed_generating_function(c, n, budget, fmaj_stat, odd_inv_tilde)?,
        ),
        Labeled::new(
            "sign fmaj, weight inv~",
            signed_generating_function(c, n, budget, inv_tilde_stat, odd_fmaj)?,
        ),
    ]);
    let rhs = ReportValue::Polys(vec![
        Labeled::new("sign inv~, weight fmaj", target.clone()),
        Labeled::new("sign fmaj, weight inv~", target),
    ]);
    Ok(finish(
        start,
        size,
        IdentityReport::new(IdentityId::InvTildeEven, c, n, lhs, rhs),
    ))
}

/// For odd `c`: `Σ (-1)^{inv~} q^fmaj` against [`odd_inv_tilde_product`].
pub fn verify_invtilde_odd(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    IdentityId::InvTildeOdd.require(c)?;
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let lhs = signed_generating_function(c, n, budget, fmaj_stat, odd_inv_tilde)?;
    Ok(finish(
        start,
        size,
        IdentityReport::new(
            IdentityId::InvTildeOdd,
            c,
            n,
            ReportValue::Poly(lhs),
            ReportValue::Poly(odd_inv_tilde_product(c, n)),
        )
        .with_extra(if n.is_multiple_of(2) {
            "n even"
        } else {
            "n odd"
        }),
    ))
}

/// Whether transpose symmetry of `(inv~, fmaj)` has been confirmed at `(c, n)`.
pub fn conjecture_claim(c: u32, n: u32) -> Claim {
    let confirmed = c == 1 || n <= 1 || (n == 2 && c <= 7) || (n == 3 && (c == 3 || c == 4));
    if confirmed {
        Claim::Claimed
    } else {
        Claim::Exploratory
    }
}

/// Transpose symmetry of the joint distribution of `(inv~, fmaj)`.
pub fn check_conjecture(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let joint = joint_distribution(c, n, budget, inv_tilde_stat, fmaj_stat)?;
    let witness = joint.asymmetry_witness();
    let transposed = joint.transpose();
    let mut report = IdentityReport::new(
        IdentityId::Conjecture,
        c,
        n,
        ReportValue::Bivariate(joint),
        ReportValue::Bivariate(transposed),
    )
    .with_claim(conjecture_claim(c, n));
    if let Some(w) = witness {
        report = report.with_detail(json!(w).to_string());
    }
    Ok(finish(start, size, report))
}

/// Whether the factorial-form search at `(c, n)` belongs to the claimed range.
pub fn factorial_form_claim(c: u32, n: u32) -> Claim {
    if n <= 1 {
        Claim::Degenerate
    } else if (3..=7).contains(&c) && n <= 3 {
        Claim::Claimed
    } else {
        Claim::Exploratory
    }
}

/// For odd `c`, every sign pattern `ε` with `Π [ic]_{ε_i q} = Σ (-1)^L q^fmaj`.
pub fn matching_sign_patterns(
    c: u32,
    n: u32,
    budget: u64,
) -> Result<(IntPolynomial, Vec<SignPattern>)> {
    IdentityId::FactorialForm.require(c)?;
    let signed = signed_generating_function(c, n, budget, fmaj_stat, odd_length)?;
    let matches = SignPattern::all(n as usize)
        .filter(|p| q_product(c as usize, p) == signed)
        .collect();
    Ok((signed, matches))
}

/// Passes when no sign pattern matches.
pub fn check_factorial_form(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let (signed, matches) = matching_sign_patterns(c, n, budget)?;
    let lhs = ReportValue::Patterns(matches.iter().map(ToString::to_string).collect());
    Ok(finish(
        start,
        size,
        IdentityReport::new(
            IdentityId::FactorialForm,
            c,
            n,
            lhs,
            ReportValue::Patterns(Vec::new()),
        )
        .with_claim(factorial_form_claim(c, n))
        .with_extra(format!("{} patterns tried", 1u64 << n))
        .with_detail(signed.to_string()),
    ))
}
