//! Colored derangements: the derangement part `dp`, the tilde relabeling,
//! dp-fibers, shuffles, and the derangement generating polynomials.
//!
//! A position `i` is fixed when it holds the uncolored letter `i`. The
//! derangement part keeps the non-fixed letters in order and renumbers their
//! values `1..=k` by rank, keeping colors.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::colored::{
    ColoredLetter, ColoredPermutation, ColoredSequence, ColoredWord, GroupParams,
};
use crate::enumerate::{checked_order, enumerate_group, par_fold};
use crate::error::{Error, Result};
use crate::qpoly::{
    cleared_sum, q_binomial, q_partial_factorial, IntPolynomial, RationalTerm, Tally,
};
use crate::report::{IdentityId, IdentityReport, ReportValue};
use crate::statistics::{col, des_set, fmaj, length, maj, subcedants_excedants};

/// The non-fixed letters of `perm`, renumbered to `1..=k` by value rank.
pub fn derangement_part(perm: &ColoredPermutation) -> ColoredPermutation {
    let moved: Vec<ColoredLetter> = perm
        .letters()
        .iter()
        .enumerate()
        .filter(|(i, l)| l.color != 0 || l.value as usize != i + 1)
        .map(|(_, &l)| l)
        .collect();
    let mut rank = vec![0u32; perm.degree() as usize + 1];
    let mut values: Vec<u32> = moved.iter().map(|l| l.value).collect();
    values.sort_unstable();
    for (i, v) in values.into_iter().enumerate() {
        rank[v as usize] = i as u32 + 1;
    }
    let letters = moved
        .into_iter()
        .map(|l| ColoredLetter::new(rank[l.value as usize], l.color))
        .collect();
    ColoredPermutation::from_parts_unchecked(perm.colors(), letters)
}

/// Relabels a colored permutation of degree `k ≤ ambient_n`:
///
/// - the `i`-th smallest subcedant (by value, ignoring color) becomes `i`, keeping its color;
/// - the `i`-th smallest fixed point becomes `s + i`;
/// - the `i`-th largest excedant becomes `ambient_n - i + 1`.
///
/// Descent set and color sum are unchanged.
pub fn tilde(perm: &ColoredPermutation, ambient_n: u32) -> Result<ColoredWord> {
    if perm.degree() > ambient_n {
        return Err(Error::InvalidArgument(format!(
            "degree {} exceeds ambient size {ambient_n}",
            perm.degree()
        )));
    }
    let letters = perm.letters();
    let split = subcedants_excedants(perm);
    let value_at = |pos: &usize| letters[pos - 1].value;
    let mut out = letters.to_vec();

    let mut subcedants = split.subcedants.clone();
    subcedants.sort_by_key(value_at);
    for (i, &pos) in subcedants.iter().enumerate() {
        out[pos - 1].value = i as u32 + 1;
    }
    let s = subcedants.len() as u32;
    for (i, &pos) in split.fixed.iter().enumerate() {
        out[pos - 1].value = s + i as u32 + 1;
    }
    let mut excedants = split.excedants.clone();
    excedants.sort_by_key(|p| std::cmp::Reverse(value_at(p)));
    for (i, &pos) in excedants.iter().enumerate() {
        out[pos - 1].value = ambient_n - i as u32;
    }
    Ok(ColoredWord::from_parts_unchecked(
        perm.colors(),
        ambient_n,
        out,
    ))
}

/// `φ(π) = tilde(π, n)` for `π ∈ G_{c,n}`.
pub fn phi(perm: &ColoredPermutation) -> ColoredWord {
    tilde(perm, perm.degree()).expect("degree equals ambient size")
}

/// The increasing uncolored word `(s(α)+1) … (n-e(α))` that `φ` shuffles into `tilde(α, n)`.
pub fn gamma(alpha: &ColoredPermutation, n: u32) -> ColoredWord {
    let split = subcedants_excedants(alpha);
    let first = split.subcedant_count() as u32 + 1;
    let last = n - split.excedant_count() as u32;
    let letters = (first..=last).map(ColoredLetter::plain).collect();
    ColoredWord::from_parts_unchecked(alpha.colors(), n, letters)
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All `π ∈ G_{c,n}` with `dp(π) = α`, one per choice of the `k` moved values.
pub fn fiber(alpha: &ColoredPermutation, n: u32) -> Result<Vec<ColoredPermutation>> {
    if !alpha.is_derangement() {
        return Err(Error::InvalidArgument(format!(
            "{alpha} is not a derangement"
        )));
    }
    let k = alpha.degree();
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "degree {k} exceeds n = {n}"
        )));
    }
    let mut out = Vec::new();
    for_each_combination(n as usize, k as usize, |moved| {
        let mut letters: Vec<ColoredLetter> = (1..=n).map(ColoredLetter::plain).collect();
        for (&pos, l) in moved.iter().zip(alpha.letters()) {
            letters[pos] = ColoredLetter::new(moved[l.value as usize - 1] as u32 + 1, l.color);
        }
        out.push(ColoredPermutation::from_parts_unchecked(
            alpha.colors(),
            letters,
        ));
    });
    Ok(out)
}

/// Calls `f` with every interleaving of `a` and `b`, reusing one buffer.
pub(crate) fn for_each_shuffle(
    a: &[ColoredLetter],
    b: &[ColoredLetter],
    mut f: impl FnMut(&[ColoredLetter]),
) {
    let total = a.len() + b.len();
    let mut buf = vec![ColoredLetter::plain(0); total];
    let mut take_a = vec![false; total];
    for_each_combination(total, a.len(), |positions| {
        take_a.iter_mut().for_each(|x| *x = false);
        for &p in positions {
            take_a[p] = true;
        }
        let (mut ia, mut ib) = (0, 0);
        for (slot, &from_a) in buf.iter_mut().zip(&take_a) {
            if from_a {
                *slot = a[ia];
                ia += 1;
            } else {
                *slot = b[ib];
                ib += 1;
            }
        }
        f(&buf);
    });
}

/// All interleavings of `tau` and `sigma` that keep both as subsequences.
pub fn shuffles(tau: &ColoredWord, sigma: &ColoredWord) -> Result<Vec<ColoredWord>> {
    if tau.colors() != sigma.colors() {
        return Err(Error::InvalidArgument(
            "words use different numbers of colors".into(),
        ));
    }
    let values: HashSet<u32> = tau.letters().iter().map(|l| l.value).collect();
    if sigma.letters().iter().any(|l| values.contains(&l.value)) {
        return Err(Error::OverlappingWords);
    }
    let ambient = tau.ambient_n().max(sigma.ambient_n());
    let mut out = Vec::new();
    for_each_shuffle(tau.letters(), sigma.letters(), |w| {
        out.push(ColoredWord::from_parts_unchecked(
            tau.colors(),
            ambient,
            w.to_vec(),
        ));
    });
    Ok(out)
}

/// Exact counts of derangements split by parity of the length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerangementCounts {
    #[serde(serialize_with = "as_string")]
    pub total: BigInt,
    #[serde(serialize_with = "as_string")]
    pub even: BigInt,
    #[serde(serialize_with = "as_string")]
    pub odd: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Generating polynomials of `fmaj` over the colored derangements of `G_{c,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerangementPolynomials {
    pub c: u32,
    pub n: u32,
    /// `Σ q^fmaj`.
    pub plain: IntPolynomial,
    /// `Σ (-1)^L q^fmaj`.
    pub signed: IntPolynomial,
    /// `Σ q^fmaj` over derangements of even length.
    pub even_part: IntPolynomial,
    pub counts: DerangementCounts,
}

#[derive(Default)]
struct DerangementTally {
    plain: Tally,
    signed: Tally,
    even: Tally,
    total: u64,
    even_count: u64,
}

impl DerangementTally {
    fn merge(mut self, other: Self) -> Self {
        self.plain = self.plain.merge(other.plain);
        self.signed = self.signed.merge(other.signed);
        self.even = self.even.merge(other.even);
        self.total += other.total;
        self.even_count += other.even_count;
        self
    }
}

/// One enumeration pass over `G_{c,n}` collecting every derangement polynomial.
pub fn derangement_polynomials(c: u32, n: u32, budget: u64) -> Result<DerangementPolynomials> {
    let params = GroupParams::new(c, n)?;
    let tally = par_fold(
        params,
        budget,
        DerangementTally::default,
        |acc, p| {
            if !p.is_derangement() {
                return;
            }
            let f = fmaj(p) as usize;
            let even = length(p) % 2 == 0;
            acc.plain.add(f, 1);
            acc.signed.add(f, if even { 1 } else { -1 });
            acc.total += 1;
            if even {
                acc.even.add(f, 1);
                acc.even_count += 1;
            }
        },
        DerangementTally::merge,
    )?;
    Ok(DerangementPolynomials {
        c,
        n,
        plain: tally.plain.to_polynomial(),
        signed: tally.signed.to_polynomial(),
        even_part: tally.even.to_polynomial(),
        counts: DerangementCounts {
            total: tally.total.into(),
            even: tally.even_count.into(),
            odd: (tally.total - tally.even_count).into(),
        },
    })
}

/// `Σ_{π ∈ D_n} q^fmaj(π)` by enumeration.
pub fn d_poly_enumerated(c: u32, n: u32, budget: u64) -> Result<IntPolynomial> {
    Ok(derangement_polynomials(c, n, budget)?.plain)
}

/// `Σ_{π ∈ D_n} (-1)^L(π) q^fmaj(π)` by enumeration.
pub fn d_signed_enumerated(c: u32, n: u32, budget: u64) -> Result<IntPolynomial> {
    Ok(derangement_polynomials(c, n, budget)?.signed)
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// `(-1)^k q^{c·C(k,2)} Π_{i=k+1..n} [ci]_q`, the `k`-th summand of the
/// derangement closed form with the q-factorial quotient written as a partial product.
fn closed_form_core(c: usize, n: usize, k: usize) -> IntPolynomial {
    q_partial_factorial(c, k + 1, n).shift(c * binom2(k))
}

/// `Σ_{k=0..n} (-1)^k q^{c·C(k,2)} Π_{i=k+1..n} [ci]_q`.
pub fn d_poly_closed(c: u32, n: u32) -> IntPolynomial {
    let (c, n) = (c as usize, n as usize);
    (0..=n)
        .map(|k| {
            let core = closed_form_core(c, n, k);
            if k % 2 == 1 {
                -core
            } else {
                core
            }
        })
        .sum()
}

/// Summands of the signed closed form, each carrying `((1-q)/(1+q))^{⌊(n-k+1)/2⌋}`,
/// together with the clearing exponent `⌊(n+1)/2⌋`.
pub fn signed_closed_terms(c: u32, n: u32) -> (Vec<RationalTerm>, u32) {
    let (cu, nu) = (c as usize, n as usize);
    let terms = (0..=nu)
        .map(|k| {
            RationalTerm::new(
                k % 2 == 1,
                closed_form_core(cu, nu, k),
                (nu - k).div_ceil(2) as u32,
            )
        })
        .collect();
    (terms, n.div_ceil(2))
}

/// Summands of twice the even-part closed form, i.e. the signed terms plus
/// the same cores without the rational factor.
pub fn even_part_terms(c: u32, n: u32) -> (Vec<RationalTerm>, u32) {
    let (signed, clearing) = signed_closed_terms(c, n);
    let terms = signed
        .iter()
        .flat_map(|t| [RationalTerm::new(t.negative, t.core.clone(), 0), t.clone()])
        .collect();
    (terms, clearing)
}

fn falling(n: u32, k: u32) -> BigInt {
    // n!/k!
    (k + 1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `Σ_{k=0..upto} (-1)^k (n!/k!) c^{n-k}`.
fn alternating_count_sum(c: u32, n: u32, upto: Option<u32>) -> BigInt {
    let Some(upto) = upto else {
        return BigInt::zero();
    };
    (0..=upto)
        .map(|k| {
            let term = falling(n, k) * BigInt::from(c).pow(n - k);
            if k % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// `d_n^{(c)} = Σ_{k=0..n} (-1)^k (n!/k!) c^{n-k}`.
pub fn d_count(c: u32, n: u32) -> BigInt {
    alternating_count_sum(c, n, Some(n))
}

/// Counts of even- and odd-length derangements for even `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSplit {
    pub even: BigInt,
    pub odd: BigInt,
    pub difference: BigInt,
}

/// `(H/2 + (-1)^n, H/2, (-1)^n)` with `H = Σ_{k=0..n-1} (-1)^k (n!/k!) c^{n-k}`.
pub fn d_counts_split(c: u32, n: u32) -> Result<CountSplit> {
    IdentityId::ParityDifference.require(c)?;
    let h = alternating_count_sum(c, n, n.checked_sub(1));
    let two = BigInt::from(2);
    if !(&h % &two).is_zero() {
        return Err(Error::Inconsistent(format!(
            "H = {h} is odd for c = {c}, n = {n}"
        )));
    }
    let half = h / two;
    let sign = if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    Ok(CountSplit {
        even: &half + &sign,
        odd: half,
        difference: sign,
    })
}

fn one_plus_q_pow(e: u32) -> IntPolynomial {
    IntPolynomial::from_i64s(&[1, 1]).pow(e)
}

fn timed(start: Instant, report: IdentityReport) -> IdentityReport {
    IdentityReport {
        elapsed: start.elapsed(),
        ..report
    }
}

/// Closed form of `d_n^{(c)}(q)` against enumeration.
pub fn check_derangement_poly(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let lhs = d_poly_enumerated(c, n, budget)?;
    let rhs = d_poly_closed(c, n);
    Ok(timed(
        start,
        IdentityReport::new(
            IdentityId::DerangementPoly,
            c,
            n,
            ReportValue::Poly(lhs),
            ReportValue::Poly(rhs),
        )
        .with_group_size(size),
    ))
}

/// Signed derangement closed form for even `c`, compared after multiplying
/// both sides by `(1+q)^{⌊(n+1)/2⌋}`.
pub fn d_signed_closed_check(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    IdentityId::SignedDerangement.require(c)?;
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let signed = d_signed_enumerated(c, n, budget)?;
    let (terms, clearing) = signed_closed_terms(c, n);
    let lhs = &signed * &one_plus_q_pow(clearing);
    let rhs = cleared_sum(&terms, clearing)?;
    Ok(timed(
        start,
        IdentityReport::new(
            IdentityId::SignedDerangement,
            c,
            n,
            ReportValue::Poly(lhs),
            ReportValue::Poly(rhs),
        )
        .with_group_size(size)
        .with_extra(format!("both sides multiplied by (1+q)^{clearing}"))
        .with_detail(format!("signed derangement polynomial: {signed}")),
    ))
}

/// Even-length part for even `c`: `2·even = plain + signed`, and `2·even`
/// matches its closed form after clearing denominators.
pub fn even_part_check(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    IdentityId::EvenPart.require(c)?;
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let polys = derangement_polynomials(c, n, budget)?;
    let (terms, clearing) = even_part_terms(c, n);
    let twice_even = polys.even_part.scale(&BigInt::from(2));
    let lhs = ReportValue::Polys(vec![
        crate::report::Labeled::new("2 even", twice_even.clone()),
        crate::report::Labeled::new("2 even cleared", &twice_even * &one_plus_q_pow(clearing)),
    ]);
    let rhs = ReportValue::Polys(vec![
        crate::report::Labeled::new("2 even", &polys.plain + &polys.signed),
        crate::report::Labeled::new("2 even cleared", cleared_sum(&terms, clearing)?),
    ]);
    Ok(timed(
        start,
        IdentityReport::new(IdentityId::EvenPart, c, n, lhs, rhs)
            .with_group_size(size)
            .with_detail(format!("even part: {}", polys.even_part)),
    ))
}

pub fn check_derangement_count(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let counted = derangement_polynomials(c, n, budget)?.counts.total;
    Ok(timed(
        start,
        IdentityReport::new(
            IdentityId::DerangementCount,
            c,
            n,
            ReportValue::Integer(counted),
            ReportValue::Integer(d_count(c, n)),
        )
        .with_group_size(size),
    ))
}

pub fn check_parity_difference(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    let start = Instant::now();
    let split = d_counts_split(c, n)?;
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let counts = derangement_polynomials(c, n, budget)?.counts;
    let lhs = ReportValue::integers([
        ("even", counts.even.clone()),
        ("odd", counts.odd.clone()),
        ("difference", counts.even - counts.odd),
    ]);
    let rhs = ReportValue::integers([
        ("even", split.even),
        ("odd", split.odd),
        ("difference", split.difference),
    ]);
    Ok(timed(
        start,
        IdentityReport::new(IdentityId::ParityDifference, c, n, lhs, rhs).with_group_size(size),
    ))
}

/// All colored derangements of degree `k`.
pub fn derangements_of_degree(c: u32, k: u32, budget: u64) -> Result<Vec<ColoredPermutation>> {
    Ok(enumerate_group(GroupParams::new(c, k)?, budget)?
        .filter(ColoredPermutation::is_derangement)
        .collect())
}

/// `Σ q^fmaj` and `Σ (-1)^L q^fmaj` over each dp-fiber of `G_{c,n}`,
/// found by scanning the whole group.
fn fiber_sums_by_scan(
    c: u32,
    n: u32,
    budget: u64,
) -> Result<HashMap<ColoredPermutation, (Tally, Tally)>> {
    par_fold(
        GroupParams::new(c, n)?,
        budget,
        HashMap::new,
        |acc: &mut HashMap<ColoredPermutation, (Tally, Tally)>, p| {
            let f = fmaj(p) as usize;
            let sign = if length(p) % 2 == 0 { 1 } else { -1 };
            let entry = acc.entry(derangement_part(p)).or_default();
            entry.0.add(f, 1);
            entry.1.add(f, sign);
        },
        |mut a, b| {
            for (k, (plain, signed)) in b {
                let e = a.remove(&k).unwrap_or_default();
                a.insert(k, (e.0.merge(plain), e.1.merge(signed)));
            }
            a
        },
    )
}

/// Fiber sums against `(±1) q^{fmaj(α)} [n choose k]_{q^c}` for every
/// `α ∈ D_k^{(c)}`, `k ≤ n`. With `signed`, the sign is `(-1)^L` (even `c` only).
pub fn check_fiber_sums(c: u32, n: u32, budget: u64, signed: bool) -> Result<IdentityReport> {
    let id = if signed {
        IdentityId::SignedFiber
    } else {
        IdentityId::WachsFiber
    };
    id.require(c)?;
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let sums = fiber_sums_by_scan(c, n, budget)?;
    let mut alphas = 0u64;
    let mut matching = 0u64;
    let mut first_failure = None;
    for k in 0..=n {
        let binom = q_binomial(n as usize, k as usize, c as usize)?;
        for alpha in derangements_of_degree(c, k, budget)? {
            alphas += 1;
            let mut expected = binom.shift(fmaj(&alpha) as usize);
            if signed && length(&alpha) % 2 == 1 {
                expected = -expected;
            }
            let found = sums
                .get(&alpha)
                .map(|(plain, sgn)| if signed { sgn } else { plain }.to_polynomial());
            if found.as_ref() == Some(&expected) {
                matching += 1;
            } else if first_failure.is_none() {
                first_failure = Some(format!("alpha = {alpha}"));
            }
        }
    }
    let mut report = IdentityReport::new(
        id,
        c,
        n,
        ReportValue::integers([("fibers", alphas)]),
        ReportValue::integers([("fibers", matching)]),
    )
    .with_group_size(size)
    .with_extra(format!("{} dp-fibers found by scan", sums.len()));
    if sums.len() as u64 != alphas {
        report.pass = false;
    }
    if let Some(f) = first_failure {
        report = report.with_detail(format!("first mismatch at {f}"));
    }
    Ok(timed(start, report))
}

/// `L(π) ≡ L(dp(π)) (mod 2)` over `G_{c,n}` for even `c`.
pub fn check_length_parity(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    IdentityId::LengthParity.require(c)?;
    let start = Instant::now();
    let params = GroupParams::new(c, n)?;
    let size = checked_order(params, budget)?;
    let agreeing = par_fold(
        params,
        budget,
        || 0u64,
        |acc, p| {
            if length(p) % 2 == length(&derangement_part(p)) % 2 {
                *acc += 1;
            }
        },
        |a, b| a + b,
    )?;
    Ok(timed(
        start,
        IdentityReport::new(
            IdentityId::LengthParity,
            c,
            n,
            ReportValue::integers([("elements", size)]),
            ReportValue::integers([("elements", agreeing)]),
        )
        .with_group_size(size),
    ))
}

/// `Des(tilde(π, n)) = Des(π)` and `col` preserved for all `π ∈ G_{c,k}`, `k ≤ n`.
pub fn check_tilde_descent(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    let start = Instant::now();
    let mut visited = 0u64;
    let mut preserved = 0u64;
    let mut first_failure = None;
    for k in 0..=n {
        let params = GroupParams::new(c, k)?;
        let size = checked_order(params, budget.saturating_sub(visited))?;
        visited += size;
        let (ok, bad) = par_fold(
            params,
            budget,
            || (0u64, None::<String>),
            |acc, p| {
                let t = tilde(p, n).expect("k ≤ n");
                if des_set(&t) == des_set(p) && col(&t) == col(p) {
                    acc.0 += 1;
                } else if acc.1.is_none() {
                    acc.1 = Some(format!("{p} -> {t}"));
                }
            },
            |a, b| (a.0 + b.0, a.1.or(b.1)),
        )?;
        preserved += ok;
        first_failure = first_failure.or(bad);
    }
    let mut report = IdentityReport::new(
        IdentityId::TildeDescent,
        c,
        n,
        ReportValue::integers([("elements", visited)]),
        ReportValue::integers([("elements", preserved)]),
    )
    .with_group_size(visited);
    if let Some(f) = first_failure {
        report = report.with_detail(format!("first failure: {f}"));
    }
    Ok(timed(start, report))
}

/// Checks that `φ` maps `fiber(α, n)` bijectively onto `sh(tilde(α, n), γ)`
/// preserving `Des` and `col`.
pub fn phi_fiber_is_bijection(alpha: &ColoredPermutation, n: u32) -> Result<bool> {
    let members = fiber(alpha, n)?;
    let target: HashSet<ColoredWord> = shuffles(&tilde(alpha, n)?, &gamma(alpha, n))?
        .into_iter()
        .collect();
    let mut image = HashSet::with_capacity(members.len());
    for p in &members {
        let w = phi(p);
        if des_set(&w) != des_set(p) || col(&w) != col(p) || !image.insert(w) {
            return Ok(false);
        }
    }
    Ok(image == target)
}

pub fn check_phi_bijection(c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    let start = Instant::now();
    let size = checked_order(GroupParams::new(c, n)?, budget)?;
    let mut alphas = 0u64;
    let mut good = 0u64;
    let mut first_failure = None;
    for k in 0..=n {
        for alpha in derangements_of_degree(c, k, budget)? {
            alphas += 1;
            if phi_fiber_is_bijection(&alpha, n)? {
                good += 1;
            } else if first_failure.is_none() {
                first_failure = Some(alpha.to_string());
            }
        }
    }
    let mut report = IdentityReport::new(
        IdentityId::PhiBijection,
        c,
        n,
        ReportValue::integers([("fibers", alphas)]),
        ReportValue::integers([("fibers", good)]),
    )
    .with_group_size(size);
    if let Some(f) = first_failure {
        report = report.with_detail(format!("first failing alpha: {f}"));
    }
    Ok(timed(start, report))
}

/// Shuffle generating functions over every ordered pair of disjoint colored
/// words `(τ, σ)` with `|τ| + |σ| = m` and values `1..=m`.
///
/// Every such pair is a colored permutation of degree `m` cut after `j` letters,
/// so the pairs are enumerated as `G_{c,m} × {0..=m}`. With `flag`, checks
/// `Σ q^fmaj = q^{fmaj τ + fmaj σ} [m choose j]_{q^c}`; otherwise
/// `Σ q^maj = q^{maj τ + maj σ} [m choose j]_q`.
pub fn check_shuffle_weights(c: u32, m: u32, budget: u64, flag: bool) -> Result<IdentityReport> {
    let id = if flag {
        IdentityId::ShuffleFmaj
    } else {
        IdentityId::ShuffleMaj
    };
    let start = Instant::now();
    let params = GroupParams::new(c, m)?;
    let size = checked_order(params, budget)?;
    let base = if flag { c as usize } else { 1 };
    let binoms: Vec<Vec<i64>> = (0..=m as usize)
        .map(|j| {
            q_binomial(m as usize, j, base)
                .expect("j ≤ m")
                .coeffs()
                .iter()
                .map(|x| i64::try_from(x).expect("small binomial coefficient"))
                .collect()
        })
        .collect();
    let weight = |w: &[ColoredLetter]| -> usize {
        let word = ColoredWord::from_parts_unchecked(c, m, w.to_vec());
        if flag {
            fmaj(&word) as usize
        } else {
            maj(&word) as usize
        }
    };
    let (pairs, matching, shuffled) = par_fold(
        params,
        budget,
        || (0u64, 0u64, 0u64),
        |acc, p| {
            let letters = p.letters();
            for j in 0..=m as usize {
                let (tau, sigma) = letters.split_at(j);
                let offset = weight(tau) + weight(sigma);
                let mut counts: Vec<i64> = Vec::new();
                for_each_shuffle(tau, sigma, |w| {
                    let e = weight(w);
                    if e >= counts.len() {
                        counts.resize(e + 1, 0);
                    }
                    counts[e] += 1;
                    acc.2 += 1;
                });
                let expected = &binoms[sigma.len()];
                let ok = counts.len() == offset + expected.len()
                    && counts[..offset].iter().all(|&x| x == 0)
                    && counts[offset..] == expected[..];
                acc.0 += 1;
                if ok {
                    acc.1 += 1;
                }
            }
        },
        |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
    )?;
    Ok(timed(
        start,
        IdentityReport::new(
            id,
            c,
            m,
            ReportValue::integers([("pairs", pairs)]),
            ReportValue::integers([("pairs", matching)]),
        )
        .with_group_size(size)
        .with_extra(format!("{shuffled} shuffles")),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::parse_word;
    use crate::enumerate::DEFAULT_BUDGET;

    fn w(text: &str, c: u32, n: u32) -> ColoredPermutation {
        parse_word(text, GroupParams::new(c, n).unwrap()).unwrap()
    }

    #[test]
    fn dp_examples() {
        assert_eq!(
            derangement_part(&w("2[3] 1[1] 3 4[2] 5", 4, 5)).to_string(),
            "2[3] 1[1] 3[2]"
        );
        let id = ColoredPermutation::identity(GroupParams::new(3, 4).unwrap());
        assert_eq!(derangement_part(&id).degree(), 0);
        let d = w("3 1[1] 2[2]", 3, 3);
        assert_eq!(derangement_part(&d), d);
    }

    #[test]
    fn dp_is_derangement_of_right_degree() {
        for c in 1..=3 {
            for n in 0..=4 {
                for p in enumerate_group(GroupParams::new(c, n).unwrap(), DEFAULT_BUDGET).unwrap() {
                    let d = derangement_part(&p);
                    assert!(d.is_derangement());
                    assert_eq!(d.degree() as usize, n as usize - p.fixed_points().len());
                    if p.is_derangement() {
                        assert_eq!(d, p);
                    }
                }
            }
        }
    }

    #[test]
    fn tilde_on_seven_letter_example() {
        let p = w("2 1[1] 3 4[2] 5 7 6[2]", 3, 7);
        let t = tilde(&p, 7).unwrap();
        assert_eq!(t.to_string(), "6 1[1] 4 2[2] 5 7 3[2]");
        assert_eq!(des_set(&t), des_set(&p));
        assert_eq!(des_set(&p), vec![1, 3, 6]);
    }

    #[test]
    fn reversed_subcedant_labels_break_descents() {
        // Numbering subcedants in decreasing order would send 3 1 2 to 3 2 1.
        let p = w("3 1 2", 1, 3);
        assert_eq!(tilde(&p, 3).unwrap().to_string(), "3 1 2");
        assert_eq!(des_set(&p), vec![1]);
    }

    #[test]
    fn tilde_identity_and_errors() {
        let id = ColoredPermutation::identity(GroupParams::new(2, 4).unwrap());
        assert_eq!(tilde(&id, 4).unwrap().to_string(), "1 2 3 4");
        assert_eq!(tilde(&id, 6).unwrap().to_string(), "1 2 3 4");
        assert!(tilde(&id, 3).is_err());
    }

    #[test]
    fn fiber_examples() {
        let empty = ColoredPermutation::identity(GroupParams::new(4, 0).unwrap());
        let f = fiber(&empty, 2).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].to_string(), "1 2");

        let alpha = w("2[1] 1", 4, 2);
        let f = fiber(&alpha, 3).unwrap();
        assert_eq!(f.len(), 3);
        let scanned: Vec<_> = enumerate_group(GroupParams::new(4, 3).unwrap(), DEFAULT_BUDGET)
            .unwrap()
            .filter(|p| derangement_part(p) == alpha)
            .collect();
        let a: HashSet<_> = f.into_iter().collect();
        let b: HashSet<_> = scanned.into_iter().collect();
        assert_eq!(a, b);

        assert!(fiber(&w("1 2", 2, 2), 3).is_err());
    }

    #[test]
    fn shuffle_examples() {
        let one = ColoredWord::parse("1", 1, 2).unwrap();
        let two = ColoredWord::parse("2", 1, 2).unwrap();
        let all: Vec<String> = shuffles(&one, &two)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(all, ["1 2", "2 1"]);
        assert!(matches!(shuffles(&one, &one), Err(Error::OverlappingWords)));

        let tau = ColoredWord::parse("2 1", 1, 4).unwrap();
        let sigma = ColoredWord::parse("3 4", 1, 4).unwrap();
        let sh = shuffles(&tau, &sigma).unwrap();
        assert_eq!(sh.len(), 6);
        let mut tally = Tally::new();
        for x in &sh {
            tally.add(maj(x) as usize, 1);
        }
        let expected = q_binomial(4, 2, 1)
            .unwrap()
            .shift((maj(&tau) + maj(&sigma)) as usize);
        assert_eq!(tally.to_polynomial(), expected);
    }

    #[test]
    fn phi_examples() {
        let id = ColoredPermutation::identity(GroupParams::new(3, 3).unwrap());
        assert_eq!(phi(&id).to_string(), "1 2 3");
        for alpha in derangements_of_degree(3, 2, DEFAULT_BUDGET).unwrap() {
            assert!(phi_fiber_is_bijection(&alpha, 3).unwrap(), "{alpha}");
        }
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(d_poly_enumerated(4, 0, 10).unwrap(), IntPolynomial::one());
        assert_eq!(d_poly_closed(4, 0), IntPolynomial::one());
        assert_eq!(
            d_poly_enumerated(4, 2, 100).unwrap().value_at_one(),
            BigInt::from(25)
        );
        assert_eq!(
            d_signed_enumerated(2, 1, 10).unwrap(),
            IntPolynomial::from_i64s(&[0, -1])
        );
        assert_eq!(d_poly_closed(4, 2), d_poly_enumerated(4, 2, 100).unwrap());
        assert_eq!(d_poly_closed(1, 4).value_at_one(), BigInt::from(9));
    }

    #[test]
    fn counts() {
        assert_eq!(d_count(1, 4), BigInt::from(9));
        assert_eq!(d_count(4, 2), BigInt::from(25));
        assert_eq!(d_count(3, 0), BigInt::one());
        let s = d_counts_split(2, 3).unwrap();
        assert_eq!(s.difference, BigInt::from(-1));
        assert_eq!(&s.even + &s.odd, d_count(2, 3));
        assert!(matches!(
            d_counts_split(3, 2),
            Err(Error::ParityMismatch { .. })
        ));
        assert_eq!(d_counts_split(4, 0).unwrap().even, BigInt::one());
    }

    #[test]
    fn signed_checks_small() {
        for (c, n) in [(2, 2), (4, 2), (2, 4)] {
            assert!(
                d_signed_closed_check(c, n, DEFAULT_BUDGET).unwrap().pass,
                "({c},{n})"
            );
            assert!(
                even_part_check(c, n, DEFAULT_BUDGET).unwrap().pass,
                "({c},{n})"
            );
        }
        assert!(d_signed_closed_check(3, 2, DEFAULT_BUDGET).is_err());
        assert!(even_part_check(1, 2, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn combination_order() {
        let mut all = Vec::new();
        for_each_combination(4, 2, |c| all.push(c.to_vec()));
        assert_eq!(all, [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]);
        let mut count = 0;
        for_each_combination(3, 0, |c| {
            assert!(c.is_empty());
            count += 1;
        });
        assert_eq!(count, 1);
    }
}
