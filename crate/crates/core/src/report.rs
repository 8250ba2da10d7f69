//! Verification results.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::qpoly::{BivariateDistribution, IntPolynomial};

macro_rules! identities {
    ($($variant:ident => $name:literal, $parity:expr, $about:literal;)*) => {
        /// Every identity the suite knows how to check.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId {
            $($variant,)*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name,)*
                }
            }

            /// Which values of `c` the identity applies to.
            pub fn parity(self) -> Parity {
                match self {
                    $(IdentityId::$variant => $parity,)*
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $about,)*
                }
            }
        }
    };
}

identities! {
    FmajProduct => "fmaj-product", Parity::Any,
        "sum of q^fmaj over G(c,n) equals the product of [ci]_q";
    BiagioliCaselli => "biagioli-caselli", Parity::Any,
        "sum of (-1)^L(|pi|) q^fmaj equals [c]_q[2c]_-q[3c]_q...";
    SignedEven => "signed-even", Parity::Even,
        "sum of (-1)^L q^fmaj equals [c]_-q[2c]_q... and the ((1-q)/(1+q)) form";
    InvTildeEven => "invtilde-even", Parity::Even,
        "both (-1)^inv~ q^fmaj and (-1)^fmaj q^inv~ sums equal the product of [ci]_-q";
    InvTildeOdd => "invtilde-odd", Parity::Odd,
        "sum of (-1)^inv~ q^fmaj for odd c";
    Conjecture => "conjecture", Parity::Any,
        "joint distribution of (inv~, fmaj) is transpose-symmetric";
    FactorialForm => "factorial-form", Parity::Odd,
        "no signed product of q-integers equals the signed Mahonian polynomial for odd c";
    WachsFiber => "wachs-fiber", Parity::Any,
        "sum of q^fmaj over each dp-fiber equals q^fmaj(alpha) [n choose k]_{q^c}";
    SignedFiber => "signed-fiber", Parity::Even,
        "signed sum over each dp-fiber equals (-1)^L(alpha) q^fmaj(alpha) [n choose k]_{q^c}";
    LengthParity => "length-parity", Parity::Even,
        "L(pi) and L(dp(pi)) have the same parity";
    DerangementPoly => "derangement-poly", Parity::Any,
        "closed form of the fmaj derangement polynomial";
    SignedDerangement => "signed-derangement", Parity::Even,
        "closed form of the signed derangement polynomial";
    EvenPart => "even-part", Parity::Even,
        "fmaj polynomial of even-length derangements";
    DerangementCount => "derangement-count", Parity::Any,
        "number of colored derangements";
    ParityDifference => "parity-difference", Parity::Even,
        "even minus odd derangements equals (-1)^n";
    TildeDescent => "tilde-descent", Parity::Any,
        "the tilde relabeling preserves Des and col";
    PhiBijection => "phi-bijection", Parity::Any,
        "phi maps each dp-fiber bijectively onto a shuffle set, preserving Des and col";
    ShuffleMaj => "shuffle-maj", Parity::Any,
        "maj generating function over shuffles";
    ShuffleFmaj => "shuffle-fmaj", Parity::Any,
        "fmaj generating function over shuffles of colored words";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Any,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, c: u32) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => c.is_multiple_of(2),
            Parity::Odd => c % 2 == 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Any => "any",
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl IdentityId {
    pub fn applies_to(self, c: u32) -> bool {
        self.parity().admits(c)
    }

    pub(crate) fn require(self, c: u32) -> crate::Result<()> {
        if self.applies_to(c) {
            Ok(())
        } else {
            Err(Error::ParityMismatch {
                identity: self.as_str(),
                expected: self.parity().name(),
                c,
            })
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown identity `{s}`")))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Whether a failing report contradicts a published claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// A proven or computationally confirmed statement; failure is an error.
    Claimed,
    /// Outside the confirmed range; the outcome is a finding either way.
    Exploratory,
    /// A trivial small case reported for completeness only.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Labeled<T> {
    pub label: String,
    pub value: T,
}

impl<T> Labeled<T> {
    pub fn new(label: impl Into<String>, value: T) -> Self {
        Self {
            label: label.into(),
            value,
        }
    }
}

/// One side of a verified identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportValue {
    Poly(IntPolynomial),
    Polys(Vec<Labeled<IntPolynomial>>),
    Bivariate(BivariateDistribution),
    #[serde(serialize_with = "bigint_string")]
    Integer(BigInt),
    Integers(Vec<Labeled<String>>),
    Patterns(Vec<String>),
}

fn bigint_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl ReportValue {
    pub fn integers<I, L, V>(items: I) -> Self
    where
        I: IntoIterator<Item = (L, V)>,
        L: Into<String>,
        V: Into<BigInt>,
    {
        ReportValue::Integers(
            items
                .into_iter()
                .map(|(l, v)| Labeled::new(l, v.into().to_string()))
                .collect(),
        )
    }
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportValue::Poly(p) => write!(f, "{p}"),
            ReportValue::Polys(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{}: {}", item.label, item.value)?;
                }
                Ok(())
            }
            ReportValue::Bivariate(d) => write!(f, "{} monomials", d.len()),
            ReportValue::Integer(v) => write!(f, "{v}"),
            ReportValue::Integers(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}={}", item.label, item.value)?;
                }
                Ok(())
            }
            ReportValue::Patterns(p) if p.is_empty() => f.write_str("none"),
            ReportValue::Patterns(p) => f.write_str(&p.join(" ")),
        }
    }
}

/// The outcome of checking one identity at one `(c, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub c: u32,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<String>,
    /// Computed by enumeration.
    pub lhs: ReportValue,
    /// Computed from the closed form (or the expected value).
    pub rhs: ReportValue,
    pub pass: bool,
    pub claim: Claim,
    /// Number of group elements (or words) visited.
    pub group_size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn new(identity: IdentityId, c: u32, n: u32, lhs: ReportValue, rhs: ReportValue) -> Self {
        let pass = lhs == rhs;
        Self {
            identity,
            c,
            n,
            extra: None,
            lhs,
            rhs,
            pass,
            claim: Claim::Claimed,
            group_size: 0,
            detail: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn with_claim(mut self, claim: Claim) -> Self {
        self.claim = claim;
        self
    }

    pub fn with_group_size(mut self, size: u64) -> Self {
        self.group_size = size;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_extra(mut self, extra: impl Into<String>) -> Self {
        self.extra = Some(extra.into());
        self
    }

    /// A failure that contradicts a claimed identity.
    pub fn is_hard_failure(&self) -> bool {
        !self.pass && self.claim == Claim::Claimed
    }

    pub fn status(&self) -> &'static str {
        match (self.pass, self.claim) {
            (true, _) => "pass",
            (false, Claim::Claimed) => "FAIL",
            (false, _) => "finding",
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
