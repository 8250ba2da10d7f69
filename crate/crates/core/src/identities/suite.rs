use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    check_conjecture, check_factorial_form, verify_biagioli_caselli, verify_fmaj_product,
    verify_invtilde_even, verify_invtilde_odd, verify_signed_mahonian_even,
};
use crate::derangements::{
    check_derangement_count, check_derangement_poly, check_fiber_sums, check_length_parity,
    check_parity_difference, check_phi_bijection, check_shuffle_weights, check_tilde_descent,
    d_signed_closed_check, even_part_check,
};
use crate::enumerate::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::report::{IdentityId, IdentityReport};

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub c_range: RangeInclusive<u32>,
    pub n_range: RangeInclusive<u32>,
    /// Largest number of group elements a single cell may enumerate.
    pub budget: u64,
    pub identities: Vec<IdentityId>,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            c_range: 1..=4,
            n_range: 1..=4,
            budget: DEFAULT_BUDGET,
            identities: IdentityId::ALL.to_vec(),
            jobs: None,
        }
    }
}

/// A cell that was not checked, typically because it exceeds the budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedCell {
    pub identity: IdentityId,
    pub c: u32,
    pub n: u32,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteRun {
    pub reports: Vec<IdentityReport>,
    pub skipped: Vec<SkippedCell>,
}

impl SuiteRun {
    pub fn hard_failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.reports.iter().filter(|r| r.is_hard_failure())
    }

    /// True when every claimed identity passed.
    pub fn ok(&self) -> bool {
        self.hard_failures().next().is_none()
    }
}

/// Checks one identity at one `(c, n)`.
pub fn run_check(id: IdentityId, c: u32, n: u32, budget: u64) -> Result<IdentityReport> {
    match id {
        IdentityId::FmajProduct => verify_fmaj_product(c, n, budget),
        IdentityId::BiagioliCaselli => verify_biagioli_caselli(c, n, budget),
        IdentityId::SignedEven => verify_signed_mahonian_even(c, n, budget),
        IdentityId::InvTildeEven => verify_invtilde_even(c, n, budget),
        IdentityId::InvTildeOdd => verify_invtilde_odd(c, n, budget),
        IdentityId::Conjecture => check_conjecture(c, n, budget),
        IdentityId::FactorialForm => check_factorial_form(c, n, budget),
        IdentityId::WachsFiber => check_fiber_sums(c, n, budget, false),
        IdentityId::SignedFiber => check_fiber_sums(c, n, budget, true),
        IdentityId::LengthParity => check_length_parity(c, n, budget),
        IdentityId::DerangementPoly => check_derangement_poly(c, n, budget),
        IdentityId::SignedDerangement => d_signed_closed_check(c, n, budget),
        IdentityId::EvenPart => even_part_check(c, n, budget),
        IdentityId::DerangementCount => check_derangement_count(c, n, budget),
        IdentityId::ParityDifference => check_parity_difference(c, n, budget),
        IdentityId::TildeDescent => check_tilde_descent(c, n, budget),
        IdentityId::PhiBijection => check_phi_bijection(c, n, budget),
        IdentityId::ShuffleMaj => check_shuffle_weights(c, n, budget, false),
        IdentityId::ShuffleFmaj => check_shuffle_weights(c, n, budget, true),
    }
}

/// Runs every selected identity over the grid, skipping cells whose parity
/// does not apply. Reports are ordered by identity, then `c`, then `n`,
/// whatever order the cells finish in.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteRun> {
    let mut ids = config.identities.clone();
    ids.sort();
    ids.dedup();
    let cells: Vec<(IdentityId, u32, u32)> = ids
        .iter()
        .flat_map(|&id| {
            config
                .c_range
                .clone()
                .filter(move |&c| id.applies_to(c))
                .flat_map(move |c| config.n_range.clone().map(move |n| (id, c, n)))
        })
        .collect();
    let work = || -> Vec<Result<IdentityReport>> {
        cells
            .par_iter()
            .map(|&(id, c, n)| run_check(id, c, n, config.budget))
            .collect()
    };
    let outcomes = match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    let mut run = SuiteRun::default();
    for (&(identity, c, n), outcome) in cells.iter().zip(outcomes) {
        match outcome {
            Ok(report) => run.reports.push(report),
            Err(e @ Error::BudgetExceeded { .. }) => run.skipped.push(SkippedCell {
                identity,
                c,
                n,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(run)
}
