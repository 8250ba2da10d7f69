//! Deterministic enumeration of `G_{c,n}`.
//!
//! Elements are ordered by underlying permutation (lexicographically), and
//! within one underlying permutation by the color vector `(t_1, …, t_n)` read
//! as a base-`c` counter with `t_n` most significant. The element at index
//! `i` therefore has underlying permutation of lexicographic rank `i / cⁿ`
//! and color digits `i mod cⁿ`.
//!
//! Any index range can be walked independently, which is what the parallel
//! folds below use.

use std::ops::Range;

use rayon::prelude::*;

use crate::colored::{ColoredLetter, ColoredPermutation, GroupParams};
use crate::error::{Error, Result};

/// Default cap on the number of group elements a single computation may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Returns `|G_{c,n}|` if it is within `budget`.
pub fn checked_order(params: GroupParams, budget: u64) -> Result<u64> {
    match params.order() {
        Some(size) if size <= budget as u128 => Ok(size as u64),
        Some(size) => Err(Error::BudgetExceeded { size, budget }),
        None => Err(Error::BudgetExceeded {
            size: u128::MAX,
            budget,
        }),
    }
}

/// Walks a contiguous index range of `G_{c,n}` in the documented order.
#[derive(Debug, Clone)]
pub struct GroupEnumerator {
    current: ColoredPermutation,
    remaining: u64,
    started: bool,
}

impl GroupEnumerator {
    /// All of `G_{c,n}`, provided it fits in `budget`.
    pub fn new(params: GroupParams, budget: u64) -> Result<Self> {
        let size = checked_order(params, budget)?;
        Self::range(params, 0..size, budget)
    }

    /// The elements with indices in `range`, restartable from any index.
    pub fn range(params: GroupParams, range: Range<u64>, budget: u64) -> Result<Self> {
        let size = checked_order(params, budget)?;
        if range.start > range.end || range.end > size {
            return Err(Error::InvalidArgument(format!(
                "index range {range:?} outside 0..{size}"
            )));
        }
        Ok(Self {
            current: element_at(params, range.start.min(size.saturating_sub(1))),
            remaining: range.end - range.start,
            started: false,
        })
    }

    /// Visits each element by reference without cloning.
    pub fn for_each_ref(mut self, mut f: impl FnMut(&ColoredPermutation)) {
        while self.remaining > 0 {
            if self.started {
                advance(&mut self.current);
            }
            self.started = true;
            self.remaining -= 1;
            f(&self.current);
        }
    }
}

impl Iterator for GroupEnumerator {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        if self.started {
            advance(&mut self.current);
        }
        self.started = true;
        self.remaining -= 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Convenience wrapper around [`GroupEnumerator::new`].
pub fn enumerate_group(params: GroupParams, budget: u64) -> Result<GroupEnumerator> {
    GroupEnumerator::new(params, budget)
}

/// The element at position `index` of the enumeration order.
///
/// Panics if `index` is not below `|G_{c,n}|` (the empty group has one element).
pub fn element_at(params: GroupParams, index: u64) -> ColoredPermutation {
    let n = params.degree as usize;
    let c = params.colors as u128;
    let size = params.order().expect("group order overflows u128");
    assert!((index as u128) < size, "index {index} out of range");

    let color_block = c.pow(n as u32);
    let mut perm_rank = index as u128 / color_block;
    let mut color_digits = index as u128 % color_block;

    // factorial-base digits give the lexicographic unranking
    let mut pool: Vec<u32> = (1..=params.degree).collect();
    let mut factorial: u128 = (1..n as u128).product();
    let mut letters = Vec::with_capacity(n);
    for i in 0..n {
        let remaining = (n - i) as u128;
        let digit = (perm_rank / factorial) as usize;
        perm_rank %= factorial;
        let value = pool.remove(digit);
        let color = (color_digits % c) as u32;
        color_digits /= c;
        letters.push(ColoredLetter::new(value, color));
        if remaining > 1 {
            factorial /= remaining - 1;
        }
    }
    ColoredPermutation::from_parts_unchecked(params.colors, letters)
}

/// Steps to the successor in enumeration order, wrapping at the end.
fn advance(perm: &mut ColoredPermutation) {
    let c = perm.params().colors;
    let letters = perm.letters_mut();
    for l in letters.iter_mut() {
        if l.color + 1 < c {
            l.color += 1;
            return;
        }
        l.color = 0;
    }
    next_permutation(letters);
}

fn next_permutation(letters: &mut [ColoredLetter]) {
    let n = letters.len();
    if n < 2 {
        return;
    }
    let mut i = n - 1;
    while i > 0 && letters[i - 1].value >= letters[i].value {
        i -= 1;
    }
    if i == 0 {
        letters.reverse();
        return;
    }
    let mut j = n - 1;
    while letters[j].value <= letters[i - 1].value {
        j -= 1;
    }
    letters.swap(i - 1, j);
    letters[i..].reverse();
}

/// Splits `0..size` into chunks sized for roughly even parallel work.
pub fn chunk_ranges(size: u64, chunks_hint: usize) -> Vec<Range<u64>> {
    if size == 0 {
        return Vec::new();
    }
    let parts = (chunks_hint.max(1) as u64).min(size);
    let step = size.div_ceil(parts);
    (0..size)
        .step_by(step as usize)
        .map(|start| start..(start + step).min(size))
        .collect()
}

const MIN_CHUNK: u64 = 2048;

/// Folds over all of `G_{c,n}` in parallel.
///
/// Each chunk starts from `init()` and is folded sequentially with `step`;
/// chunk results are combined with `merge`, which must be associative and
/// commutative for the result to be independent of scheduling.
pub fn par_fold<A, I, S, M>(
    params: GroupParams,
    budget: u64,
    init: I,
    step: S,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    S: Fn(&mut A, &ColoredPermutation) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let size = checked_order(params, budget)?;
    let hint = (rayon::current_num_threads() * 8).min((size / MIN_CHUNK).max(1) as usize);
    let ranges = chunk_ranges(size, hint);
    let result = ranges
        .into_par_iter()
        .map(|range| {
            let mut acc = init();
            GroupEnumerator::range(params, range, budget)
                .expect("chunk within group")
                .for_each_ref(|p| step(&mut acc, p));
            acc
        })
        .reduce(&init, &merge);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::colored::ColoredSequence;

    fn g(c: u32, n: u32) -> GroupParams {
        GroupParams::new(c, n).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(
            enumerate_group(g(4, 2), DEFAULT_BUDGET).unwrap().count(),
            32
        );
        assert_eq!(
            enumerate_group(g(3, 3), DEFAULT_BUDGET).unwrap().count(),
            162
        );
        let empty: Vec<_> = enumerate_group(g(1, 0), DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].degree(), 0);
    }

    #[test]
    fn distinct_and_complete() {
        for c in 1..=4 {
            for n in 0..=4 {
                let p = g(c, n);
                let all: Vec<_> = enumerate_group(p, DEFAULT_BUDGET).unwrap().collect();
                assert_eq!(all.len() as u128, p.order().unwrap());
                let set: HashSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len());
            }
        }
    }

    #[test]
    fn order_is_documented_order() {
        let all: Vec<String> = enumerate_group(g(2, 2), 100)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(
            all,
            [
                "1 2",
                "1[1] 2",
                "1 2[1]",
                "1[1] 2[1]",
                "2 1",
                "2[1] 1",
                "2 1[1]",
                "2[1] 1[1]"
            ]
        );
    }

    #[test]
    fn unranking_agrees_with_walk() {
        for (c, n) in [(1, 4), (3, 3), (2, 4), (4, 2)] {
            let p = g(c, n);
            for (i, e) in enumerate_group(p, DEFAULT_BUDGET).unwrap().enumerate() {
                assert_eq!(element_at(p, i as u64), e);
            }
        }
    }

    #[test]
    fn chunks_cover_range() {
        let p = g(3, 3);
        let whole: Vec<_> = enumerate_group(p, 1000).unwrap().collect();
        let mut pieced = Vec::new();
        for r in chunk_ranges(162, 7) {
            pieced.extend(GroupEnumerator::range(p, r, 1000).unwrap());
        }
        assert_eq!(whole, pieced);
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(
            enumerate_group(g(4, 3), 383),
            Err(Error::BudgetExceeded {
                size: 384,
                budget: 383
            })
        ));
        assert!(enumerate_group(g(4, 3), 384).is_ok());
    }

    #[test]
    fn parallel_fold_counts() {
        let p = g(3, 5);
        let total = par_fold(p, DEFAULT_BUDGET, || 0u64, |a, _| *a += 1, |a, b| a + b).unwrap();
        assert_eq!(total, 29160);
        let colsum = par_fold(
            p,
            DEFAULT_BUDGET,
            || 0u64,
            |a, e| *a += e.letters().iter().map(|l| l.color as u64).sum::<u64>(),
            |a, b| a + b,
        )
        .unwrap();
        // each of 5 positions carries each color equally often
        assert_eq!(colsum, 29160 * 5);
    }
}
