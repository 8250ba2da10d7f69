//! Permutation statistics on colored words.
//!
//! Every function here is a pure function of the word. Descents compare
//! letters in the flag order (see [`crate::colored`]); `inv` and the middle
//! term of the length compare plain values.

use std::fmt;

use serde::Serialize;

use crate::colored::{ColoredLetter, ColoredPermutation, ColoredSequence};

/// Number of pairs `i < j` with `σ_i > σ_j`.
pub fn inv(values: &[u32]) -> u64 {
    let mut count = 0;
    for (i, &a) in values.iter().enumerate() {
        count += values[i + 1..].iter().filter(|&&b| a > b).count() as u64;
    }
    count
}

/// 1-based positions `i` with `π_i > π_{i+1}` in the flag order.
pub fn des_set(word: &impl ColoredSequence) -> Vec<usize> {
    word.letters()
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect()
}

pub fn maj(word: &impl ColoredSequence) -> u64 {
    word.letters()
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i as u64 + 1)
        .sum()
}

/// Sum of the colors.
pub fn col(word: &impl ColoredSequence) -> u64 {
    word.letters().iter().map(|l| l.color as u64).sum()
}

/// Flag-major index `c·maj + col`.
pub fn fmaj(word: &impl ColoredSequence) -> u64 {
    word.colors() as u64 * maj(word) + col(word)
}

/// `c·inv(|π|) + col`.
pub fn inv_tilde(word: &impl ColoredSequence) -> u64 {
    word.colors() as u64 * inv(&word.underlying()) + col(word)
}

/// Colored length
/// `col(π) + c·Σ_{t_j≠0} |{i<j : π_i<π_j}| + inv(|π|)`.
pub fn length(word: &impl ColoredSequence) -> u64 {
    let letters = word.letters();
    let mut ascents_into_colored = 0u64;
    let mut inversions = 0u64;
    for (j, b) in letters.iter().enumerate() {
        for a in &letters[..j] {
            if a.value < b.value {
                if b.color != 0 {
                    ascents_into_colored += 1;
                }
            } else {
                inversions += 1;
            }
        }
    }
    col(word) + word.colors() as u64 * ascents_into_colored + inversions
}

/// Positions split by how each letter compares with its own uncolored position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CedanceSplit {
    /// 1-based positions `j` with `π_j < j` in the flag order.
    pub subcedants: Vec<usize>,
    /// 1-based positions `j` with `π_j > j` in the flag order.
    pub excedants: Vec<usize>,
    pub fixed: Vec<usize>,
}

impl CedanceSplit {
    pub fn subcedant_count(&self) -> usize {
        self.subcedants.len()
    }

    pub fn excedant_count(&self) -> usize {
        self.excedants.len()
    }
}

/// Classifies every position as subcedant, excedant or fixed.
///
/// A colored letter at its own position is a subcedant.
pub fn subcedants_excedants(word: &impl ColoredSequence) -> CedanceSplit {
    let mut split = CedanceSplit::default();
    for (i, &letter) in word.letters().iter().enumerate() {
        let position = ColoredLetter::plain(i as u32 + 1);
        match letter.cmp(&position) {
            std::cmp::Ordering::Less => split.subcedants.push(i + 1),
            std::cmp::Ordering::Greater => split.excedants.push(i + 1),
            std::cmp::Ordering::Equal => split.fixed.push(i + 1),
        }
    }
    split
}

/// Snapshot of all statistics of one group element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatRow {
    pub word: String,
    #[serde(rename = "L")]
    pub length: u64,
    pub fmaj: u64,
    pub inv_tilde: u64,
    pub maj: u64,
    pub col: u64,
    pub des: Vec<usize>,
}

impl StatRow {
    pub fn of(perm: &ColoredPermutation) -> Self {
        Self {
            word: perm.to_string(),
            length: length(perm),
            fmaj: fmaj(perm),
            inv_tilde: inv_tilde(perm),
            maj: maj(perm),
            col: col(perm),
            des: des_set(perm),
        }
    }

    pub const CSV_HEADER: &'static str = "word,L,fmaj,inv_tilde,maj,col,des";

    /// `des` joined with semicolons, empty when there are no descents.
    pub fn des_field(&self) -> String {
        self.des
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.word,
            self.length,
            self.fmaj,
            self.inv_tilde,
            self.maj,
            self.col,
            self.des_field()
        )
    }
}

impl fmt::Display for StatRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "L={} fmaj={} inv~={} maj={} col={} Des={{{}}}",
            self.length,
            self.fmaj,
            self.inv_tilde,
            self.maj,
            self.col,
            self.des
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::{parse_word, ColoredWord, GroupParams};
    use crate::enumerate::enumerate_group;

    fn w(text: &str, c: u32, n: u32) -> ColoredPermutation {
        parse_word(text, GroupParams::new(c, n).unwrap()).unwrap()
    }

    #[test]
    fn running_example() {
        let p = w("2[3] 1[1] 3 4[2] 5", 4, 5);
        assert_eq!(inv(&p.underlying()), 1);
        assert_eq!(des_set(&p), vec![3]);
        assert_eq!(maj(&p), 3);
        assert_eq!(col(&p), 6);
        assert_eq!(fmaj(&p), 18);
        assert_eq!(length(&p), 19);
    }

    #[test]
    fn table_rows() {
        let p = w("2[2] 1[3]", 4, 2);
        assert_eq!(des_set(&p), vec![1]);
        assert_eq!(fmaj(&p), 9);
        let p = w("1[3] 2[3]", 4, 2);
        assert_eq!((col(&p), fmaj(&p)), (6, 6));
        assert_eq!(fmaj(&w("2[1] 1", 4, 2)), 1);
        assert_eq!(length(&w("1[3] 2[1]", 4, 2)), 8);
        assert_eq!(inv_tilde(&w("2[3] 1[2]", 4, 2)), 9);
        assert_eq!(inv_tilde(&w("2 1[1]", 3, 2)), 4);
    }

    #[test]
    fn identity_is_zero() {
        let id = ColoredPermutation::identity(GroupParams::new(3, 4).unwrap());
        assert_eq!(StatRow::of(&id).to_csv(), "1 2 3 4,0,0,0,0,0,");
    }

    #[test]
    fn reversal_has_max_inversions() {
        for n in 0..8u32 {
            let rev: Vec<u32> = (1..=n).rev().collect();
            assert_eq!(inv(&rev), (n * n.saturating_sub(1) / 2) as u64);
        }
    }

    #[test]
    fn cedance_example() {
        let word = ColoredWord::parse("2 1[1] 3 4[2] 5 7 6[2]", 3, 7).unwrap();
        let s = subcedants_excedants(&word);
        assert_eq!(s.subcedants, vec![2, 4, 7]);
        assert_eq!(s.excedants, vec![1, 6]);
        assert_eq!(s.fixed, vec![3, 5]);
    }

    #[test]
    fn colored_letter_at_own_position_is_subcedant() {
        let p = w("1[1] 2[2] 3[1]", 3, 3);
        assert_eq!(subcedants_excedants(&p).subcedants, vec![1, 2, 3]);
    }

    #[test]
    fn cedance_partition_and_c1_specialization() {
        for c in 1..=3 {
            for n in 0..=4 {
                let params = GroupParams::new(c, n).unwrap();
                for p in enumerate_group(params, 10_000).unwrap() {
                    let s = subcedants_excedants(&p);
                    assert_eq!(
                        s.subcedants.len() + s.excedants.len() + s.fixed.len(),
                        n as usize
                    );
                    assert_eq!(s.fixed, p.fixed_points());
                    if c == 1 {
                        assert_eq!(fmaj(&p), maj(&p));
                        assert_eq!(length(&p), inv(&p.underlying()));
                    }
                }
            }
        }
    }

    #[test]
    fn stat_row_csv() {
        let row = StatRow::of(&w("2[3] 1[1] 3 4[2] 5", 4, 5));
        assert_eq!(row.to_csv(), "2[3] 1[1] 3 4[2] 5,19,18,10,3,6,3");
        assert_eq!(row.to_string(), "L=19 fmaj=18 inv~=10 maj=3 col=6 Des={3}");
    }
}
