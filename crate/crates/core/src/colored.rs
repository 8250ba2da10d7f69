//! Colored letters, colored permutations and colored words.
//!
//! A colored permutation of degree `n` with `c` colors is a word
//! `π_1^{[t_1]} … π_n^{[t_n]}` whose underlying values form a permutation of
//! `1..=n` and whose colors lie in `0..c`. Letters are compared in the flag
//! order: a larger color is smaller, and letters of equal color compare by
//! value, so that
//!
//! ```text
//! 1^{[c-1]} < … < n^{[c-1]} < … < 1^{[1]} < … < n^{[1]} < 1 < … < n
//! ```
//!
//! The text form used throughout the crate writes color 0 as the bare value
//! and any other color as `v[t]`, e.g. `2[3] 1[1] 3 4[2] 5`.

use std::cmp::{Ordering, Reverse};
use std::fmt;

use crate::error::{Error, ParseError, Result};

/// A single letter `value^{[color]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoredLetter {
    pub value: u32,
    pub color: u32,
}

impl ColoredLetter {
    pub const fn new(value: u32, color: u32) -> Self {
        Self { value, color }
    }

    pub const fn plain(value: u32) -> Self {
        Self { value, color: 0 }
    }

    fn order_key(&self) -> (Reverse<u32>, u32) {
        (Reverse(self.color), self.value)
    }
}

impl Ord for ColoredLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for ColoredLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColoredLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.color == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{}[{}]", self.value, self.color)
        }
    }
}

/// The pair `(c, n)` naming the group `G_{c,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupParams {
    pub colors: u32,
    pub degree: u32,
}

impl GroupParams {
    pub fn new(colors: u32, degree: u32) -> Result<Self> {
        if colors == 0 {
            return Err(Error::InvalidArgument(
                "number of colors must be at least 1".into(),
            ));
        }
        Ok(Self { colors, degree })
    }

    /// `cⁿ·n!`, or `None` if it does not fit in 128 bits.
    pub fn order(&self) -> Option<u128> {
        let mut size: u128 = 1;
        for i in 1..=self.degree as u128 {
            size = size.checked_mul(i)?.checked_mul(self.colors as u128)?;
        }
        Some(size)
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.colors, self.degree)
    }
}

/// Position of a letter in the flag order, `(c-1-color)·n + (value-1)`.
///
/// Ranges over `0..c·n`; `1^{[c-1]}` has rank 0 and the uncolored `n` has
/// rank `c·n - 1`.
pub fn letter_rank(letter: ColoredLetter, params: GroupParams) -> u32 {
    (params.colors - 1 - letter.color) * params.degree + (letter.value - 1)
}

/// Anything that is a sequence of colored letters over a fixed number of colors.
pub trait ColoredSequence {
    fn letters(&self) -> &[ColoredLetter];
    fn colors(&self) -> u32;

    fn len(&self) -> usize {
        self.letters().len()
    }

    fn is_empty(&self) -> bool {
        self.letters().is_empty()
    }

    /// The color-stripped word `|π|`.
    fn underlying(&self) -> Vec<u32> {
        self.letters().iter().map(|l| l.value).collect()
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[ColoredLetter]) -> fmt::Result {
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// An element of `G_{c,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPermutation {
    colors: u32,
    letters: Vec<ColoredLetter>,
}

impl ColoredPermutation {
    pub fn new(colors: u32, letters: Vec<ColoredLetter>) -> Result<Self> {
        let n = letters.len() as u32;
        validate_letters(&letters, colors, n)?;
        Ok(Self { colors, letters })
    }

    /// Builds without validation; callers must uphold the invariants.
    pub(crate) fn from_parts_unchecked(colors: u32, letters: Vec<ColoredLetter>) -> Self {
        debug_assert!(validate_letters(&letters, colors, letters.len() as u32).is_ok());
        Self { colors, letters }
    }

    pub fn identity(params: GroupParams) -> Self {
        let letters = (1..=params.degree).map(ColoredLetter::plain).collect();
        Self {
            colors: params.colors,
            letters,
        }
    }

    pub fn degree(&self) -> u32 {
        self.letters.len() as u32
    }

    pub fn params(&self) -> GroupParams {
        GroupParams {
            colors: self.colors,
            degree: self.degree(),
        }
    }

    pub(crate) fn letters_mut(&mut self) -> &mut [ColoredLetter] {
        &mut self.letters
    }

    /// Group inverse: if position `i` holds `π_i^{[t_i]}`, the inverse holds
    /// `i^{[-t_i mod c]}` at position `π_i`.
    pub fn inverse(&self) -> Self {
        let c = self.colors;
        let mut letters = vec![ColoredLetter::plain(0); self.letters.len()];
        for (i, l) in self.letters.iter().enumerate() {
            letters[(l.value - 1) as usize] = ColoredLetter::new(i as u32 + 1, (c - l.color) % c);
        }
        Self { colors: c, letters }
    }

    /// 1-based positions `i` holding the uncolored letter `i`.
    ///
    /// A colored letter sitting at its own position is not a fixed point.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(i, l)| l.color == 0 && l.value as usize == i + 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_derangement(&self) -> bool {
        self.letters
            .iter()
            .enumerate()
            .all(|(i, l)| l.color != 0 || l.value as usize != i + 1)
    }

    /// Parses the whitespace-separated text form, e.g. `"2[3] 1[1] 3 4[2] 5"`.
    pub fn parse(text: &str, params: GroupParams) -> Result<Self, ParseError> {
        let letters = parse_letters(text, params.colors, params.degree)?;
        if letters.len() != params.degree as usize {
            return Err(ParseError::WrongLength {
                found: letters.len(),
                expected: params.degree,
            });
        }
        Ok(Self {
            colors: params.colors,
            letters,
        })
    }
}

impl ColoredSequence for ColoredPermutation {
    fn letters(&self) -> &[ColoredLetter] {
        &self.letters
    }

    fn colors(&self) -> u32 {
        self.colors
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

/// Parses a colored permutation; see [`ColoredPermutation::parse`].
pub fn parse_word(text: &str, params: GroupParams) -> Result<ColoredPermutation, ParseError> {
    ColoredPermutation::parse(text, params)
}

/// Canonical text form; inverse of [`parse_word`].
pub fn format_word(word: &impl ColoredSequence) -> String {
    let mut out = String::new();
    for (i, l) in word.letters().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&l.to_string());
    }
    out
}

/// A word of colored letters with distinct values drawn from `1..=ambient_n`.
///
/// Unlike [`ColoredPermutation`], the value set need not be `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredWord {
    colors: u32,
    ambient_n: u32,
    letters: Vec<ColoredLetter>,
}

impl ColoredWord {
    pub fn new(colors: u32, ambient_n: u32, letters: Vec<ColoredLetter>) -> Result<Self> {
        validate_letters(&letters, colors, ambient_n)?;
        Ok(Self {
            colors,
            ambient_n,
            letters,
        })
    }

    pub(crate) fn from_parts_unchecked(
        colors: u32,
        ambient_n: u32,
        letters: Vec<ColoredLetter>,
    ) -> Self {
        debug_assert!(validate_letters(&letters, colors, ambient_n).is_ok());
        Self {
            colors,
            ambient_n,
            letters,
        }
    }

    pub fn ambient_n(&self) -> u32 {
        self.ambient_n
    }

    /// Parses the same grammar as [`parse_word`] without requiring the values
    /// to be exactly `1..=k`.
    pub fn parse(text: &str, colors: u32, ambient_n: u32) -> Result<Self, ParseError> {
        let letters = parse_letters(text, colors, ambient_n)?;
        Ok(Self {
            colors,
            ambient_n,
            letters,
        })
    }

    /// Views a colored permutation of degree `k ≤ ambient_n` as a word.
    pub fn from_permutation(perm: &ColoredPermutation, ambient_n: u32) -> Result<Self> {
        if perm.degree() > ambient_n {
            return Err(Error::InvalidArgument(format!(
                "degree {} exceeds ambient size {ambient_n}",
                perm.degree()
            )));
        }
        Ok(Self {
            colors: perm.colors,
            ambient_n,
            letters: perm.letters.clone(),
        })
    }

    /// Returns the word as a colored permutation when its values are exactly `1..=len`.
    pub fn to_permutation(&self) -> Option<ColoredPermutation> {
        ColoredPermutation::new(self.colors, self.letters.clone()).ok()
    }
}

impl ColoredSequence for ColoredWord {
    fn letters(&self) -> &[ColoredLetter] {
        &self.letters
    }

    fn colors(&self) -> u32 {
        self.colors
    }
}

impl fmt::Display for ColoredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

fn validate_letters(
    letters: &[ColoredLetter],
    colors: u32,
    max_value: u32,
) -> Result<(), ParseError> {
    let mut seen = vec![false; max_value as usize + 1];
    for l in letters {
        if l.value == 0 || l.value > max_value {
            return Err(ParseError::ValueOutOfRange {
                value: l.value as u64,
                n: max_value,
            });
        }
        if l.color >= colors {
            return Err(ParseError::ColorOutOfRange {
                color: l.color as u64,
                colors,
            });
        }
        if std::mem::replace(&mut seen[l.value as usize], true) {
            return Err(ParseError::RepeatedValue(l.value));
        }
    }
    Ok(())
}

fn parse_number(digits: &str, token: &str) -> Result<u64, ParseError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::MalformedToken(token.to_string()));
    }
    // Absurdly long digit strings are out of range rather than malformed.
    Ok(digits.parse::<u64>().unwrap_or(u64::MAX))
}

fn parse_token(token: &str, colors: u32, max_value: u32) -> Result<ColoredLetter, ParseError> {
    let (value_digits, color) = match token.find('[') {
        None => (token, 0),
        Some(open) => {
            let rest = &token[open + 1..];
            let color_digits = rest
                .strip_suffix(']')
                .ok_or_else(|| ParseError::MalformedToken(token.to_string()))?;
            (&token[..open], parse_number(color_digits, token)?)
        }
    };
    let value = parse_number(value_digits, token)?;
    if value == 0 || value > max_value as u64 {
        return Err(ParseError::ValueOutOfRange {
            value,
            n: max_value,
        });
    }
    if color >= colors as u64 {
        return Err(ParseError::ColorOutOfRange { color, colors });
    }
    Ok(ColoredLetter::new(value as u32, color as u32))
}

fn parse_letters(
    text: &str,
    colors: u32,
    max_value: u32,
) -> Result<Vec<ColoredLetter>, ParseError> {
    let letters = text
        .split_whitespace()
        .map(|tok| parse_token(tok, colors, max_value))
        .collect::<Result<Vec<_>, _>>()?;
    validate_letters(&letters, colors, max_value)?;
    Ok(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c: u32, n: u32) -> GroupParams {
        GroupParams::new(c, n).unwrap()
    }

    #[test]
    fn parses_running_example() {
        let p = parse_word("2[3] 1[1] 3 4[2] 5", g(4, 5)).unwrap();
        assert_eq!(p.underlying(), vec![2, 1, 3, 4, 5]);
        let colors: Vec<u32> = p.letters().iter().map(|l| l.color).collect();
        assert_eq!(colors, vec![3, 1, 0, 2, 0]);
    }

    #[test]
    fn parses_identity() {
        let p = parse_word("1 2 3", g(3, 3)).unwrap();
        assert_eq!(p, ColoredPermutation::identity(g(3, 3)));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_word("2[3] 2[1]", g(4, 2)),
            Err(ParseError::RepeatedValue(2))
        );
        assert!(matches!(
            parse_word("1 3", g(4, 2)),
            Err(ParseError::ValueOutOfRange { value: 3, .. })
        ));
        assert!(matches!(
            parse_word("1[4] 2", g(4, 2)),
            Err(ParseError::ColorOutOfRange { color: 4, .. })
        ));
        for bad in ["1[ 2", "1[] 2", "x 2", "1[2 2", "[1] 2", "1]2"] {
            assert!(
                matches!(parse_word(bad, g(4, 2)), Err(ParseError::MalformedToken(_))),
                "{bad}"
            );
        }
        assert!(matches!(
            parse_word("1", g(4, 2)),
            Err(ParseError::WrongLength {
                found: 1,
                expected: 2
            })
        ));
        assert!(matches!(
            parse_word("0 1", g(4, 2)),
            Err(ParseError::ValueOutOfRange { value: 0, .. })
        ));
    }

    #[test]
    fn empty_word() {
        let p = parse_word("", g(1, 0)).unwrap();
        assert_eq!(p.degree(), 0);
        assert_eq!(format_word(&p), "");
    }

    #[test]
    fn formats() {
        assert_eq!(format_word(&ColoredPermutation::identity(g(3, 2))), "1 2");
        let p = parse_word("2[3]   1[3]", g(4, 2)).unwrap();
        assert_eq!(format_word(&p), "2[3] 1[3]");
        assert_eq!(p.to_string(), "2[3] 1[3]");
    }

    #[test]
    fn rank_matches_total_order() {
        let p = g(4, 5);
        assert_eq!(letter_rank(ColoredLetter::new(1, 3), p), 0);
        assert_eq!(letter_rank(ColoredLetter::plain(5), p), 19);
        let a = ColoredLetter::new(4, 2);
        let b = ColoredLetter::plain(3);
        assert_eq!(letter_rank(a, p), 8);
        assert_eq!(letter_rank(b, p), 17);
        assert!(a < b);
        for c in 1..=4 {
            for n in 1..=4 {
                let p = g(c, n);
                let mut all: Vec<ColoredLetter> = (0..c)
                    .flat_map(|t| (1..=n).map(move |v| ColoredLetter::new(v, t)))
                    .collect();
                all.sort();
                let ranks: Vec<u32> = all.iter().map(|&l| letter_rank(l, p)).collect();
                assert_eq!(ranks, (0..c * n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn fixed_points_and_derangements() {
        let p = parse_word("2[3] 1[1] 3 4[2] 5", g(4, 5)).unwrap();
        assert_eq!(p.fixed_points(), vec![3, 5]);
        assert!(!p.is_derangement());
        let id = ColoredPermutation::identity(g(2, 4));
        assert_eq!(id.fixed_points(), vec![1, 2, 3, 4]);
        assert!(!id.is_derangement());
        let swap = parse_word("2 1", g(4, 2)).unwrap();
        assert!(swap.fixed_points().is_empty());
        let colored = parse_word("1[1] 2[1]", g(4, 2)).unwrap();
        assert!(colored.is_derangement());
    }

    #[test]
    fn inverse_examples() {
        let id = ColoredPermutation::identity(g(3, 3));
        assert_eq!(id.inverse(), id);
        let p = parse_word("2[3] 1[1] 3 4[2] 5", g(4, 5)).unwrap();
        assert_eq!(p.inverse().to_string(), "2[3] 1[1] 3 4[2] 5");
        let q = parse_word("3[1] 1 2[2]", g(3, 3)).unwrap();
        assert_eq!(q.inverse().to_string(), "2 3[1] 1[2]");
    }

    #[test]
    fn word_from_arbitrary_values() {
        let w = ColoredWord::parse("7 2[1] 5", 2, 7).unwrap();
        assert_eq!(w.to_string(), "7 2[1] 5");
        assert!(w.to_permutation().is_none());
        assert!(ColoredWord::parse("8", 2, 7).is_err());
    }
}
