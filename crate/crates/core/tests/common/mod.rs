//! Fixture loading and brute-force oracles shared by the integration tests.
//!
//! The oracles work on plain `(value, color)` pairs and `Vec<i64>`
//! coefficient lists so that they share no code with the library.

#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

pub type Letter = (u32, u32);

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub word: String,
    pub length: Option<u64>,
    pub fmaj: u64,
    pub inv_tilde: u64,
}

/// Reads a table fixture, replacing misprinted words listed in `errata`.
pub fn load_table(name: &str, errata: Option<&str>) -> Vec<TableRow> {
    let mut fixes = HashMap::new();
    if let Some(errata) = errata {
        let mut r = csv::Reader::from_path(fixture(errata)).unwrap();
        for rec in r.records() {
            let rec = rec.unwrap();
            fixes.insert(rec[0].to_string(), (rec[1].to_string(), rec[2].to_string()));
        }
    }
    let mut r = csv::Reader::from_path(fixture(name)).unwrap();
    let headers = r.headers().unwrap().clone();
    let col = |h: &str| headers.iter().position(|x| x == h);
    let (word, len, fm, it, rank) = (
        col("word").unwrap(),
        col("L"),
        col("fmaj").unwrap(),
        col("inv_tilde").unwrap(),
        col("rank"),
    );
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.unwrap();
        let mut w = rec[word].to_string();
        if let Some((printed, corrected)) = rank.and_then(|i| fixes.get(&rec[i])) {
            assert_eq!(&w, printed, "erratum does not match the printed word");
            w = corrected.clone();
        }
        rows.push(TableRow {
            word: w,
            length: len.map(|i| rec[i].parse().unwrap()),
            fmaj: rec[fm].parse().unwrap(),
            inv_tilde: rec[it].parse().unwrap(),
        });
    }
    rows
}

/// Every colored permutation of `[n]` with colors `< c`, by recursion.
pub fn oracle_group(c: u32, n: u32) -> Vec<Vec<Letter>> {
    fn go(
        c: u32,
        n: u32,
        prefix: &mut Vec<Letter>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if prefix.len() == n as usize {
            out.push(prefix.clone());
            return;
        }
        for v in 1..=n {
            if used[v as usize] {
                continue;
            }
            used[v as usize] = true;
            for t in 0..c {
                prefix.push((v, t));
                go(c, n, prefix, used, out);
                prefix.pop();
            }
            used[v as usize] = false;
        }
    }
    let mut out = Vec::new();
    go(
        c,
        n,
        &mut Vec::new(),
        &mut vec![false; n as usize + 1],
        &mut out,
    );
    out
}

/// Total order key: `v - n·t`, so any colored letter sits below every plain one.
fn key(l: Letter, n: u32) -> i64 {
    l.0 as i64 - (n as i64 + 1) * l.1 as i64
}

pub fn oracle_fmaj(w: &[Letter], c: u32) -> u64 {
    let n = w.len() as u32;
    let maj: u64 = (1..w.len())
        .filter(|&i| key(w[i - 1], n) > key(w[i], n))
        .map(|i| i as u64)
        .sum();
    c as u64 * maj + w.iter().map(|l| l.1 as u64).sum::<u64>()
}

pub fn oracle_inv(w: &[Letter]) -> u64 {
    let mut k = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i].0 > w[j].0 {
                k += 1;
            }
        }
    }
    k
}

pub fn oracle_length(w: &[Letter], c: u32) -> u64 {
    let col: u64 = w.iter().map(|l| l.1 as u64).sum();
    let mut middle = 0;
    for j in 0..w.len() {
        if w[j].1 != 0 {
            middle += (0..j).filter(|&i| w[i].0 < w[j].0).count() as u64;
        }
    }
    col + c as u64 * middle + oracle_inv(w)
}

pub fn oracle_is_derangement(w: &[Letter]) -> bool {
    w.iter().enumerate().all(|(i, l)| *l != (i as u32 + 1, 0))
}

/// Coefficient-list polynomial helpers.
pub fn pmul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `[m]_{±q}` as a coefficient list.
pub fn qint(m: usize, negate: bool) -> Vec<i64> {
    (0..m)
        .map(|i| if negate && i % 2 == 1 { -1 } else { 1 })
        .collect()
}

/// `Π_{i=1..n} [ci]_{ε_i q}` with `ε_i = -` where `minus(i)`.
pub fn signed_product(c: usize, n: usize, minus: impl Fn(usize) -> bool) -> Vec<i64> {
    (1..=n).fold(vec![1], |acc, i| pmul(&acc, &qint(c * i, minus(i))))
}

/// `Σ sign(w) q^{weight(w)}` over a list of words.
pub fn distribution(
    words: &[Vec<Letter>],
    weight: impl Fn(&[Letter]) -> u64,
    sign: impl Fn(&[Letter]) -> i64,
) -> Vec<i64> {
    let mut out = Vec::new();
    for w in words {
        let e = weight(w) as usize;
        if e >= out.len() {
            out.resize(e + 1, 0);
        }
        out[e] += sign(w);
    }
    trim(out)
}

/// Converts a library polynomial to a coefficient list.
pub fn coeffs(p: &mahonian::qpoly::IntPolynomial) -> Vec<i64> {
    p.coeffs()
        .iter()
        .map(|c| i64::try_from(c).unwrap())
        .collect()
}

pub fn format_letters(w: &[Letter]) -> String {
    w.iter()
        .map(|&(v, t)| {
            if t == 0 {
                v.to_string()
            } else {
                format!("{v}[{t}]")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
