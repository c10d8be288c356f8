//! Closed-form counts of Sturmian words and Sturmian palindromes, the
//! geometric line constructions behind them, and brute-force oracles.

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{enumerate_grid_lines, z_count, GridLine, GridPoint};
use crate::mapping::{image_cardinality, through_all_word};
use crate::words::{is_balanced, is_palindrome, Word};

/// Default exhaustive bound for [`brute_force_census`].
pub const BRUTE_LIMIT: usize = 20;

/// Euler's totient by trial factorization.
pub fn totient(k: u64) -> u64 {
    assert!(k >= 1, "totient is defined for k >= 1");
    let mut rest = k;
    let mut phi = k;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    phi
}

/// `1 + Σ_{k=1}^{n} (n+1−k)·φ(k)`; equals 1 for `n = 0`.
pub fn sturmian_count(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| {
        acc + BigUint::from(n + 1 - k) * BigUint::from(totient(k))
    })
}

/// `1 + Σ_{k=0}^{⌈n/2⌉−1} φ(n−2k)`; equals 1 for `n = 0`.
pub fn palindrome_count(n: u64) -> BigUint {
    (0..n.div_ceil(2)).fold(BigUint::from(1u32), |acc, k| acc + totient(n - 2 * k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotientIdentity {
    pub n: usize,
    /// `Σ (Z_n(ℓ) − 1)` over lines with slope in `(0,1]`, intercept in `[0,1)`.
    pub lhs: BigUint,
    /// `Σ_{i=1}^{n} Σ_{j=1}^{i} φ(j)`.
    pub rhs: BigUint,
}

impl TotientIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn positive_slope_proper_intercept(l: &GridLine) -> bool {
    l.b() >= 1 && l.c() < l.a()
}

pub fn totient_sum_identity(n: usize) -> TotientIdentity {
    let lhs = enumerate_grid_lines(n)
        .iter()
        .filter(|l| positive_slope_proper_intercept(l))
        .map(|l| (z_count(l, n) - 1) as u64)
        .sum::<u64>();
    let mut rhs = BigUint::from(0u32);
    let mut inner = 0u64;
    for i in 1..=n as u64 {
        inner += totient(i);
        rhs += inner;
    }
    TotientIdentity {
        n,
        lhs: lhs.into(),
        rhs,
    }
}

/// Number of Sturmian words of length `n` as `Σ |m(ℓ)|` over `L_n`, using
/// the closed-form image sizes.
pub fn geometric_count(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    enumerate_grid_lines(n)
        .iter()
        .map(|l| image_cardinality(l, n).map(|c| c as u64))
        .sum::<Result<u64>>()
        .map(BigUint::from)
}

/// `1 + Σ (Z_n(ℓ) − 1)` over lines with slope in `(0,1]` and intercept in
/// `[0,1)`, the regrouped form of the geometric sum.
pub fn regrouped_count(n: usize) -> BigUint {
    totient_sum_identity(n).lhs + 1u32
}

/// A line whose through-all-points word is a palindrome, with the
/// parameters it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PalindromeLine {
    pub line: GridLine,
    pub leftmost: GridPoint,
    pub i: i64,
    pub a: i64,
    pub b: i64,
}

/// Modular inverse of `x` modulo `m`, if it exists.
fn mod_inverse(x: i64, m: i64) -> Option<i64> {
    let e = x.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// Lines of `P_n`, grouped by the x-coordinate `i` of their leftmost integer
/// point. For each `i < ⌈n/2⌉` and each `a ∈ [i+1, n−i]` coprime to `n−2i`,
/// the slope numerator solves `b(n−2i) ≡ −1 (mod a)` and the leftmost point
/// is `(i, ⌈bi/a⌉)`.
pub fn palindrome_lines(n: usize) -> Vec<PalindromeLine> {
    let n = n as i64;
    let mut out = Vec::new();
    for i in 0..(n + 1) / 2 {
        let m = n - 2 * i;
        for a in i + 1..=n - i {
            let Some(inv) = mod_inverse(m, a) else {
                continue;
            };
            let b = (-inv).rem_euclid(a);
            let j = (b * i + a - 1) / a;
            let c = a * j - b * i;
            let line = GridLine::new(a, b, c).expect("palindrome line parameters are canonical");
            out.push(PalindromeLine {
                line,
                leftmost: GridPoint { x: i, y: j },
                i,
                a,
                b,
            });
        }
    }
    out
}

/// Every Sturmian palindrome of length `n`: the through-all-points words of
/// the palindrome lines followed by `1^n`.
pub fn palindrome_words(n: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for pl in palindrome_lines(n) {
        let w = through_all_word(&pl.line, n).ok_or_else(|| {
            Error::Consistency(format!("palindrome line {} has no through-all word", pl.line))
        })?;
        if !is_palindrome(&w) {
            return Err(Error::Consistency(format!(
                "through-all word {w} of {} is not a palindrome",
                pl.line
            )));
        }
        out.push(w);
    }
    if n >= 1 {
        out.push(Word::repeat(1, n));
    } else {
        out.push(Word::empty());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteCensus {
    pub sturmian: u64,
    pub palindromic: u64,
    /// Balanced words of length `n` in lexicographic order.
    pub words: Vec<Word>,
}

impl BruteCensus {
    pub fn palindromes(&self) -> impl Iterator<Item = &Word> {
        self.words.iter().filter(|w| is_palindrome(w))
    }
}

pub fn brute_force_census(n: usize) -> Result<BruteCensus> {
    brute_force_census_with_limit(n, BRUTE_LIMIT)
}

pub fn brute_force_census_with_limit(n: usize, limit: usize) -> Result<BruteCensus> {
    if n > limit || n >= 63 {
        return Err(Error::AboveLimit {
            what: "brute-force census",
            n,
            limit,
        });
    }
    let words: Vec<Word> = (0..1u64 << n)
        .into_par_iter()
        .map(|bits| Word::from_bits(bits, n))
        .filter(is_balanced)
        .collect();
    let palindromic = words.iter().filter(|w| is_palindrome(w)).count() as u64;
    Ok(BruteCensus {
        sturmian: words.len() as u64,
        palindromic,
        words,
    })
}
