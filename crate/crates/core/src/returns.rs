//! Return words in mechanical words of grid lines.
//!
//! For the line `y = (bx + c)/a` the factor of length `len` starting at
//! position `i` depends only on the start residue `(b·i + c) mod a`. The
//! residues producing a given factor `u` form one interval `[c1, c2]`, and
//! lifting the line by `1/a` turns the occurrences starting at residue `r`
//! into those starting at `r + 1`, changing the word only at the upper end
//! `c2`. That is why a factor has at most two distinct return words.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{floor_word, GridLine};
use crate::words::{factor_occurrences, fibonacci_prefix, occurrences, returns_from_positions, Word};

/// Cyclic interval of residues modulo `a`, from `c1` up to `c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueInterval {
    #[serde(skip)]
    pub a: i64,
    pub c1: i64,
    pub c2: i64,
    pub wraps: bool,
}

impl ResidueInterval {
    pub fn contains(&self, r: i64) -> bool {
        let r = r.rem_euclid(self.a);
        if self.wraps {
            r >= self.c1 || r <= self.c2
        } else {
            (self.c1..=self.c2).contains(&r)
        }
    }

    pub fn len(&self) -> i64 {
        (self.c2 - self.c1).rem_euclid(self.a) + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Result of scanning every residue `c' ∈ [0, a)` for a factor `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueScan {
    pub a: i64,
    pub b: i64,
    pub factor: Word,
    /// Residues whose line represents `u`, ascending.
    pub residues: Vec<i64>,
    /// `None` when no residue represents `u`.
    pub interval: Option<ResidueInterval>,
    /// Representing residues whose line meets a point of height
    /// `≡ (a−1)/a (mod 1)` at some `x ∈ [0, |u|]`.
    pub contacts: Vec<i64>,
}

impl ResidueScan {
    /// The `(a−1)/a` contact happens exactly at the interval's upper end.
    pub fn contact_at_upper_end(&self) -> bool {
        match self.interval {
            Some(iv) => self.contacts == [iv.c2],
            None => self.contacts.is_empty(),
        }
    }
}

fn check_slope(a: i64, b: i64) -> Result<()> {
    if a < 1 || !(0..=a).contains(&b) || a.gcd(&b) != 1 {
        return Err(Error::OutOfRange(format!(
            "slope {b}/{a} must satisfy gcd(a,b) = 1 and 0 <= b <= a"
        )));
    }
    Ok(())
}

/// `(b·i + c) mod a`, the numerator of the start of the factor at `i`.
pub fn start_residue(l: &GridLine, i: usize) -> i64 {
    l.numerator_at(i as i64).rem_euclid(l.a())
}

/// The length-`len` word of `y = (bx + cprime)/a` on `0 ≤ x ≤ len`.
pub fn factor_from_residue(a: i64, b: i64, cprime: i64, len: usize) -> Result<Word> {
    check_slope(a, b)?;
    if !(0..a).contains(&cprime) {
        return Err(Error::OutOfRange(format!("residue {cprime} outside [0, {a})")));
    }
    Ok(floor_word(a, b, cprime, len))
}

/// Groups a residue set into one cyclic interval, if it is one.
fn as_cyclic_interval(a: i64, residues: &[i64]) -> Option<ResidueInterval> {
    if residues.is_empty() {
        return None;
    }
    if residues.len() as i64 == a {
        return Some(ResidueInterval {
            a,
            c1: 0,
            c2: a - 1,
            wraps: false,
        });
    }
    let member = |r: i64| residues.binary_search(&r.rem_euclid(a)).is_ok();
    let starts: Vec<i64> = residues.iter().copied().filter(|&r| !member(r - 1)).collect();
    let [c1] = starts.as_slice() else {
        return None;
    };
    let c2 = (c1 + residues.len() as i64 - 1).rem_euclid(a);
    Some(ResidueInterval {
        a,
        c1: *c1,
        c2,
        wraps: c2 < *c1,
    })
}

/// Scans all residues for `u` and checks they form one cyclic interval.
pub fn residue_interval(a: i64, b: i64, u: &Word) -> Result<ResidueScan> {
    check_slope(a, b)?;
    if u.is_empty() {
        return Err(Error::EmptyFactor);
    }
    let residues: Vec<i64> = (0..a)
        .filter(|&cp| floor_word(a, b, cp, u.len()) == *u)
        .collect();
    let interval = as_cyclic_interval(a, &residues);
    if interval.is_none() && !residues.is_empty() {
        return Err(Error::Consistency(format!(
            "residues {residues:?} representing {u} modulo {a} are not a cyclic interval"
        )));
    }
    let contacts = residues
        .iter()
        .copied()
        .filter(|&cp| (0..=u.len() as i64).any(|x| (b * x + cp).rem_euclid(a) == a - 1))
        .collect();
    Ok(ResidueScan {
        a,
        b,
        factor: u.clone(),
        residues,
        interval,
        contacts,
    })
}

/// The line lifted by `1/a`.
pub fn shift_up(l: &GridLine) -> Result<GridLine> {
    if l.c() >= l.a() {
        return Err(Error::CannotShift(l.to_string()));
    }
    GridLine::new(l.a(), l.b(), l.c() + 1)
}

/// Letter-wise comparison of the words of `l` and of `l` lifted by `1/a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftDelta {
    pub before: Word,
    pub after: Word,
    /// x-coordinates in `[0, n]` of the lifted line's integer points.
    pub crossings: Vec<i64>,
    /// Positions where the letters differ.
    pub positions: Vec<usize>,
    /// Positions `k` where `before[k..k+2] = 01` became `10`.
    pub swaps: Vec<usize>,
}

/// Compares the words before and after [`shift_up`]. Each integer point of
/// the lifted line at `0 < x < n` must turn `01` at `x−1, x` into `10`; a
/// point at `x = 0` turns the first letter from 1 to 0 and one at `x = n`
/// the last letter from 0 to 1. Any other difference is an error.
pub fn shifted_word_delta(l: &GridLine, n: usize) -> Result<ShiftDelta> {
    let up = shift_up(l)?;
    let before = floor_word(l.a(), l.b(), l.c(), n);
    let after = floor_word(up.a(), up.b(), up.c(), n);
    let crossings: Vec<i64> = (0..=n as i64).filter(|&x| up.is_grid_point(x)).collect();

    let mut expected: Vec<i64> = before.letters().iter().map(|&l| i64::from(l)).collect();
    let mut swaps = Vec::new();
    for &x in &crossings {
        let x = x as usize;
        if x < n {
            expected[x] -= 1;
        }
        if x > 0 {
            expected[x - 1] += 1;
        }
        if x > 0 && x < n {
            swaps.push(x - 1);
        }
    }
    let matches = expected
        .iter()
        .zip(after.letters())
        .all(|(&e, &l)| e == i64::from(l));
    let swaps_ok = swaps
        .iter()
        .all(|&k| before.letters()[k..k + 2] == [0, 1] && after.letters()[k..k + 2] == [1, 0]);
    if !matches || !swaps_ok {
        return Err(Error::Consistency(format!(
            "lifting {l} changes {before} into {after}, not by 01 -> 10 swaps at crossings {crossings:?}"
        )));
    }
    let positions = (0..n)
        .filter(|&k| before.letters()[k] != after.letters()[k])
        .collect();
    Ok(ShiftDelta {
        before,
        after,
        crossings,
        positions,
        swaps,
    })
}

/// The length-`n` word of a grid line: heights `⌊(bx + c)/a⌋`, so the
/// broken line passes through every integer point of the line.
pub fn line_word(l: &GridLine, n: usize) -> Word {
    floor_word(l.a(), l.b(), l.c(), n)
}

pub fn default_horizon(l: &GridLine, u: &Word) -> usize {
    4 * l.a() as usize + u.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnReport {
    pub factor: Word,
    pub line: GridLine,
    pub horizon: usize,
    pub occurrences: Vec<usize>,
    pub start_residues: Vec<i64>,
    pub interval: Option<ResidueInterval>,
    pub return_sequence: Vec<Word>,
    #[serde(rename = "returns")]
    pub distinct_returns: BTreeSet<Word>,
    /// Occurrences are exactly the positions whose start residue lies in
    /// the interval.
    pub residues_match: bool,
    pub contact_at_upper_end: bool,
    pub pass: bool,
}

/// Occurrences and returns of `u` in the word of `l` over `horizon` letters
/// (default `4a + |u|`), cross-checked against the residue interval.
pub fn returns_of_factor(l: &GridLine, u: &Word, horizon: Option<usize>) -> Result<ReturnReport> {
    let horizon = horizon.unwrap_or_else(|| default_horizon(l, u));
    let word = line_word(l, horizon);
    let positions = occurrences(&word, u)?;
    let rets = returns_from_positions(&word, u, &positions)?;
    let scan = residue_interval(l.a(), l.b(), u)?;
    let predicted: Vec<usize> = match scan.interval {
        Some(iv) if u.len() <= horizon => (0..=horizon - u.len())
            .filter(|&i| iv.contains(start_residue(l, i)))
            .collect(),
        _ => Vec::new(),
    };
    let residues_match = predicted == positions;
    let contact_at_upper_end = scan.contact_at_upper_end();
    let pass = residues_match && contact_at_upper_end && rets.distinct.len() <= 2;
    Ok(ReturnReport {
        factor: u.clone(),
        line: *l,
        horizon,
        start_residues: positions.iter().map(|&i| start_residue(l, i)).collect(),
        occurrences: positions,
        interval: scan.interval,
        return_sequence: rets.sequence,
        distinct_returns: rets.distinct,
        residues_match,
        contact_at_upper_end,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoReturnsReport {
    pub max_factor_len: usize,
    pub prefix_len: usize,
    /// Factors with at least three occurrences.
    pub checked: usize,
    /// Checked factors whose number of distinct returns is not two.
    pub failures: Vec<Word>,
    pub pass: bool,
}

/// Every factor of a Fibonacci prefix with at least three occurrences has
/// exactly two distinct return words.
pub fn verify_two_returns_aperiodic(max_factor_len: usize, prefix_len: usize) -> Result<TwoReturnsReport> {
    if prefix_len < 100 * max_factor_len {
        return Err(Error::OutOfRange(format!(
            "prefix length {prefix_len} must be at least 100 x {max_factor_len}"
        )));
    }
    let host = fibonacci_prefix(prefix_len);
    let per_len: Vec<(usize, Vec<Word>)> = (1..=max_factor_len)
        .into_par_iter()
        .map(|len| {
            let mut checked = 0;
            let mut failures = Vec::new();
            for (factor, positions) in factor_occurrences(&host, len) {
                if positions.len() < 3 {
                    continue;
                }
                checked += 1;
                let distinct: BTreeSet<&[u8]> = positions
                    .windows(2)
                    .map(|p| &host.letters()[p[0]..p[1]])
                    .collect();
                if distinct.len() != 2 {
                    failures.push(Word::from_letters(factor.to_vec()).expect("factor of a word"));
                }
            }
            failures.sort();
            (checked, failures)
        })
        .collect();
    let checked = per_len.iter().map(|(c, _)| c).sum();
    let failures: Vec<Word> = per_len.into_iter().flat_map(|(_, f)| f).collect();
    Ok(TwoReturnsReport {
        max_factor_len,
        prefix_len,
        checked,
        pass: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub max_a: i64,
    pub lines: usize,
    /// (line, factor) pairs checked.
    pub factors: usize,
    pub max_distinct_returns: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// For every line `y = (bx + c)/a` with `2 ≤ a ≤ max_a`, `1 ≤ b < a` coprime
/// and `0 ≤ c < a`, and every factor `u` with `|u| ≤ a` of its `4a`-letter
/// word: the occurrences of `u` are exactly the positions whose start residue
/// lies in the residue interval of `u`, that interval has its `(a−1)/a`
/// contact at `c2`, and `u` has at most two distinct return words.
pub fn verify_residue_correspondence(max_a: i64) -> Result<CorrespondenceReport> {
    let slopes: Vec<(i64, i64)> = (2..=max_a)
        .flat_map(|a| (1..a).filter(move |b| a.gcd(b) == 1).map(move |b| (a, b)))
        .collect();
    let parts = slopes
        .par_iter()
        .map(|&(a, b)| correspondence_for_slope(a, b))
        .collect::<Result<Vec<_>>>()?;
    let mut report = CorrespondenceReport {
        max_a,
        lines: 0,
        factors: 0,
        max_distinct_returns: 0,
        failures: Vec::new(),
        pass: false,
    };
    for part in parts {
        report.lines += part.lines;
        report.factors += part.factors;
        report.max_distinct_returns = report.max_distinct_returns.max(part.max_distinct_returns);
        report.failures.extend(part.failures);
    }
    report.pass = report.failures.is_empty();
    Ok(report)
}

fn correspondence_for_slope(a: i64, b: i64) -> Result<CorrespondenceReport> {
    let mut out = CorrespondenceReport {
        max_a: a,
        lines: 0,
        factors: 0,
        max_distinct_returns: 0,
        failures: Vec::new(),
        pass: false,
    };
    // Residue intervals depend on the slope only.
    let mut intervals: Vec<HashMap<Word, ResidueInterval>> = Vec::new();
    for len in 1..=a as usize {
        let mut factors: Vec<Word> = (0..a).map(|cp| floor_word(a, b, cp, len)).collect();
        factors.sort();
        factors.dedup();
        let mut by_factor = HashMap::new();
        for u in factors {
            match residue_interval(a, b, &u) {
                Ok(scan) => match scan.interval {
                    Some(iv) if scan.contact_at_upper_end() => {
                        by_factor.insert(u, iv);
                    }
                    _ => out.failures.push(format!(
                        "slope {b}/{a}, factor {u}: contacts {:?} not at the upper end",
                        scan.contacts
                    )),
                },
                Err(Error::Consistency(msg)) => out.failures.push(msg),
                Err(e) => return Err(e),
            }
        }
        intervals.push(by_factor);
    }

    let horizon = 4 * a as usize;
    for c in 0..a {
        let line = GridLine::new(a, b, c)?;
        let word = line_word(&line, horizon);
        let residues: Vec<i64> = (0..=horizon).map(|i| start_residue(&line, i)).collect();
        out.lines += 1;
        for (len, by_factor) in (1..=a as usize).zip(&intervals) {
            for (factor, positions) in factor_occurrences(&word, len) {
                out.factors += 1;
                let u = Word::from_letters_unchecked(factor.to_vec());
                let Some(iv) = by_factor.get(&u) else {
                    out.failures.push(format!("{line}: factor {u} has no representing residue"));
                    continue;
                };
                let predicted: Vec<usize> =
                    (0..=horizon - len).filter(|&i| iv.contains(residues[i])).collect();
                if predicted != positions {
                    out.failures.push(format!(
                        "{line}: factor {u} occurs at {positions:?}, residues predict {predicted:?}"
                    ));
                }
                let distinct: BTreeSet<&[u8]> = positions
                    .windows(2)
                    .map(|p| &word.letters()[p[0]..p[1]])
                    .collect();
                out.max_distinct_returns = out.max_distinct_returns.max(distinct.len());
                if distinct.len() > 2 {
                    out.failures.push(format!("{line}: factor {u} has {} returns", distinct.len()));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::make_grid_line;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sample_line() -> GridLine {
        make_grid_line(10, 3, 7).unwrap()
    }

    #[test]
    fn correspondence_small_slopes() {
        let report = verify_residue_correspondence(8).unwrap();
        assert!(report.pass, "{:?}", report.failures);
        // Slopes b/8 with b odd, plus all smaller denominators.
        let expected: i64 = (2..=8i64)
            .map(|a| a * (1..a).filter(|b| a.gcd(b) == 1).count() as i64)
            .sum();
        assert_eq!(report.lines as i64, expected);
        assert_eq!(report.max_distinct_returns, 2);
    }

    #[test]
    fn start_residue_examples() {
        assert_eq!(start_residue(&sample_line(), 0), 7);
        assert_eq!(start_residue(&sample_line(), 4), 9);
        let l = make_grid_line(5, 2, 3).unwrap();
        assert_eq!(start_residue(&l, 0), 3);
        assert_eq!(start_residue(&GridLine::ZERO, 9), 0);
    }

    #[test]
    fn factor_from_residue_examples() {
        assert_eq!(factor_from_residue(10, 3, 7, 3).unwrap(), w("100"));
        assert_eq!(factor_from_residue(10, 3, 9, 3).unwrap(), w("100"));
        assert_ne!(factor_from_residue(10, 3, 6, 3).unwrap(), w("100"));
        assert!(factor_from_residue(10, 4, 0, 3).is_err());
        assert!(factor_from_residue(10, 3, 10, 3).is_err());
    }

    #[test]
    fn residue_interval_examples() {
        let scan = residue_interval(10, 3, &w("100")).unwrap();
        let iv = scan.interval.unwrap();
        assert_eq!((iv.c1, iv.c2, iv.wraps), (7, 9, false));
        assert_eq!(scan.residues, vec![7, 8, 9]);
        assert!(scan.contact_at_upper_end());

        let scan = residue_interval(10, 3, &w("11")).unwrap();
        assert_eq!(scan.interval, None);
        assert!(scan.residues.is_empty());

        // Over slope 1/2 the residue 0 gives 01 and the residue 1 gives 10.
        let scan = residue_interval(2, 1, &w("01")).unwrap();
        let iv = scan.interval.unwrap();
        assert_eq!((iv.c1, iv.c2), (0, 0));
        assert!(scan.contact_at_upper_end());
    }

    #[test]
    fn cyclic_grouping() {
        let iv = as_cyclic_interval(10, &[0, 1, 8, 9]).unwrap();
        assert_eq!((iv.c1, iv.c2, iv.wraps), (8, 1, true));
        assert!(iv.contains(9) && iv.contains(0) && !iv.contains(5));
        assert_eq!(iv.len(), 4);
        assert!(as_cyclic_interval(10, &[1, 3]).is_none());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_up(&sample_line()).unwrap(), make_grid_line(10, 3, 8).unwrap());
        let delta = shifted_word_delta(&sample_line(), 17).unwrap();
        assert_eq!(delta.before, w("10001001001000100"));
        assert_eq!(delta.after, w("10010001001001000"));
        assert_eq!(delta.crossings, vec![4, 14]);
        assert_eq!(delta.swaps, vec![3, 13]);
        assert_eq!(delta.positions, vec![3, 4, 13, 14]);

        let half = make_grid_line(2, 1, 0).unwrap();
        assert_eq!(shift_up(&half).unwrap(), make_grid_line(2, 1, 1).unwrap());
        assert!(matches!(shift_up(&GridLine::ONE), Err(Error::CannotShift(_))));
    }

    #[test]
    fn shift_at_grid_boundaries() {
        // Lifting 3:1:2 puts an integer point at x = 0 and at x = 3.
        let l = make_grid_line(3, 1, 2).unwrap();
        let delta = shifted_word_delta(&l, 3).unwrap();
        assert_eq!(delta.crossings, vec![0, 3]);
        assert_eq!(delta.before, w("100"));
        assert_eq!(delta.after, w("001"));
        assert!(delta.swaps.is_empty());
    }

    #[test]
    fn returns_examples() {
        let r = returns_of_factor(&sample_line(), &w("100"), Some(17)).unwrap();
        assert_eq!(r.occurrences, vec![0, 4, 7, 10, 14]);
        assert_eq!(r.start_residues, vec![7, 9, 8, 7, 9]);
        assert_eq!(r.distinct_returns, [w("100"), w("1000")].into_iter().collect());
        assert!(r.pass);

        let half = make_grid_line(2, 1, 1).unwrap();
        let r = returns_of_factor(&half, &w("10"), Some(20)).unwrap();
        assert_eq!(r.distinct_returns.len(), 1);
        assert!(r.pass);

        let r = returns_of_factor(&sample_line(), &w("0"), None).unwrap();
        assert_eq!(r.distinct_returns, [w("0"), w("01")].into_iter().collect());
        assert!(r.pass);

        assert!(matches!(
            returns_of_factor(&sample_line(), &w("11"), Some(17)),
            Err(Error::TooFewOccurrences { .. })
        ));
    }

    #[test]
    fn two_returns_examples() {
        assert!(verify_two_returns_aperiodic(1, 100).unwrap().pass);
        assert!(verify_two_returns_aperiodic(10, 5000).unwrap().pass);
        assert!(verify_two_returns_aperiodic(10, 999).is_err());
    }
}
