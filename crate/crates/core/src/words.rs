//! Binary words and the purely combinatorial operations on them.
//!
//! A [`Word`] is a finite sequence over `{0,1}`. Its broken line starts at the
//! origin and takes a diagonal step for every `1` and a horizontal step for
//! every `0`; [`Word::height`] is the height of that path.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from raw letters. Every entry must be 0 or 1.
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l > 1) {
            return Err(Error::InvalidLetter(char::from(b'0'.wrapping_add(bad))));
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&l| l <= 1));
        Word(letters)
    }

    /// The word whose bits, most significant first, spell `bits` in `len` letters.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        Word((0..len).map(|k| ((bits >> (len - 1 - k)) & 1) as u8).collect())
    }

    pub fn repeat(letter: u8, len: usize) -> Self {
        assert!(letter <= 1);
        Word(vec![letter; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&l| l == 1).count()
    }

    /// Number of 1s among the first `k` letters.
    pub fn height(&self, k: usize) -> usize {
        self.0[..k].iter().filter(|&&l| l == 1).count()
    }

    /// Heights at x = 0..=len.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut h = 0i64;
        out.push(h);
        for &l in &self.0 {
            h += i64::from(l);
            out.push(h);
        }
        out
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&l| if l == 1 { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn reverse(w: &Word) -> Word {
    Word(w.0.iter().rev().copied().collect())
}

pub fn is_palindrome(w: &Word) -> bool {
    let n = w.0.len();
    (0..n / 2).all(|k| w.0[k] == w.0[n - 1 - k])
}

/// Sorted start positions of every occurrence of `u` in `host`.
pub fn occurrences(host: &Word, u: &Word) -> Result<Vec<usize>> {
    if u.is_empty() {
        return Err(Error::EmptyFactor);
    }
    Ok(host
        .0
        .windows(u.len())
        .enumerate()
        .filter(|(_, win)| *win == u.letters())
        .map(|(i, _)| i)
        .collect())
}

/// Occurrence positions of every length-`len` factor of `host`, in one pass.
pub fn factor_occurrences(host: &Word, len: usize) -> HashMap<&[u8], Vec<usize>> {
    let mut map: HashMap<&[u8], Vec<usize>> = HashMap::new();
    if len == 0 {
        return map;
    }
    for (i, win) in host.0.windows(len).enumerate() {
        map.entry(win).or_default().push(i);
    }
    map
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnWords {
    /// One return word per pair of consecutive occurrences, in order.
    pub sequence: Vec<Word>,
    pub distinct: BTreeSet<Word>,
}

/// Return words of `u` between consecutive occurrences in `host`. The tail
/// after the last occurrence is ignored.
pub fn return_words_in(host: &Word, u: &Word) -> Result<ReturnWords> {
    let positions = occurrences(host, u)?;
    returns_from_positions(host, u, &positions)
}

pub(crate) fn returns_from_positions(
    host: &Word,
    u: &Word,
    positions: &[usize],
) -> Result<ReturnWords> {
    if positions.len() < 2 {
        return Err(Error::TooFewOccurrences {
            factor: u.to_string(),
            found: positions.len(),
        });
    }
    let sequence: Vec<Word> = positions
        .windows(2)
        .map(|p| host.slice(p[0], p[1]))
        .collect();
    let distinct = sequence.iter().cloned().collect();
    Ok(ReturnWords { sequence, distinct })
}

/// Balance oracle: any two factors of equal length differ by at most one in
/// their number of 1s.
pub fn is_balanced(w: &Word) -> bool {
    let n = w.len();
    let prefix = w.heights();
    for len in 1..n {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for start in 0..=n - len {
            let ones = prefix[start + len] - prefix[start];
            lo = lo.min(ones);
            hi = hi.max(ones);
        }
        if hi - lo > 1 {
            return false;
        }
    }
    true
}

/// First `n` letters of the fixed point of 0 -> 01, 1 -> 0.
pub fn fibonacci_prefix(n: usize) -> Word {
    let mut cur = vec![0u8];
    while cur.len() < n {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for &l in &cur {
            if l == 0 {
                next.extend_from_slice(&[0, 1]);
            } else {
                next.push(0);
            }
        }
        cur = next;
    }
    cur.truncate(n);
    Word(cur)
}
