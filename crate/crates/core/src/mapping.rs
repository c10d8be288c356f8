//! The map from grid lines to sets of Sturmian words.
//!
//! For a grid line `ℓ` and a length `n`, the image `m(ℓ)` holds the words of
//! defining lines that hug `ℓ` (no lattice point strictly between the two)
//! and pass just above a pair of `ℓ`'s integer points straddling `x = n/2`.
//! Such a defining line is above some leading run of `ℓ`'s integer points and
//! below the rest, or the other way round, so every image word is named by a
//! [`SplitSpec`]. The images over all lines of `L_n` partition the finite
//! Sturmian words of length `n`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    enumerate_grid_lines, grid_points, is_finite_sturmian, sample_defining_line, z_count,
    z_half, GridLine, GridPoint,
};
use crate::words::{is_balanced, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitMode {
    BelowFirst,
    AboveFirst,
}

/// `count` leading integer points of the line are on the `mode` side, the
/// remaining ones on the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitSpec {
    pub mode: SplitMode,
    pub count: usize,
}

impl SplitSpec {
    pub fn through_all(z: usize) -> Self {
        SplitSpec {
            mode: SplitMode::AboveFirst,
            count: z,
        }
    }

    fn is_above(&self, index: usize) -> bool {
        match self.mode {
            SplitMode::AboveFirst => index < self.count,
            SplitMode::BelowFirst => index >= self.count,
        }
    }
}

impl fmt::Display for SplitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            SplitMode::AboveFirst => "above-first",
            SplitMode::BelowFirst => "below-first",
        };
        write!(f, "{mode}({})", self.count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageEntry {
    pub word: Word,
    pub split: SplitSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageSet {
    pub line: GridLine,
    pub n: usize,
    pub entries: Vec<ImageEntry>,
}

impl ImageSet {
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.entries.iter().map(|e| &e.word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words().any(|x| x == w)
    }

    pub fn split_of(&self, w: &Word) -> Option<SplitSpec> {
        self.entries.iter().find(|e| &e.word == w).map(|e| e.split)
    }
}

fn check_member(l: &GridLine, n: usize) -> Result<()> {
    if n >= 1 && z_count(l, n) >= 2 {
        Ok(())
    } else {
        Err(Error::NotInLineSet {
            line: l.to_string(),
            n,
        })
    }
}

/// Builds the word of a split from the height function: off the line's
/// integer points `h(x) = ⌊(bx+c)/a⌋`; on them `h = y` when the defining
/// line passes above and `y − 1` when it passes below. Returns `None` when
/// some step is not 0 or 1, or the path does not start at height 0.
fn word_for_points(l: &GridLine, n: usize, points: &[GridPoint], split: SplitSpec) -> Option<Word> {
    let mut heights = Vec::with_capacity(n + 1);
    let mut next = points.iter().enumerate().peekable();
    for x in 0..=n as i64 {
        let h = match next.peek() {
            Some(&(idx, p)) if p.x == x => {
                next.next();
                if split.is_above(idx) {
                    p.y
                } else {
                    p.y - 1
                }
            }
            _ => l.floor_at(x),
        };
        heights.push(h);
    }
    if heights[0] != 0 {
        return None;
    }
    let letters = heights
        .windows(2)
        .map(|h| match h[1] - h[0] {
            0 => Some(0u8),
            1 => Some(1u8),
            _ => None,
        })
        .collect::<Option<Vec<u8>>>()?;
    Word::from_letters(letters).ok()
}

/// The word of one split of `l` over length `n`, if that split yields a
/// well-formed path.
pub fn word_for_split(l: &GridLine, n: usize, split: SplitSpec) -> Option<Word> {
    word_for_points(l, n, &grid_points(l, n), split)
}

/// Splits admitted by `l` at length `n`, in presentation order: through all
/// points first, then below-first by increasing count, then the remaining
/// above-first splits by decreasing count.
fn admissible_splits(l: &GridLine, n: usize) -> Vec<SplitSpec> {
    if *l == GridLine::DIAGONAL_PLUS_ONE {
        return Vec::new();
    }
    let z = z_count(l, n);
    if *l == GridLine::ZERO {
        return vec![SplitSpec::through_all(z)];
    }
    let zh = z_half(l, n);
    // At x = 0 a defining line has 0 < ρ' < 1: above a point of height 0,
    // below a point of height 1.
    let above_allowed = l.c() < l.a();
    let below_allowed = l.c() > 0;
    let mut out = Vec::new();
    if above_allowed {
        out.push(SplitSpec::through_all(z));
    }
    if below_allowed {
        out.extend((1..zh).map(|count| SplitSpec {
            mode: SplitMode::BelowFirst,
            count,
        }));
    }
    if above_allowed {
        out.extend((zh + 1..z).rev().map(|count| SplitSpec {
            mode: SplitMode::AboveFirst,
            count,
        }));
    }
    out
}

pub fn image_words(l: &GridLine, n: usize) -> Result<ImageSet> {
    check_member(l, n)?;
    let points = grid_points(l, n);
    let entries = admissible_splits(l, n)
        .into_iter()
        .map(|split| {
            word_for_points(l, n, &points, split)
                .map(|word| ImageEntry { word, split })
                .ok_or_else(|| {
                    Error::Consistency(format!("split {split} of line {l} at n={n} is not a path"))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ImageSet {
        line: *l,
        n,
        entries,
    })
}

/// Closed-form size of `m(ℓ)`.
pub fn image_cardinality(l: &GridLine, n: usize) -> Result<usize> {
    check_member(l, n)?;
    let z = z_count(l, n);
    let zh = z_half(l, n);
    Ok(if *l == GridLine::DIAGONAL_PLUS_ONE {
        0
    } else if *l == GridLine::ZERO {
        1
    } else if l.c() == 0 {
        z - zh
    } else if l.c() == l.a() {
        zh - 1
    } else {
        z - 1
    })
}

/// The through-all-points word of `l`, when it belongs to `m(ℓ)`.
pub fn through_all_word(l: &GridLine, n: usize) -> Option<Word> {
    if check_member(l, n).is_err() || l.c() == l.a() {
        return None;
    }
    word_for_split(l, n, SplitSpec::through_all(z_count(l, n)))
}

/// The unique line of `L_n` whose image contains `w`.
///
/// Starting from a defining line of `w`, the intercept is lowered until the
/// line rests on the broken line; it is then rotated about the leftmost
/// contact point, clockwise when that point lies at `2i ≤ n` and
/// counter-clockwise otherwise, until it meets a second lattice point.
pub fn locate_line(w: &Word) -> Result<GridLine> {
    let n = w.len();
    if n == 0 {
        return Err(Error::OutOfRange("locate_line needs a nonempty word".into()));
    }
    let line = sample_defining_line(w)?;
    let alpha = line.alpha();
    let heights = w.heights();
    let rat = |v: i64| BigRational::from_integer(BigInt::from(v));

    // Lowest intercept keeping the line on or above every (k, s_k).
    let gaps: Vec<BigRational> = heights
        .iter()
        .enumerate()
        .map(|(k, &s)| rat(s) - alpha * rat(k as i64))
        .collect();
    let touch = gaps.iter().max().cloned().unwrap_or_else(BigRational::zero);
    let i = gaps.iter().position(|g| *g == touch).unwrap_or(0);
    let j = heights[i];

    let slope = if 2 * i <= n {
        (i + 1..=n)
            .map(|k| rat(heights[k] - j) / rat((k - i) as i64))
            .max()
    } else {
        (0..i)
            .map(|k| rat(j - heights[k]) / rat((i - k) as i64))
            .min()
    }
    .ok_or_else(|| Error::Consistency(format!("no pivot partner for {w}")))?;

    let to_i64 = |v: &BigInt| {
        v.to_i64()
            .ok_or_else(|| Error::Consistency("line coefficients overflow".into()))
    };
    let a = to_i64(slope.denom())?;
    let b = to_i64(slope.numer())?;
    let c = a * j - b * i as i64;
    GridLine::new(a, b, c)
}

/// [`locate_line`] together with the split naming `w` inside the image.
pub fn locate(w: &Word) -> Result<(GridLine, SplitSpec)> {
    let line = locate_line(w)?;
    let split = image_words(&line, w.len())?
        .split_of(w)
        .ok_or_else(|| Error::Consistency(format!("{w} missing from the image of {line}")))?;
    Ok((line, split))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub n: usize,
    pub brute_count: u64,
    pub geometric_sum: u64,
    pub duplicates: Vec<Word>,
    pub missing: Vec<Word>,
    pub pass: bool,
}

/// Balanced words of length `n`, in lexicographic order.
pub(crate) fn balanced_words(n: usize) -> Vec<Word> {
    let total: u64 = 1 << n;
    (0..total)
        .into_par_iter()
        .map(|bits| Word::from_bits(bits, n))
        .filter(is_balanced)
        .collect()
}

/// Checks that the images over `L_n` partition the brute-forced Sturmian
/// words of length `n`.
pub fn verify_partition(n: usize) -> Result<PartitionReport> {
    let brute = balanced_words(n);
    let images = enumerate_grid_lines(n)
        .par_iter()
        .map(|l| image_words(l, n))
        .collect::<Result<Vec<_>>>()?;

    let mut hits: HashMap<&Word, usize> = HashMap::new();
    let mut geometric_sum = 0u64;
    for img in &images {
        for word in img.words() {
            *hits.entry(word).or_default() += 1;
            geometric_sum += 1;
        }
    }
    let duplicates: Vec<Word> = brute
        .iter()
        .filter(|w| hits.get(w).is_some_and(|&c| c >= 2))
        .cloned()
        .collect();
    let missing: Vec<Word> = brute
        .iter()
        .filter(|w| !hits.contains_key(w))
        .cloned()
        .collect();
    let brute_count = brute.len() as u64;
    let pass = duplicates.is_empty() && missing.is_empty() && geometric_sum == brute_count;
    Ok(PartitionReport {
        n,
        brute_count,
        geometric_sum,
        duplicates,
        missing,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullContact {
    pub word: Word,
    pub extension: Word,
    pub line: GridLine,
    pub n0: usize,
}

/// Longest extension length searched by [`extend_to_full_contact`].
pub fn extension_search_bound(len: usize) -> usize {
    4 * (len + 1) * (len + 1)
}

/// Finds an extension of `w` passing through every integer point of its own
/// partition line. Lengths are tried in increasing order and lines in
/// `(a, b, c)` order; the first hit is returned.
pub fn extend_to_full_contact(w: &Word) -> Result<FullContact> {
    if !is_finite_sturmian(w) {
        return Err(Error::NotSturmian(w.to_string()));
    }
    let start = w.len().max(1);
    for n0 in start..=extension_search_bound(w.len()) {
        for line in enumerate_grid_lines(n0) {
            if let Some(ext) = through_all_word(&line, n0) {
                if w.is_prefix_of(&ext) {
                    return Ok(FullContact {
                        word: w.clone(),
                        extension: ext,
                        line,
                        n0,
                    });
                }
            }
        }
    }
    Err(Error::Consistency(format!(
        "no full-contact extension of {w} up to length {}",
        extension_search_bound(w.len())
    )))
}
