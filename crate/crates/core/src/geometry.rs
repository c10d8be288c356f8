//! Exact lines in the integer grid.
//!
//! Two kinds of lines appear here. A [`GridLine`] `y = (b·x + c)/a` has slope
//! and intercept in `[0,1]` and is the index of a block of the partition of
//! Sturmian words of length `n`. A [`DefiningLine`] `y = αx + ρ` with
//! `α, ρ ∈ (0,1)` generates a word through the floor-difference rule
//! `a_k = ⌊(k+1)α + ρ⌋ − ⌊kα + ρ⌋`.
//!
//! Everything is exact. A word is finite Sturmian iff its
//! [`FeasibilityPolygon`] in the `(α, ρ)` plane contains a point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::Word;

/// Arbitrary-precision fraction, always in lowest terms with positive
/// denominator. Text form is `p/q`.
pub type ExactRational = BigRational;

pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::RationalSyntax(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

pub fn format_rational(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Canonical line `y = (b·x + c)/a` with `gcd(a, b) = 1`, `0 ≤ b ≤ a` and
/// `0 ≤ c ≤ a`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridLine {
    a: i64,
    b: i64,
    c: i64,
}

impl GridLine {
    pub const ZERO: GridLine = GridLine { a: 1, b: 0, c: 0 };
    pub const ONE: GridLine = GridLine { a: 1, b: 0, c: 1 };
    pub const DIAGONAL: GridLine = GridLine { a: 1, b: 1, c: 0 };
    pub const DIAGONAL_PLUS_ONE: GridLine = GridLine { a: 1, b: 1, c: 1 };

    /// Canonicalizes `(a, b, c)`. The slope is reduced to lowest terms and the
    /// intercept numerator rescaled with it; if that would make the intercept
    /// numerator fractional the input is rejected.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let err = |reason| Error::InvalidGridLine { a, b, c, reason };
        if a < 1 {
            return Err(err("denominator must be at least 1"));
        }
        if !(0..=a).contains(&b) {
            return Err(err("slope must lie in [0,1]"));
        }
        if !(0..=a).contains(&c) {
            return Err(err("intercept must lie in [0,1]"));
        }
        let g = a.gcd(&b);
        if c % g != 0 {
            return Err(err("intercept has no representation over the reduced denominator"));
        }
        Ok(GridLine {
            a: a / g,
            b: b / g,
            c: c / g,
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn slope(&self) -> ExactRational {
        BigRational::new(self.b.into(), self.a.into())
    }

    pub fn intercept(&self) -> ExactRational {
        BigRational::new(self.c.into(), self.a.into())
    }

    pub fn is_boundary(&self) -> bool {
        self.a == 1
    }

    /// `b·x + c`, the numerator of the line's height at `x`.
    pub fn numerator_at(&self, x: i64) -> i64 {
        self.b * x + self.c
    }

    pub fn is_grid_point(&self, x: i64) -> bool {
        self.numerator_at(x).rem_euclid(self.a) == 0
    }

    /// `⌊(b·x + c)/a⌋`.
    pub fn floor_at(&self, x: i64) -> i64 {
        self.numerator_at(x).div_euclid(self.a)
    }

    /// Smallest `x ≥ 0` with an integer point, if the line has one in `[0, a)`.
    pub fn first_grid_x(&self) -> Option<i64> {
        (0..self.a).find(|&x| self.is_grid_point(x))
    }
}

impl fmt::Display for GridLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.a, self.b, self.c)
    }
}

impl fmt::Debug for GridLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridLine({}:{}:{})", self.a, self.b, self.c)
    }
}

impl FromStr for GridLine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::GridLineSyntax(s.to_string()));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::GridLineSyntax(s.to_string()))
        };
        GridLine::new(num(a)?, num(b)?, num(c)?)
    }
}

impl Serialize for GridLine {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GridLine {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn make_grid_line(a: i64, b: i64, c: i64) -> Result<GridLine> {
    GridLine::new(a, b, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

/// Integer points of `l` with `0 ≤ x ≤ n`, by increasing `x`.
pub fn grid_points(l: &GridLine, n: usize) -> Vec<GridPoint> {
    let n = n as i64;
    let Some(x0) = l.first_grid_x() else {
        return Vec::new();
    };
    (x0..=n)
        .step_by(l.a as usize)
        .map(|x| GridPoint {
            x,
            y: l.numerator_at(x) / l.a,
        })
        .collect()
}

/// Number of integer points with `0 ≤ x ≤ limit`.
fn count_up_to(l: &GridLine, limit: i64) -> usize {
    match l.first_grid_x() {
        Some(x0) if x0 <= limit => ((limit - x0) / l.a + 1) as usize,
        _ => 0,
    }
}

/// Integer points of `l` with `0 ≤ x ≤ n`.
pub fn z_count(l: &GridLine, n: usize) -> usize {
    count_up_to(l, n as i64)
}

/// Integer points of `l` with `0 ≤ 2x ≤ n`.
pub fn z_half(l: &GridLine, n: usize) -> usize {
    count_up_to(l, n as i64 / 2)
}

/// Every canonical grid line with at least two integer points in `[0, n]`,
/// ordered by `(a, b, c)`. The four lines with `a = 1` come first.
pub fn enumerate_grid_lines(n: usize) -> Vec<GridLine> {
    let mut out = Vec::new();
    for a in 1..=(n.max(1) as i64) {
        for b in 0..=a {
            if a.gcd(&b) != 1 {
                continue;
            }
            for c in 0..=a {
                let l = GridLine { a, b, c };
                if z_count(&l, n) >= 2 {
                    out.push(l);
                }
            }
        }
    }
    out
}

/// Letters `⌊(b(k+1)+c)/a⌋ − ⌊(bk+c)/a⌋` for `k = 0..len`, in integers.
pub(crate) fn floor_word(a: i64, b: i64, c: i64, len: usize) -> Word {
    let letters = (0..len as i64)
        .map(|k| ((b * (k + 1) + c).div_euclid(a) - (b * k + c).div_euclid(a)) as u8)
        .collect();
    Word::from_letters_unchecked(letters)
}

/// A line `y = αx + ρ` with `α, ρ ∈ (0,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DefiningLine {
    alpha: ExactRational,
    rho: ExactRational,
}

impl DefiningLine {
    pub fn new(alpha: ExactRational, rho: ExactRational) -> Result<Self> {
        let open_unit = |r: &ExactRational| r.is_positive() && *r < BigRational::one();
        if !open_unit(&alpha) || !open_unit(&rho) {
            return Err(Error::DefiningLineRange {
                alpha: format_rational(&alpha),
                rho: format_rational(&rho),
            });
        }
        Ok(DefiningLine { alpha, rho })
    }

    pub fn alpha(&self) -> &ExactRational {
        &self.alpha
    }

    pub fn rho(&self) -> &ExactRational {
        &self.rho
    }

    /// `⌊kα + ρ⌋`.
    pub fn floor_at(&self, k: i64) -> BigInt {
        (&self.alpha * BigRational::from_integer(k.into()) + &self.rho)
            .floor()
            .to_integer()
    }
}

impl fmt::Display for DefiningLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha={} rho={}",
            format_rational(&self.alpha),
            format_rational(&self.rho)
        )
    }
}

pub fn word_from_defining_line(line: &DefiningLine, n: usize) -> Word {
    let floors: Vec<BigInt> = (0..=n as i64).map(|k| line.floor_at(k)).collect();
    let letters = floors
        .windows(2)
        .map(|f| if f[1] > f[0] { 1 } else { 0 })
        .collect();
    Word::from_letters_unchecked(letters)
}

/// Half-plane `p·α + q·ρ ≥ r` (or `>` when strict).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct HalfPlane {
    p: i128,
    q: i128,
    r: i128,
    strict: bool,
}

/// Point `(x/den, y/den)` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Homogeneous {
    x: i128,
    y: i128,
    den: i128,
}

impl HalfPlane {
    fn slack(&self, pt: &Homogeneous) -> i128 {
        self.p * pt.x + self.q * pt.y - self.r * pt.den
    }

    fn holds_closed(&self, pt: &Homogeneous) -> bool {
        self.slack(pt) >= 0
    }

    fn holds_exact(&self, alpha: &BigRational, rho: &BigRational) -> bool {
        let lhs = alpha * BigRational::from_integer(self.p.into())
            + rho * BigRational::from_integer(self.q.into());
        let rhs = BigRational::from_integer(self.r.into());
        if self.strict {
            lhs > rhs
        } else {
            lhs >= rhs
        }
    }

    fn meet(&self, other: &HalfPlane) -> Option<Homogeneous> {
        let det = self.p * other.q - other.p * self.q;
        if det == 0 {
            return None;
        }
        let x = self.r * other.q - other.r * self.q;
        let y = self.p * other.r - other.p * self.r;
        let sign = det.signum();
        let (x, y, den) = (x * sign, y * sign, det * sign);
        let g = x.gcd(&y).gcd(&den);
        Some(Homogeneous {
            x: x / g,
            y: y / g,
            den: den / g,
        })
    }
}

/// The region of `(α, ρ)` generating a given word: `s_k ≤ kα + ρ < s_k + 1`
/// for `k = 0..=n`, where `s_k` is the word's height at `x = k`, together
/// with `0 < α < 1` and `0 < ρ < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityPolygon {
    heights: Vec<i64>,
}

/// One strip `height ≤ k·α + ρ < height + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeightConstraint {
    pub k: i64,
    pub height: i64,
}

impl FeasibilityPolygon {
    pub fn constraints(&self) -> Vec<HeightConstraint> {
        self.heights
            .iter()
            .enumerate()
            .map(|(k, &height)| HeightConstraint {
                k: k as i64,
                height,
            })
            .collect()
    }

    fn half_planes(&self) -> Vec<HalfPlane> {
        let mut hp = vec![
            HalfPlane { p: 1, q: 0, r: 0, strict: true },
            HalfPlane { p: -1, q: 0, r: -1, strict: true },
            HalfPlane { p: 0, q: 1, r: 0, strict: true },
            HalfPlane { p: 0, q: -1, r: -1, strict: true },
        ];
        for (k, &s) in self.heights.iter().enumerate().skip(1) {
            let (k, s) = (k as i128, i128::from(s));
            hp.push(HalfPlane { p: k, q: 1, r: s, strict: false });
            hp.push(HalfPlane { p: -k, q: -1, r: -(s + 1), strict: true });
        }
        hp
    }

    /// Distinct vertices of the closed relaxation, sorted.
    fn closed_vertices(&self) -> Vec<Homogeneous> {
        let hp = self.half_planes();
        let mut verts = Vec::new();
        for (i, h1) in hp.iter().enumerate() {
            for h2 in &hp[i + 1..] {
                if let Some(pt) = h1.meet(h2) {
                    if hp.iter().all(|h| h.holds_closed(&pt)) {
                        verts.push(pt);
                    }
                }
            }
        }
        verts.sort();
        verts.dedup();
        verts
    }

    /// A point of the region, if any. The closed relaxation is a bounded
    /// convex polygon; the region is that polygon minus the faces on which a
    /// strict constraint is tight. It is nonempty iff it contains the
    /// relative interior, which contains the centroid of the vertices.
    pub fn witness(&self) -> Option<(ExactRational, ExactRational)> {
        let verts = self.closed_vertices();
        if verts.is_empty() {
            return None;
        }
        let count = BigRational::from_integer(BigInt::from(verts.len()));
        let mut alpha = BigRational::zero();
        let mut rho = BigRational::zero();
        for v in &verts {
            alpha += BigRational::new(v.x.into(), v.den.into());
            rho += BigRational::new(v.y.into(), v.den.into());
        }
        alpha /= &count;
        rho /= count;
        self.half_planes()
            .iter()
            .all(|h| h.holds_exact(&alpha, &rho))
            .then_some((alpha, rho))
    }

    pub fn is_nonempty(&self) -> bool {
        self.witness().is_some()
    }

    /// Whether the exact point `(alpha, rho)` satisfies every constraint.
    pub fn contains(&self, alpha: &ExactRational, rho: &ExactRational) -> bool {
        self.half_planes().iter().all(|h| h.holds_exact(alpha, rho))
    }
}

pub fn feasibility_polygon(w: &Word) -> FeasibilityPolygon {
    FeasibilityPolygon {
        heights: w.heights(),
    }
}

pub fn is_finite_sturmian(w: &Word) -> bool {
    feasibility_polygon(w).is_nonempty()
}

/// Deterministic rational defining line reproducing `w`.
pub fn sample_defining_line(w: &Word) -> Result<DefiningLine> {
    let (alpha, rho) = feasibility_polygon(w)
        .witness()
        .ok_or_else(|| Error::NotSturmian(w.to_string()))?;
    DefiningLine::new(alpha, rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn q(s: &str) -> ExactRational {
        parse_rational(s).unwrap()
    }

    fn pts(v: &[(i64, i64)]) -> Vec<GridPoint> {
        v.iter().map(|&(x, y)| GridPoint { x, y }).collect()
    }

    #[test]
    fn make_grid_line_examples() {
        let l = make_grid_line(2, 1, 1).unwrap();
        assert_eq!((l.a(), l.b(), l.c()), (2, 1, 1));
        assert_eq!(make_grid_line(1, 0, 0).unwrap(), GridLine::ZERO);
        assert!(make_grid_line(4, 2, 1).is_err());
        assert_eq!(make_grid_line(4, 2, 2).unwrap(), make_grid_line(2, 1, 1).unwrap());
        assert_eq!(make_grid_line(3, 0, 3).unwrap(), GridLine::ONE);
        assert!(make_grid_line(0, 0, 0).is_err());
        assert!(make_grid_line(2, 3, 0).is_err());
        assert!(make_grid_line(2, 1, 3).is_err());
        assert!(make_grid_line(2, 1, -1).is_err());
    }

    #[test]
    fn grid_line_text_form() {
        let l: GridLine = "10:3:7".parse().unwrap();
        assert_eq!(l.to_string(), "10:3:7");
        assert!("10:3".parse::<GridLine>().is_err());
        assert!("a:b:c".parse::<GridLine>().is_err());
    }

    #[test]
    fn grid_point_examples() {
        let half = make_grid_line(2, 1, 1).unwrap();
        assert_eq!(
            grid_points(&half, 10),
            pts(&[(1, 1), (3, 2), (5, 3), (7, 4), (9, 5)])
        );
        assert_eq!(
            grid_points(&GridLine::ZERO, 3),
            pts(&[(0, 0), (1, 0), (2, 0), (3, 0)])
        );
        let sample_line = make_grid_line(10, 3, 7).unwrap();
        assert_eq!(grid_points(&sample_line, 17), pts(&[(1, 1), (11, 4)]));
    }

    #[test]
    fn z_examples() {
        let half = make_grid_line(2, 1, 1).unwrap();
        assert_eq!((z_count(&half, 10), z_half(&half, 10)), (5, 3));
        assert_eq!((z_count(&GridLine::DIAGONAL, 4), z_half(&GridLine::DIAGONAL, 4)), (5, 3));
        let sample_line = make_grid_line(10, 3, 7).unwrap();
        assert_eq!((z_count(&sample_line, 17), z_half(&sample_line, 17)), (2, 1));
    }

    #[test]
    fn line_set_examples() {
        assert_eq!(
            enumerate_grid_lines(1),
            vec![
                GridLine::ZERO,
                GridLine::ONE,
                GridLine::DIAGONAL,
                GridLine::DIAGONAL_PLUS_ONE
            ]
        );
        let half = make_grid_line(2, 1, 1).unwrap();
        assert!(!enumerate_grid_lines(2).contains(&half));
        let l10 = enumerate_grid_lines(10);
        assert!(l10.contains(&half));
        assert!(!l10.contains(&make_grid_line(10, 3, 7).unwrap()));
        assert!(l10.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn defining_line_examples() {
        let golden = DefiningLine::new(q("34/89"), q("2/5")).unwrap();
        assert_eq!(word_from_defining_line(&golden, 11), w("01001010010"));
        let l = DefiningLine::new(q("1/2"), q("1/4")).unwrap();
        assert_eq!(word_from_defining_line(&l, 4), w("0101"));
        let l = DefiningLine::new(q("1/10"), q("1/20")).unwrap();
        assert_eq!(word_from_defining_line(&l, 2), w("00"));
        assert!(DefiningLine::new(q("1"), q("1/2")).is_err());
        assert!(DefiningLine::new(q("1/2"), q("0")).is_err());
    }

    #[test]
    fn feasibility_examples() {
        assert!(!is_finite_sturmian(&w("0011")));
        assert!(feasibility_polygon(&w("0011")).witness().is_none());

        assert!(is_finite_sturmian(&w("10")));
        let poly = feasibility_polygon(&w("10"));
        assert!(poly.contains(&q("3/5"), &q("1/2")));
        let fixed = DefiningLine::new(q("3/5"), q("1/2")).unwrap();
        assert_eq!(word_from_defining_line(&fixed, 2), w("10"));

        for n in 1..=15 {
            assert!(is_finite_sturmian(&Word::repeat(0, n)));
        }
    }

    #[test]
    fn sample_examples() {
        for s in ["0101", "1111", "0", "1", "1010101001"] {
            let word = w(s);
            let line = sample_defining_line(&word).unwrap();
            assert_eq!(word_from_defining_line(&line, word.len()), word);
        }
        let ones = sample_defining_line(&w("1111")).unwrap();
        assert!(*ones.alpha() > q("3/4"));
        assert!(matches!(
            sample_defining_line(&w("0011")),
            Err(Error::NotSturmian(_))
        ));
    }

    #[test]
    fn sample_is_deterministic() {
        let a = sample_defining_line(&w("0100101")).unwrap();
        let b = sample_defining_line(&w("0100101")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(q("6/8"), BigRational::new(3.into(), 4.into()));
        assert_eq!(format_rational(&q("6/8")), "3/4");
        assert_eq!(q("2"), BigRational::from_integer(2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
