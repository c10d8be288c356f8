//! Finite Sturmian words through lines in the integer grid.
//!
//! A binary word of length `n` is finite Sturmian when some line
//! `y = αx + ρ` with `α, ρ ∈ (0,1)` produces it through
//! `a_k = ⌊(k+1)α + ρ⌋ − ⌊kα + ρ⌋`. This crate attaches to every grid line
//! with at least two integer points in `[0, n]` a set of such words, shows
//! computationally that these sets partition all Sturmian words of length
//! `n`, and derives from the construction:
//!
//! * the census `1 + Σ_{k=1}^{n} (n+1−k)·φ(k)` of Sturmian words ([`census`]),
//! * the census `1 + Σ_{k<⌈n/2⌉} φ(n−2k)` of Sturmian palindromes,
//! * the two-return property of factors ([`returns`]).
//!
//! All arithmetic is exact. Brute-force oracles (the balance test and an
//! exact feasibility test in the `(α, ρ)` plane) sit next to every
//! closed-form construction so the two can be compared.

pub mod census;
pub mod error;
pub mod geometry;
pub mod mapping;
pub mod returns;
pub mod words;

pub use error::{Error, Result};
pub use geometry::{DefiningLine, ExactRational, GridLine, GridPoint};
pub use mapping::{ImageSet, SplitMode, SplitSpec};
pub use words::Word;
