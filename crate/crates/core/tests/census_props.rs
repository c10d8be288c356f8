use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use sturmian::census::{
    brute_force_census, geometric_count, palindrome_count, palindrome_lines, palindrome_words,
    regrouped_count, sturmian_count, totient_sum_identity,
};
use sturmian::geometry::{enumerate_grid_lines, grid_points, z_count};
use sturmian::mapping::{image_cardinality, image_words, locate_line, SplitSpec};
use sturmian::words::is_palindrome;

#[test]
fn formulas_match_brute_force() {
    for n in 1..=14 {
        let brute = brute_force_census(n).unwrap();
        assert_eq!(sturmian_count(n as u64), BigUint::from(brute.sturmian), "n={n}");
        assert_eq!(palindrome_count(n as u64), BigUint::from(brute.palindromic), "n={n}");
    }
}

#[test]
fn totient_identity_holds() {
    for n in 1..=60 {
        let id = totient_sum_identity(n);
        assert!(id.holds(), "n={n}: {} vs {}", id.lhs, id.rhs);
    }
}

#[test]
fn regrouping_matches_image_sum() {
    for n in 1..=14 {
        let direct: usize = enumerate_grid_lines(n)
            .iter()
            .map(|l| image_cardinality(l, n).unwrap())
            .sum();
        assert_eq!(regrouped_count(n), BigUint::from(direct), "n={n}");
        assert_eq!(geometric_count(n).unwrap(), BigUint::from(direct));
    }
}

#[test]
fn palindrome_lines_satisfy_their_construction() {
    for n in 1..=12usize {
        let lines = palindrome_lines(n);
        let expected: u64 = (0..n.div_ceil(2))
            .map(|k| sturmian::census::totient((n - 2 * k) as u64))
            .sum();
        assert_eq!(lines.len() as u64, expected);
        for pl in &lines {
            let l = pl.line;
            let (a, b, c) = (l.a(), l.b(), l.c());
            assert_eq!((2 * c).mod_floor(&a), (-b * n as i64 - 1).mod_floor(&a), "{l}");
            assert!(pl.i < a && a <= n as i64 - pl.i);
            assert_eq!(a.gcd(&(n as i64 - 2 * pl.i)), 1);
            assert!(b < a && c < a);
            assert_eq!(grid_points(&l, n)[0], pl.leftmost);

            let w = image_words(&l, n).unwrap();
            let through = w
                .entries
                .iter()
                .find(|e| e.split == SplitSpec::through_all(z_count(&l, n)))
                .unwrap();
            assert!(is_palindrome(&through.word));
            assert_eq!(locate_line(&through.word).unwrap(), l, "{}", through.word);
        }
        let distinct: BTreeSet<_> = lines.iter().map(|pl| pl.line).collect();
        assert_eq!(distinct.len(), lines.len());
    }
}

#[test]
fn palindrome_words_match_brute_force() {
    for n in 1..=12 {
        let built: BTreeSet<_> = palindrome_words(n).unwrap().into_iter().collect();
        let brute: BTreeSet<_> = brute_force_census(n).unwrap().palindromes().cloned().collect();
        assert_eq!(built, brute, "n={n}");
        assert_eq!(BigUint::from(built.len()), palindrome_count(n as u64));
    }
}

#[test]
fn palindromes_only_arise_from_through_all_splits() {
    for n in 1..=12 {
        for l in enumerate_grid_lines(n) {
            let img = image_words(&l, n).unwrap();
            let z = z_count(&l, n);
            for e in &img.entries {
                if is_palindrome(&e.word) {
                    assert_eq!(e.split, SplitSpec::through_all(z), "{} in {l}", e.word);
                }
            }
            if l.c() == l.a() {
                assert!(img.words().all(|w| !is_palindrome(w)), "{l}");
            }
        }
    }
}
