use num_integer::Integer;
use proptest::prelude::*;
use sturmian::geometry::GridLine;
use sturmian::returns::{
    factor_from_residue, line_word, residue_interval, returns_of_factor, shifted_word_delta,
    start_residue,
};
use sturmian::words::{factor_occurrences, Word};

fn coprime_line() -> impl Strategy<Value = GridLine> {
    (2i64..=30)
        .prop_flat_map(|a| (Just(a), 1..a, 0..a))
        .prop_filter("coprime", |(a, b, _)| a.gcd(b) == 1)
        .prop_map(|(a, b, c)| GridLine::new(a, b, c).unwrap())
}

#[test]
fn residues_group_into_upper_contact_intervals() {
    for a in 2..=20i64 {
        for b in (1..a).filter(|b| a.gcd(b) == 1) {
            for len in 1..=a as usize {
                let mut factors: Vec<Word> = (0..a)
                    .map(|cp| factor_from_residue(a, b, cp, len).unwrap())
                    .collect();
                factors.sort();
                factors.dedup();
                // A line of slope b/a has len + 1 distinct factors of length len < a.
                if (len as i64) < a {
                    assert_eq!(factors.len(), len + 1, "a={a} b={b} len={len}");
                }
                let mut covered = 0;
                for u in &factors {
                    let scan = residue_interval(a, b, u).unwrap();
                    let iv = scan.interval.unwrap();
                    assert!(!iv.wraps, "a={a} b={b} u={u}");
                    assert!(scan.contact_at_upper_end(), "a={a} b={b} u={u}");
                    covered += scan.residues.len() as i64;
                }
                assert_eq!(covered, a);
            }
        }
    }
}

proptest! {
    #[test]
    fn shift_changes_only_at_crossings(l in coprime_line(), n in 1usize..80) {
        let delta = shifted_word_delta(&l, n).unwrap();
        for &k in &delta.swaps {
            prop_assert_eq!(&delta.before.letters()[k..k + 2], &[0, 1]);
            prop_assert_eq!(&delta.after.letters()[k..k + 2], &[1, 0]);
        }
        let interior = delta.crossings.iter().filter(|&&x| x > 0 && x < n as i64).count();
        prop_assert_eq!(interior, delta.swaps.len());
    }

    #[test]
    fn factors_have_at_most_two_returns(l in coprime_line(), len in 1usize..30) {
        let len = len.min(l.a() as usize);
        let horizon = 4 * l.a() as usize + len;
        let word = line_word(&l, horizon);
        for (factor, positions) in factor_occurrences(&word, len) {
            if positions.len() < 2 {
                continue;
            }
            let u = Word::from_letters(factor.to_vec()).unwrap();
            let report = returns_of_factor(&l, &u, None).unwrap();
            prop_assert!(report.pass, "{} {}", l, u);
            prop_assert!(report.distinct_returns.len() <= 2);
            prop_assert_eq!(&report.occurrences, &positions);
            for (&i, &r) in report.occurrences.iter().zip(&report.start_residues) {
                prop_assert_eq!(r, start_residue(&l, i));
            }
        }
    }
}
