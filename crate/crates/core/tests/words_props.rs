use proptest::prelude::*;
use sturmian::words::{
    fibonacci_prefix, is_balanced, occurrences, return_words_in, reverse, Word,
};

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..=1, 0..=max_len).prop_map(|v| Word::from_letters(v).unwrap())
}

proptest! {
    #[test]
    fn reverse_is_an_involution(w in word_strategy(40)) {
        prop_assert_eq!(reverse(&reverse(&w)), w);
    }

    #[test]
    fn balance_is_reversal_symmetric(w in word_strategy(24)) {
        prop_assert_eq!(is_balanced(&w), is_balanced(&reverse(&w)));
    }

    #[test]
    fn text_form_round_trips(w in word_strategy(40)) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn returns_concatenate_to_the_covered_span(
        host in word_strategy(40),
        u in word_strategy(3).prop_filter("nonempty", |u| !u.is_empty()),
    ) {
        let pos = occurrences(&host, &u).unwrap();
        prop_assume!(pos.len() >= 2);
        let rets = return_words_in(&host, &u).unwrap();
        let joined = rets.sequence.iter().fold(Word::empty(), |acc, r| acc.concat(r));
        prop_assert_eq!(joined, host.slice(pos[0], *pos.last().unwrap()));
        prop_assert_eq!(rets.sequence.len(), pos.len() - 1);
    }
}

#[test]
fn fibonacci_prefixes_are_consistent() {
    let long = fibonacci_prefix(2000);
    for n in 1..=300 {
        assert_eq!(long.slice(0, n), fibonacci_prefix(n), "n={n}");
    }
    assert!(is_balanced(&fibonacci_prefix(200)));
}

/// Balance by comparing every pair of equal-length factors directly.
fn balanced_by_pairs(w: &Word) -> bool {
    let l = w.letters();
    let n = l.len();
    for len in 1..=n {
        for i in 0..=n - len {
            for j in 0..=n - len {
                let x: i32 = l[i..i + len].iter().map(|&v| v as i32).sum();
                let y: i32 = l[j..j + len].iter().map(|&v| v as i32).sum();
                if (x - y).abs() > 1 {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn sliding_window_balance_matches_pairwise_definition() {
    for n in 0..=11 {
        for bits in 0..1u64 << n {
            let w = Word::from_bits(bits, n);
            assert_eq!(is_balanced(&w), balanced_by_pairs(&w), "{w}");
        }
    }
}
