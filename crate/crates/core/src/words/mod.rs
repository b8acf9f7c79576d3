//! Group words over `x_1 .. x_n`: run-length representation, reduction,
//! regularity predicates, deg-lex order and the mirror relabelling.

mod letter;
mod order;
mod power;

use thiserror::Error;

pub use letter::{Alphabet, GroupLetter, Sign};
pub use order::{deglex_compare, deglex_successor, deglex_words};
pub use power::{PowerWord, Run};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet must have at least one letter")]
    EmptyAlphabet,
    #[error("alphabet of {0} letters is too large")]
    AlphabetTooLarge(u32),
    #[error("letter index {index} outside 1..={n}")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("malformed token {token:?}: {reason}")]
    MalformedToken { token: String, reason: &'static str },
}

/// Free reduction of a raw letter sequence, checking indices against `alphabet`.
pub fn reduce<I>(alphabet: Alphabet, raw: I) -> Result<PowerWord, WordError>
where
    I: IntoIterator<Item = GroupLetter>,
{
    let mut w = PowerWord::empty();
    for l in raw {
        if !alphabet.contains(l) {
            return Err(WordError::IndexOutOfRange { index: l.index(), n: alphabet.n() });
        }
        w.push_run(l.index(), l.sign().as_i64());
    }
    Ok(w)
}

/// Split `w = conjugator · core · conjugator^-1` with `core` cyclically reduced.
pub fn cyclically_reduce(w: &PowerWord) -> (PowerWord, PowerWord) {
    let runs = w.runs();
    let (mut lo, mut hi) = (0usize, runs.len());
    let mut conj = PowerWord::empty();
    // Peel matching outer runs; the reduced word has distinct adjacent indices,
    // so at most one partial run survives on each side.
    while hi - lo >= 2 && runs[lo].index == runs[hi - 1].index {
        let (a, b) = (runs[lo].exp, runs[hi - 1].exp);
        if a.signum() == b.signum() {
            break;
        }
        let k = a.abs().min(b.abs());
        conj.push_run(runs[lo].index, a.signum() * k);
        if a.abs() > b.abs() {
            let mut core = PowerWord::power(runs[lo].index, a + b);
            for r in &runs[lo + 1..hi - 1] {
                core.push_run(r.index, r.exp);
            }
            return (core, conj);
        }
        if b.abs() > a.abs() {
            let mut core = PowerWord::empty();
            for r in &runs[lo + 1..hi - 1] {
                core.push_run(r.index, r.exp);
            }
            core.push_run(runs[hi - 1].index, a + b);
            return (core, conj);
        }
        lo += 1;
        hi -= 1;
    }
    let core = PowerWord::from_runs(runs[lo..hi].iter().map(|r| (r.index, r.exp)));
    (core, conj)
}

pub fn is_cyclically_reduced(w: &PowerWord) -> bool {
    match (w.first_letter(), w.last_letter()) {
        (Some(a), Some(b)) => w.run_count() == 1 || a.index() != b.index() || a.sign() == b.sign(),
        _ => true,
    }
}

/// `x_1^{k_1} ... x_n^{k_n}`: run indices strictly increase.
pub fn is_regular(w: &PowerWord) -> bool {
    w.runs().windows(2).all(|p| p[0].index < p[1].index)
}

pub fn is_counter_regular(w: &PowerWord) -> bool {
    is_regular(&w.inverse())
}

/// The regular word with exponent vector `k` (entry `i` is the power of `x_{i+1}`).
pub fn regular_word(exponents: &[i64]) -> PowerWord {
    PowerWord::from_runs(exponents.iter().enumerate().map(|(i, &k)| (i as u32 + 1, k)))
}

/// Replace every `x_i^s` by `x_{n+1-i}^{-s}`.
pub fn relabel_mirror(alphabet: Alphabet, w: &PowerWord) -> PowerWord {
    let n = alphabet.n();
    PowerWord::from_runs(w.runs().iter().map(|r| (n + 1 - r.index, -r.exp)))
}

/// Parse the text grammar `x2 x1^-3` (empty string is the empty word).
pub fn parse_word(alphabet: Alphabet, text: &str) -> Result<PowerWord, WordError> {
    let mut w = PowerWord::empty();
    for token in text.split_whitespace() {
        let bad = |reason| WordError::MalformedToken { token: token.to_string(), reason };
        let body = token.strip_prefix('x').ok_or_else(|| bad("expected `x<index>`"))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e.parse::<i64>().map_err(|_| bad("bad exponent"))?),
            None => (body, 1),
        };
        if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("bad index"));
        }
        let index: u32 = idx.parse().map_err(|_| bad("bad index"))?;
        if index == 0 || index > alphabet.n() {
            return Err(WordError::IndexOutOfRange { index, n: alphabet.n() });
        }
        w.push_run(index, exp);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(codes: &[i32]) -> PowerWord {
        PowerWord::from_codes(codes)
    }

    fn a(n: u32) -> Alphabet {
        Alphabet::new(n).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let l = GroupLetter::from_code;
        assert!(reduce(a(3), [l(1), l(-1)]).unwrap().is_empty());
        assert_eq!(reduce(a(3), [l(1), l(1), l(2)]).unwrap().to_string(), "x1^2 x2");
        assert_eq!(reduce(a(3), [l(2), l(1), l(-1), l(3)]).unwrap(), w(&[2, 3]));
        assert!(matches!(
            reduce(a(3), [l(4)]),
            Err(WordError::IndexOutOfRange { index: 4, n: 3 })
        ));
    }

    #[test]
    fn cyclic_reduction_examples() {
        assert_eq!(cyclically_reduce(&w(&[1, 2, -1])), (w(&[2]), w(&[1])));
        let p = PowerWord::power(1, 5);
        assert_eq!(cyclically_reduce(&p), (p.clone(), PowerWord::empty()));
        assert_eq!(cyclically_reduce(&w(&[-3, 2, 1, 3])), (w(&[2, 1]), w(&[-3])));
        // partial outer runs
        assert_eq!(cyclically_reduce(&w(&[1, 1, 1, 2, -1])), (w(&[1, 1, 2]), w(&[1])));
        assert_eq!(cyclically_reduce(&w(&[1, 2, -1, -1])), (w(&[2, -1]), w(&[1])));
    }

    #[test]
    fn regularity_examples() {
        assert!(is_regular(&PowerWord::empty()) && is_counter_regular(&PowerWord::empty()));
        let p = PowerWord::power(1, 3);
        assert!(is_regular(&p) && is_counter_regular(&p));
        assert!(!is_regular(&w(&[2, 1])));
        assert!(is_counter_regular(&w(&[2, 1])));
        assert!(is_regular(&w(&[1, -2, -2, 3])));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(relabel_mirror(a(3), &w(&[1])), w(&[-3]));
        assert_eq!(relabel_mirror(a(3), &w(&[1, 1, 2])), w(&[-3, -3, -2]));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_word(a(3), "x2 x1^-3").unwrap(), w(&[2, -1, -1, -1]));
        assert_eq!(parse_word(a(3), "").unwrap(), PowerWord::empty());
        assert_eq!(parse_word(a(3), "x1 x1^-1").unwrap(), PowerWord::empty());
        assert!(parse_word(a(3), "y1").is_err());
        assert!(parse_word(a(3), "x4").is_err());
        assert!(parse_word(a(3), "x1^").is_err());
        assert!(parse_word(a(3), "x+1").is_err());
    }

    fn letters(n: u32, max_len: usize) -> impl Strategy<Value = Vec<GroupLetter>> {
        prop::collection::vec((1..=n, any::<bool>()), 0..max_len).prop_map(|v| {
            v.into_iter()
                .map(|(i, s)| GroupLetter::new(i, if s { Sign::Plus } else { Sign::Minus }))
                .collect()
        })
    }

    fn stack_reduce(raw: &[GroupLetter]) -> Vec<GroupLetter> {
        let mut out: Vec<GroupLetter> = vec![];
        for &l in raw {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }

    fn regular_strategy(n: u32) -> impl Strategy<Value = PowerWord> {
        prop::collection::vec(-4i64..=4, n as usize).prop_map(|k| regular_word(&k))
    }

    proptest! {
        #[test]
        fn reduce_matches_stack_and_is_idempotent(raw in letters(4, 40)) {
            let r = reduce(a(4), raw.iter().copied()).unwrap();
            prop_assert_eq!(r.to_letters(), stack_reduce(&raw));
            prop_assert!(r.len() as usize <= raw.len());
            prop_assert_eq!((raw.len() as u64 - r.len()) % 2, 0);
            prop_assert_eq!(reduce(a(4), r.letters()).unwrap(), r.clone());
            prop_assert!(r.runs().windows(2).all(|p| p[0].index != p[1].index));
        }

        #[test]
        fn cyclic_reduction_conjugates(raw in letters(3, 30)) {
            let word = PowerWord::from_letters(raw);
            let (core, conj) = cyclically_reduce(&word);
            prop_assert!(is_cyclically_reduced(&core));
            prop_assert_eq!(conj.concat(&core).concat(&conj.inverse()), word);
        }

        #[test]
        fn text_round_trip(raw in letters(5, 30)) {
            let word = PowerWord::from_letters(raw);
            prop_assert_eq!(parse_word(a(5), &word.to_string()).unwrap(), word);
        }

        #[test]
        fn deglex_is_a_total_order(x in letters(3, 6), y in letters(3, 6), z in letters(3, 6)) {
            use std::cmp::Ordering::*;
            let (x, y, z) = (PowerWord::from_letters(x), PowerWord::from_letters(y), PowerWord::from_letters(z));
            prop_assert_eq!(deglex_compare(&x, &y), deglex_compare(&y, &x).reverse());
            prop_assert_eq!(deglex_compare(&x, &y) == Equal, x == y);
            if deglex_compare(&x, &y) != Greater && deglex_compare(&y, &z) != Greater {
                prop_assert_ne!(deglex_compare(&x, &z), Greater);
            }
        }

        #[test]
        fn regular_and_counter_regular_iff_letter_power(raw in letters(3, 10)) {
            let word = PowerWord::from_letters(raw);
            prop_assert_eq!(
                is_regular(&word) && is_counter_regular(&word),
                word.run_count() <= 1
            );
        }

        #[test]
        fn mirror_is_involution_swapping_regularity(word in regular_strategy(5), raw in letters(5, 12)) {
            let al = a(5);
            prop_assert!(is_counter_regular(&relabel_mirror(al, &word)));
            let other = PowerWord::from_letters(raw);
            prop_assert_eq!(relabel_mirror(al, &relabel_mirror(al, &other)), other.clone());
            prop_assert_eq!(is_regular(&other), is_counter_regular(&relabel_mirror(al, &other)));
        }
    }
}
