//! Deg-lex order on reduced words and its successor function.

use std::cmp::Ordering;

use super::letter::{Alphabet, GroupLetter};
use super::power::PowerWord;

/// Compare by length first, then letter by letter with
/// `x_1 < x_1^-1 < x_2 < ... < x_n < x_n^-1`.
pub fn deglex_compare(u: &PowerWord, v: &PowerWord) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| {
        u.letters()
            .map(GroupLetter::order_key)
            .cmp(v.letters().map(GroupLetter::order_key))
    })
}

/// Least reduced word strictly greater than `w` in deg-lex order.
pub fn deglex_successor(alphabet: Alphabet, w: &PowerWord) -> PowerWord {
    let mut keys: Vec<u32> = w.letters().map(GroupLetter::order_key).collect();
    let top = 2 * alphabet.n();

    for pos in (0..keys.len()).rev() {
        let prev = pos.checked_sub(1).map(|p| keys[p]);
        let start = keys[pos] + 1;
        if let Some(k) = (start..top).find(|&k| !cancels(prev, k)) {
            keys[pos] = k;
            for i in pos + 1..keys.len() {
                keys[i] = least_after(Some(keys[i - 1]));
            }
            return from_keys(&keys);
        }
    }

    let len = keys.len() + 1;
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let k = least_after(if i == 0 { None } else { Some(out[i - 1]) });
        out.push(k);
    }
    from_keys(&out)
}

/// Iterator over all reduced words in deg-lex order, starting after `from`
/// (or at the empty word when `from` is `None`).
pub fn deglex_words(alphabet: Alphabet, from: Option<PowerWord>) -> impl Iterator<Item = PowerWord> {
    let mut current = from;
    std::iter::from_fn(move || {
        let next = match &current {
            None => PowerWord::empty(),
            Some(w) => deglex_successor(alphabet, w),
        };
        current = Some(next.clone());
        Some(next)
    })
}

// Keys 2i and 2i+1 are mutually inverse letters.
fn cancels(prev: Option<u32>, k: u32) -> bool {
    prev.is_some_and(|p| p ^ 1 == k)
}

fn least_after(prev: Option<u32>) -> u32 {
    if cancels(prev, 0) {
        1
    } else {
        0
    }
}

fn from_keys(keys: &[u32]) -> PowerWord {
    PowerWord::from_letters(keys.iter().map(|&k| GroupLetter::from_order_key(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(codes: &[i32]) -> PowerWord {
        PowerWord::from_codes(codes)
    }

    #[test]
    fn compare_examples() {
        // x_n x_n < x_1 x_1 x_1 for n = 3
        assert_eq!(deglex_compare(&w(&[3, 3]), &w(&[1, 1, 1])), Ordering::Less);
        assert_eq!(deglex_compare(&w(&[1, 2, 3]), &w(&[1, 3, 2])), Ordering::Less);
        assert_eq!(deglex_compare(&w(&[1]), &w(&[-1])), Ordering::Less);
    }

    #[test]
    fn successor_examples() {
        let a = Alphabet::new(3).unwrap();
        assert_eq!(deglex_successor(a, &PowerWord::empty()), w(&[1]));
        assert_eq!(deglex_successor(a, &w(&[-3])), w(&[1, 1]));
        assert_eq!(deglex_successor(a, &w(&[1, 2])), w(&[1, -2]));
        // x1^-1 followed by the least letter that does not cancel it
        assert_eq!(deglex_successor(a, &w(&[1, -3])), w(&[-1, -1]));
    }

    #[test]
    fn successor_matches_sorted_enumeration() {
        for n in 1..=3u32 {
            let a = Alphabet::new(n).unwrap();
            // brute force: all letter strings of length <= 3, keep reduced ones
            let letters: Vec<i32> = a.group_letters().map(GroupLetter::code).collect();
            let mut all = vec![vec![]];
            let mut layer: Vec<Vec<i32>> = vec![vec![]];
            for _ in 0..3 {
                let mut next = vec![];
                for s in &layer {
                    for &l in &letters {
                        if s.last() != Some(&-l) {
                            let mut t = s.clone();
                            t.push(l);
                            next.push(t);
                        }
                    }
                }
                all.extend(next.iter().cloned());
                layer = next;
            }
            let mut words: Vec<PowerWord> = all.iter().map(|c| w(c)).collect();
            words.sort_by(deglex_compare);
            let enumerated: Vec<PowerWord> = deglex_words(a, None).take(words.len()).collect();
            assert_eq!(enumerated, words, "n = {n}");
        }
    }
}
