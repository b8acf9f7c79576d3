//! Cyclic words over packed letter codes, with an op log that lets a
//! diagram builder replay every cancellation and rotation in reverse.

/// One step of cyclic canonicalization, in terms of the word at that moment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicOp {
    /// Remove `word[at], word[at + 1]` (mutually inverse, first is `letter`).
    Cancel { at: usize, letter: i32 },
    /// `new[i] = old[(i + by) % len]`.
    Rotate { by: usize },
}

/// Result of bringing a word into canonical cyclic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub word: Vec<i32>,
    pub ops: Vec<CyclicOp>,
    /// `word = delta^-1 · input · delta` in the free group.
    pub delta: Vec<i32>,
}

/// Free reduction, then cyclic reduction, then least rotation.
pub fn canonicalize(input: &[i32]) -> Canonical {
    let mut ops = Vec::new();
    let mut stack: Vec<i32> = Vec::with_capacity(input.len());
    for &x in input {
        if stack.last() == Some(&-x) {
            let at = stack.len() - 1;
            ops.push(CyclicOp::Cancel { at, letter: -x });
            stack.pop();
        } else {
            stack.push(x);
        }
    }
    let mut delta = Vec::new();
    while stack.len() >= 2 && stack[0] == -stack[stack.len() - 1] {
        let first = stack.remove(0);
        stack.push(first);
        ops.push(CyclicOp::Rotate { by: 1 });
        delta.push(first);
        let at = stack.len() - 2;
        ops.push(CyclicOp::Cancel { at, letter: stack[at] });
        stack.truncate(at);
    }
    let by = least_rotation(&stack);
    if by != 0 {
        ops.push(CyclicOp::Rotate { by });
        delta.extend_from_slice(&stack[..by]);
        stack.rotate_left(by);
    }
    Canonical { word: stack, ops, delta: free_reduce(&delta) }
}

/// Canonical representative only.
pub fn canonical(input: &[i32]) -> Vec<i32> {
    canonicalize(input).word
}

pub fn free_reduce(input: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(input.len());
    for &x in input {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&x| -x).collect()
}

/// Start of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation(s: &[i32]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut f = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = f[j - k - 1];
        while i != usize::MAX && sj != s[(k + i + 1) % n] {
            if sj < s[(k + i + 1) % n] {
                k = j - i - 1;
            }
            i = f[i];
        }
        if i == usize::MAX && sj != s[(k + i.wrapping_add(1)) % n] {
            if sj < s[(k + i.wrapping_add(1)) % n] {
                k = j;
            }
            f[j - k] = usize::MAX;
        } else {
            f[j - k] = i.wrapping_add(1);
        }
    }
    k
}

/// All rotations `x·t` of `r` and of `r^-1`, as `(rotation, |r|)`.
pub fn rotations_with_inverse(r: &[i32]) -> Vec<Vec<i32>> {
    let inv = inverse(r);
    let mut out = Vec::with_capacity(2 * r.len());
    for base in [r, &inv[..]] {
        for k in 0..base.len() {
            let mut rot = base[k..].to_vec();
            rot.extend_from_slice(&base[..k]);
            out.push(rot);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Is `b` a cyclic rotation of `a`?
pub fn is_rotation(a: &[i32], b: &[i32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let mut doubled = a.to_vec();
    doubled.extend_from_slice(a);
    let found = find_all(&doubled[..2 * a.len() - 1], b).next().is_some();
    found
}

/// Start offsets of `pat` in `text` (Knuth–Morris–Pratt).
pub fn find_all<'a>(text: &'a [i32], pat: &'a [i32]) -> impl Iterator<Item = usize> + 'a {
    let m = pat.len();
    let mut fail = vec![0usize; m];
    let mut k = 0;
    for i in 1..m {
        while k > 0 && pat[i] != pat[k] {
            k = fail[k - 1];
        }
        if pat[i] == pat[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut q = 0usize;
    text.iter().enumerate().filter_map(move |(i, &c)| {
        if m == 0 {
            return Some(i);
        }
        while q > 0 && c != pat[q] {
            q = fail[q - 1];
        }
        if c == pat[q] {
            q += 1;
        }
        if q == m {
            q = fail[q - 1];
            Some(i + 1 - m)
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_least_rotation(s: &[i32]) -> Vec<i32> {
        (0..s.len().max(1))
            .map(|k| {
                let mut r = s.to_vec();
                if !s.is_empty() {
                    r.rotate_left(k);
                }
                r
            })
            .min()
            .unwrap()
    }

    fn replay_forward(input: &[i32], ops: &[CyclicOp]) -> Vec<i32> {
        let mut w = input.to_vec();
        let mut stack_phase = true;
        for op in ops {
            match *op {
                CyclicOp::Cancel { at, letter } => {
                    if stack_phase {
                        // linear phase: ops refer to stack ++ remaining input,
                        // which a literal replay realizes by scanning
                        let pos = (0..w.len() - 1).find(|&i| w[i] == -w[i + 1]).unwrap();
                        assert_eq!(w[pos], letter);
                        let _ = at;
                        w.drain(pos..pos + 2);
                    } else {
                        assert_eq!(w[at], letter);
                        assert_eq!(w[at + 1], -letter);
                        w.drain(at..at + 2);
                    }
                }
                CyclicOp::Rotate { by } => {
                    stack_phase = false;
                    w.rotate_left(by);
                }
            }
        }
        w
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical(&[1, 2, -1]), vec![2]);
        assert_eq!(canonical(&[1, -1]), Vec::<i32>::new());
        assert_eq!(canonical(&[2, 1]), vec![1, 2]);
        let c = canonicalize(&[3, 2, 1, -3]);
        assert_eq!(c.word, vec![1, 2]);
        // word = delta^-1 input delta
        let mut check = inverse(&c.delta);
        check.extend_from_slice(&[3, 2, 1, -3]);
        check.extend_from_slice(&c.delta);
        assert_eq!(free_reduce(&check), c.word);
    }

    #[test]
    fn kmp_and_rotation() {
        assert_eq!(find_all(&[1, 2, 1, 2, 1], &[1, 2, 1]).collect::<Vec<_>>(), vec![0, 2]);
        assert!(is_rotation(&[1, 2, 3], &[3, 1, 2]));
        assert!(!is_rotation(&[1, 2, 3], &[3, 2, 1]));
        assert_eq!(rotations_with_inverse(&[1, 2]).len(), 4);
    }

    fn words() -> impl Strategy<Value = Vec<i32>> {
        prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2, 3, -3]), 0..24)
    }

    proptest! {
        #[test]
        fn booth_matches_brute_force(s in prop::collection::vec(0i32..3, 0..16)) {
            let k = least_rotation(&s);
            let mut r = s.clone();
            if !s.is_empty() { r.rotate_left(k); }
            prop_assert_eq!(r, brute_least_rotation(&s));
        }

        #[test]
        fn canonical_is_conjugate_and_stable(s in words()) {
            let c = canonicalize(&s);
            let mut check = inverse(&c.delta);
            check.extend_from_slice(&s);
            check.extend_from_slice(&c.delta);
            prop_assert_eq!(free_reduce(&check), c.word.clone());
            prop_assert_eq!(canonical(&c.word), c.word.clone());
            prop_assert_eq!(replay_forward(&s, &c.ops), c.word.clone());
            let mut rotated = s.clone();
            if !s.is_empty() { rotated.rotate_left(s.len() / 2); }
            prop_assert_eq!(canonical(&rotated), c.word);
        }
    }
}
