use std::fmt;

use super::letter::{GroupLetter, Sign};

/// A maximal run `x_index^exp` inside a [`PowerWord`]; `exp` is never zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub index: u32,
    pub exp: i64,
}

impl Run {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        self.exp.unsigned_abs()
    }

    pub fn letter(&self) -> GroupLetter {
        GroupLetter::new(self.index, if self.exp > 0 { Sign::Plus } else { Sign::Minus })
    }
}

/// Freely reduced group word stored as maximal runs.
///
/// Adjacent runs always carry distinct indices and no run has exponent zero,
/// so every value is reduced by construction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PowerWord {
    runs: Vec<Run>,
    len: u64,
}

impl PowerWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letter(l: GroupLetter) -> Self {
        Self::power(l.index(), l.sign().as_i64())
    }

    /// `x_index^exp`; zero exponent gives the empty word.
    pub fn power(index: u32, exp: i64) -> Self {
        let mut w = Self::empty();
        w.push_run(index, exp);
        w
    }

    pub fn from_letters<I: IntoIterator<Item = GroupLetter>>(letters: I) -> Self {
        let mut w = Self::empty();
        for l in letters {
            w.push_run(l.index(), l.sign().as_i64());
        }
        w
    }

    pub fn from_codes(codes: &[i32]) -> Self {
        Self::from_letters(codes.iter().map(|&c| GroupLetter::from_code(c)))
    }

    /// Build from `(index, exp)` pairs, freely reducing across them.
    pub fn from_runs<I: IntoIterator<Item = (u32, i64)>>(runs: I) -> Self {
        let mut w = Self::empty();
        for (index, exp) in runs {
            w.push_run(index, exp);
        }
        w
    }

    /// Append `x_index^exp` with free cancellation against the tail.
    pub fn push_run(&mut self, index: u32, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.runs.last_mut() {
            if last.index == index {
                let old = last.len();
                last.exp = last.exp.checked_add(exp).expect("exponent overflow");
                let new = last.len();
                self.len = self.len - old + new;
                if last.exp == 0 {
                    self.runs.pop();
                }
                return;
            }
        }
        self.runs.push(Run { index, exp });
        self.len = self.len.checked_add(exp.unsigned_abs()).expect("length overflow");
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    /// Length `|w|` in letters.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = GroupLetter> + '_ {
        self.runs
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.letter(), r.len() as usize))
    }

    pub fn to_letters(&self) -> Vec<GroupLetter> {
        self.letters().collect()
    }

    pub fn to_codes(&self) -> Vec<i32> {
        self.letters().map(GroupLetter::code).collect()
    }

    pub fn first_letter(&self) -> Option<GroupLetter> {
        self.runs.first().map(Run::letter)
    }

    pub fn last_letter(&self) -> Option<GroupLetter> {
        self.runs.last().map(Run::letter)
    }

    pub fn inverse(&self) -> Self {
        Self {
            runs: self
                .runs
                .iter()
                .rev()
                .map(|r| Run { index: r.index, exp: -r.exp })
                .collect(),
            len: self.len,
        }
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &PowerWord) -> Self {
        let mut w = self.clone();
        for r in &other.runs {
            w.push_run(r.index, r.exp);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Self::empty();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Exponent sums per basic letter (the image in `Z^n`), indexed `0..n`.
    pub fn abelian(&self, n: u32) -> Vec<i64> {
        let mut v = vec![0i64; n as usize];
        for r in &self.runs {
            v[(r.index - 1) as usize] += r.exp;
        }
        v
    }

    pub fn max_index(&self) -> u32 {
        self.runs.iter().map(|r| r.index).max().unwrap_or(0)
    }
}

impl fmt::Display for PowerWord {
    /// Text grammar: `x2 x1^-3`; the empty word prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.runs.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if r.exp == 1 {
                write!(f, "x{}", r.index)?;
            } else {
                write!(f, "x{}^{}", r.index, r.exp)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(codes: &[i32]) -> PowerWord {
        PowerWord::from_codes(codes)
    }

    #[test]
    fn runs_merge_and_cancel() {
        assert!(w(&[1, -1]).is_empty());
        assert_eq!(w(&[1, 1, 2]).runs(), &[Run { index: 1, exp: 2 }, Run { index: 2, exp: 1 }]);
        assert_eq!(w(&[2, 1, -1, 3]), w(&[2, 3]));
        assert_eq!(w(&[1, 2, -2, -1]).len(), 0);
    }

    #[test]
    fn inverse_and_concat() {
        let a = w(&[1, 1, 2, -3]);
        assert!(a.concat(&a.inverse()).is_empty());
        assert_eq!(a.inverse().to_codes(), vec![3, -2, -1, -1]);
        assert_eq!(w(&[1, 2]).pow(-2).to_codes(), vec![-2, -1, -2, -1]);
    }

    #[test]
    fn display_grammar() {
        assert_eq!(w(&[2, -1, -1, -1]).to_string(), "x2 x1^-3");
        assert_eq!(PowerWord::empty().to_string(), "");
        assert_eq!(PowerWord::power(7, 631).len(), 631);
    }
}
