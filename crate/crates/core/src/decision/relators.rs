use std::collections::HashMap;

use super::abelian::RelatorLattice;
use super::abelian_codes;
use super::cyclic::{find_all, inverse};
use crate::construction::Presentation;
use crate::words::PowerWord;

/// A rotation of `r_j` (or of `r_j^-1` when `inv`) starting at `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RotRef {
    pub j: u32,
    pub inv: bool,
    pub offset: u32,
}

/// Relators as letter codes, indexed for the searches.
#[derive(Debug, Clone)]
pub struct RelatorSet {
    n: usize,
    words: Vec<Vec<i32>>,
    inverses: Vec<Vec<i32>>,
    lattice: RelatorLattice,
    starts: HashMap<i32, Vec<RotRef>>,
    all: Vec<RotRef>,
}

impl RelatorSet {
    pub fn new(n: u32, relators: &[PowerWord]) -> Self {
        Self::from_codes(n, relators.iter().map(|r| r.to_codes()).filter(|r| !r.is_empty()).collect())
    }

    pub fn from_codes(n: u32, words: Vec<Vec<i32>>) -> Self {
        let n = n as usize;
        let inverses: Vec<Vec<i32>> = words.iter().map(|w| inverse(w)).collect();
        let lattice = RelatorLattice::new(
            n,
            words.iter().map(|w| (abelian_codes(n, w), w.len() as u64)).collect(),
        );
        let mut starts: HashMap<i32, Vec<RotRef>> = HashMap::new();
        let mut all = Vec::new();
        for (j, w) in words.iter().enumerate() {
            let period = period(w);
            for (inv, base) in [(false, w), (true, &inverses[j])] {
                for (offset, &first) in base.iter().enumerate().take(period) {
                    let r = RotRef { j: j as u32, inv, offset: offset as u32 };
                    starts.entry(first).or_default().push(r);
                    all.push(r);
                }
            }
        }
        Self { n, words, inverses, lattice, starts, all }
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        Self::new(p.params.n(), &p.relator_words())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vec<i32>] {
        &self.words
    }

    pub fn lattice(&self) -> &RelatorLattice {
        &self.lattice
    }

    pub fn relator_len(&self, j: u32) -> u64 {
        self.words[j as usize].len() as u64
    }

    pub fn max_len(&self) -> u64 {
        self.words.iter().map(|w| w.len() as u64).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> u64 {
        self.words.iter().map(|w| w.len() as u64).min().unwrap_or(0)
    }

    pub fn starting_with(&self, code: i32) -> &[RotRef] {
        self.starts.get(&code).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Every distinct rotation of every relator and inverse, in a fixed order.
    pub fn rotations(&self) -> &[RotRef] {
        &self.all
    }

    fn base(&self, r: RotRef) -> &[i32] {
        if r.inv {
            &self.inverses[r.j as usize]
        } else {
            &self.words[r.j as usize]
        }
    }

    /// Letter `k` of the rotation.
    pub fn rotation_letter(&self, r: RotRef, k: usize) -> i32 {
        let b = self.base(r);
        b[(r.offset as usize + k) % b.len()]
    }

    pub fn rotation(&self, r: RotRef) -> Vec<i32> {
        let b = self.base(r);
        let o = r.offset as usize;
        let mut out = b[o..].to_vec();
        out.extend_from_slice(&b[..o]);
        out
    }

    pub fn abelian(&self, word: &[i32]) -> Vec<i64> {
        abelian_codes(self.n, word)
    }

    /// `ab(u) - ab(v)`.
    pub fn abelian_difference(&self, u: &PowerWord, v: &PowerWord) -> Vec<i64> {
        let (a, b) = (u.abelian(self.n as u32), v.abelian(self.n as u32));
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    }

    /// Index and orientation of a relator that `word` is a rotation of.
    pub fn match_rotation(&self, word: &[i32]) -> Option<(usize, bool)> {
        self.words.iter().enumerate().find_map(|(j, w)| {
            if w.len() != word.len() {
                return None;
            }
            [(false, w), (true, &self.inverses[j])].into_iter().find_map(|(inv, base)| {
                let mut doubled = base.clone();
                doubled.extend_from_slice(&base[..base.len() - 1]);
                let found = find_all(&doubled, word).next();
                found.map(|_| (j, inv))
            })
        })
    }
}

/// Least `p` with `w` invariant under rotation by `p`.
fn period(w: &[i32]) -> usize {
    let l = w.len();
    (1..=l).find(|&p| l.is_multiple_of(p) && (0..l).all(|i| w[i] == w[(i + p) % l])).unwrap_or(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_index_every_start() {
        let s = RelatorSet::from_codes(2, vec![vec![1, 2, -1, -2]]);
        let total: usize = [1, -1, 2, -2].iter().map(|&c| s.starting_with(c).len()).sum();
        assert_eq!(total, 8);
        for &c in &[1, -1, 2, -2] {
            for &r in s.starting_with(c) {
                assert_eq!(s.rotation(r)[0], c);
                assert_eq!(s.rotation_letter(r, 0), c);
            }
        }
        assert_eq!(s.match_rotation(&[2, 1, -2, -1]), Some((0, true)));
        assert_eq!(s.match_rotation(&[1, 1, 2, 2]), None);
    }

    #[test]
    fn periodic_relator_is_deduplicated() {
        let s = RelatorSet::from_codes(2, vec![vec![1, 2, 1, 2]]);
        assert_eq!(s.starting_with(1).len(), 1);
        assert_eq!(period(&[1, 2, 1, 2]), 2);
    }
}
