use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{face_matches, Diagram, DiagramError};
use crate::construction::Presentation;

/// Designated maximal selected subpath of one face: darts
/// `cycle[start], cycle[start + 1], ...` (cyclically), `len` of them.
/// The selection is every nontrivial subpath of these paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SelectedPath {
    pub face: usize,
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct Selection {
    pub paths: Vec<SelectedPath>,
}

impl Selection {
    pub fn for_face(&self, face: usize) -> impl Iterator<Item = &SelectedPath> {
        self.paths.iter().filter(move |p| p.face == face)
    }

    /// Position `pos` of the face cycle (length `len`) lies on a designated path.
    pub fn covers(&self, face: usize, pos: usize, cycle_len: usize) -> bool {
        self.for_face(face).any(|p| (pos + cycle_len - p.start % cycle_len) % cycle_len < p.len)
    }

    /// Selection of the mirror copy: each path is replaced by its inverse.
    pub fn mirrored(&self, d: &Diagram) -> Selection {
        Selection {
            paths: self
                .paths
                .iter()
                .map(|p| {
                    let l = d.faces[p.face].cycle.len();
                    SelectedPath { face: p.face, start: (2 * l - p.start - p.len) % l.max(1), len: p.len }
                })
                .collect(),
        }
    }
}

/// Dart flags: `true` for darts on some designated path.
pub fn selected_darts(d: &Diagram, sel: &Selection) -> Vec<bool> {
    let mut out = vec![false; d.darts.len()];
    for p in &sel.paths {
        let cycle = &d.faces[p.face].cycle;
        for k in 0..p.len.min(cycle.len()) {
            out[cycle[(p.start + k) % cycle.len()]] = true;
        }
    }
    out
}

/// Every subpath of the face contour whose label is `x_1^k ... x_n^k` or
/// `x_n^-k ... x_1^-k` with `n k > n/(2n-2) |∂Π|`, as `(start, len)`.
pub fn special_selection_candidates(label: &[i32], n: u32) -> Vec<(usize, usize)> {
    let l = label.len();
    if l == 0 || n < 2 {
        return Vec::new();
    }
    // cyclic runs: (start position, letter code, length)
    let mut runs: Vec<(usize, i32, usize)> = Vec::new();
    let first_break = (0..l).find(|&i| label[i] != label[(i + l - 1) % l]);
    let Some(s0) = first_break else {
        return Vec::new();
    };
    let mut i = 0;
    while i < l {
        let p = (s0 + i) % l;
        let c = label[p];
        let mut k = 1;
        while i + k < l && label[(s0 + i + k) % l] == c {
            k += 1;
        }
        runs.push((p, c, k));
        i += k;
    }
    let nr = runs.len();
    let n_us = n as usize;
    let mut out = Vec::new();
    if nr < n_us {
        return out;
    }
    for sign in [1i32, -1] {
        // letter sequence of the block in reading order
        let seq: Vec<i32> = if sign > 0 { (1..=n as i32).collect() } else { (1..=n as i32).rev().map(|i| -i).collect() };
        for a in 0..nr {
            let ok = (0..n_us).all(|t| runs[(a + t) % nr].1 == seq[t]);
            if !ok {
                continue;
            }
            let first = runs[a];
            let last = runs[(a + n_us - 1) % nr];
            let inner: Vec<usize> = (1..n_us - 1).map(|t| runs[(a + t) % nr].2).collect();
            let ks: Vec<usize> = match inner.first() {
                Some(&k) if inner.iter().all(|&x| x == k) => vec![k],
                Some(_) => vec![],
                None => (1..=first.2.min(last.2)).collect(),
            };
            for k in ks {
                if first.2 < k || last.2 < k {
                    continue;
                }
                // n k > n/(2n-2) l  <=>  k (2n - 2) > l
                if k * (2 * n_us - 2) <= l {
                    continue;
                }
                let start = (first.0 + first.2 - k) % l;
                out.push((start, n_us * k));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The unique special selection: one block per face.
pub fn special_selection(d: &Diagram, n: u32) -> Result<Selection, DiagramError> {
    let mut paths = Vec::with_capacity(d.faces.len());
    for f in 0..d.faces.len() {
        let c = special_selection_candidates(&d.face_label(f), n);
        match c.as_slice() {
            [] => return Err(DiagramError::NoSelection { face: f }),
            [(start, len)] => paths.push(SelectedPath { face: f, start: *start, len: *len }),
            _ => return Err(DiagramError::AmbiguousSelection { face: f, count: c.len() }),
        }
    }
    Ok(Selection { paths })
}

/// Index `i` of the relator `r_i` labelling the face (either orientation).
pub fn face_rank(d: &Diagram, face: usize, p: &Presentation) -> Result<u64, DiagramError> {
    let words = p.relator_words();
    let matches = face_matches(d, &words);
    matches
        .get(face)
        .copied()
        .flatten()
        .map(|m| p.relators[m.relator].i)
        .ok_or(DiagramError::UnmatchedFace { face })
}

pub(crate) fn rational(a: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_relator, ConstructionParams};
    use crate::diagram::DiagramBuilder;
    use crate::words::PowerWord;

    fn toy_face() -> (Diagram, Presentation) {
        let params = ConstructionParams::parse(3, "1/15", 2).unwrap();
        let rel = build_relator(&params, 1, &PowerWord::from_codes(&[2, 1])).unwrap();
        let mut b = DiagramBuilder::point();
        b.attach_face(0, 0, &rel.r.to_codes());
        (b.finish(), Presentation { params, relators: vec![rel] })
    }

    #[test]
    fn toy_block_is_selected() {
        let (d, p) = toy_face();
        let sel = special_selection(&d, 3).unwrap();
        assert_eq!(sel.paths, vec![SelectedPath { face: 0, start: 0, len: 15 }]);
        assert_eq!(face_rank(&d, 0, &p).unwrap(), 1);
        let m = d.mirror_copy();
        assert_eq!(face_rank(&m, 0, &p).unwrap(), 1);
        let msel = special_selection(&m, 3).unwrap();
        assert_eq!(msel, sel.mirrored(&d));
        let lab = m.face_label(0);
        let s = msel.paths[0];
        let block: Vec<i32> = (0..s.len).map(|k| lab[(s.start + k) % lab.len()]).collect();
        assert_eq!(block, [vec![-3; 5], vec![-2; 5], vec![-1; 5]].concat());
    }

    #[test]
    fn wrapped_block_and_missing_block() {
        // rotation of the toy relator that splits the x1 run across the seam
        let lab = [1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, -1, -2, 1, 1];
        assert_eq!(special_selection_candidates(&lab, 3), vec![(15, 15)]);
        assert!(special_selection_candidates(&[1, 2, 3, 1, 2, 3], 3).is_empty());
        assert!(special_selection_candidates(&[1, 2, -1, -2], 2).is_empty());
    }
}
