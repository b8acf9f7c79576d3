use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::cyclic::{canonicalize, CyclicOp};
use super::relators::{RelatorSet, RotRef};
use super::{Exhaustion, Outcome, Refutation, Witness};
use crate::diagram::{validate_diagram, Diagram, DiagramBuilder};
use crate::words::PowerWord;

/// Replace letter `at` of `word` (equal to the rotation's first letter `x`,
/// with rotation `x t`) by `t^-1`.
pub(crate) fn substitute(rels: &RelatorSet, word: &[i32], at: usize, rot: RotRef) -> Vec<i32> {
    let l = rels.relator_len(rot.j) as usize;
    let mut out = Vec::with_capacity(word.len() + l);
    out.extend_from_slice(&word[..at]);
    out.extend((1..l).rev().map(|k| -rels.rotation_letter(rot, k)));
    out.extend_from_slice(&word[at + 1..]);
    out
}

/// A single-letter relator substitution on a canonical cyclic word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub at: usize,
    pub rot: RotRef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchEnd {
    Found(Vec<Move>),
    /// No sequence with total face perimeter within the limit exists.
    Exhausted,
    StatesCapped,
}

/// Best-first search for a disc diagram, phrased on contour words.
///
/// Every dart of a disc diagram lies on one face or on the contour, so
/// `2E = Σ|∂Π| + |contour|`. Removing a face through one of its contour
/// edges replaces a letter `x` by `t^-1` where `x t` is a rotation of a
/// relator; removing a spur is a cyclic cancellation. A contour word therefore
/// bounds a diagram with face perimeter total at most `limit` iff it reduces
/// to the empty word by such substitutions of total cost at most `limit`.
pub struct AreaSearch<'a> {
    rels: &'a RelatorSet,
    limit: u64,
    max_states: usize,
    heuristic_nodes: usize,
}

struct Node {
    word: Rc<[i32]>,
    parent: usize,
    mv: Option<Move>,
}

impl<'a> AreaSearch<'a> {
    pub fn new(rels: &'a RelatorSet, limit: u64, max_states: usize) -> Self {
        Self { rels, limit, max_states, heuristic_nodes: 4096 }
    }

    /// Lower bound on the remaining cost, `None` when the state is hopeless.
    fn heuristic(&self, memo: &mut HashMap<Vec<i64>, Option<u64>>, word: &[i32]) -> Option<u64> {
        if word.is_empty() {
            return Some(0);
        }
        let ab = self.rels.abelian(word);
        let h = *memo
            .entry(ab)
            .or_insert_with_key(|ab| self.rels.lattice().min_cost(ab, self.limit, self.heuristic_nodes).lower_bound());
        h.map(|h| h.max(self.rels.min_len()))
    }

    /// Returns the outcome and the number of states created.
    pub fn run(&self, start_raw: &[i32]) -> (SearchEnd, usize) {
        let start: Rc<[i32]> = canonicalize(start_raw).word.into();
        if start.is_empty() {
            return (SearchEnd::Found(Vec::new()), 1);
        }
        let mut memo = HashMap::new();
        let Some(h0) = self.heuristic(&mut memo, &start) else {
            return (SearchEnd::Exhausted, 1);
        };
        if h0 > self.limit {
            return (SearchEnd::Exhausted, 1);
        }
        let mut nodes = vec![Node { word: start.clone(), parent: usize::MAX, mv: None }];
        let mut best: HashMap<Rc<[i32]>, u64> = HashMap::from([(start, 0)]);
        let mut heap = BinaryHeap::from([Reverse((h0, 0u64, 0usize))]);
        while let Some(Reverse((_, g, id))) = heap.pop() {
            let word = nodes[id].word.clone();
            if best.get(&word).is_some_and(|&b| b < g) {
                continue;
            }
            for at in 0..word.len() {
                for &rot in self.rels.starting_with(word[at]) {
                    let g2 = g + self.rels.relator_len(rot.j);
                    if g2 > self.limit {
                        continue;
                    }
                    let next: Rc<[i32]> = canonicalize(&substitute(self.rels, &word, at, rot)).word.into();
                    if best.get(&next).is_some_and(|&b| b <= g2) {
                        continue;
                    }
                    let Some(h) = self.heuristic(&mut memo, &next) else { continue };
                    if g2 + h > self.limit {
                        continue;
                    }
                    nodes.push(Node { word: next.clone(), parent: id, mv: Some(Move { at, rot }) });
                    let nid = nodes.len() - 1;
                    if next.is_empty() {
                        return (SearchEnd::Found(trace(&nodes, nid)), nodes.len());
                    }
                    if nodes.len() > self.max_states {
                        return (SearchEnd::StatesCapped, nodes.len());
                    }
                    best.insert(next, g2);
                    heap.push(Reverse((g2 + h, g2, nid)));
                }
            }
        }
        (SearchEnd::Exhausted, nodes.len())
    }
}

fn trace(nodes: &[Node], mut id: usize) -> Vec<Move> {
    let mut out = Vec::new();
    while let Some(mv) = nodes[id].mv {
        out.push(mv);
        id = nodes[id].parent;
    }
    out.reverse();
    out
}

fn undo(b: &mut DiagramBuilder, ops: &[CyclicOp]) {
    for op in ops.iter().rev() {
        match *op {
            CyclicOp::Cancel { at, letter } => b.insert_spur(at, letter),
            CyclicOp::Rotate { by } => b.rotate_right(by),
        }
    }
}

/// Rebuild the disc diagram certified by a move sequence from `raw`.
pub(crate) fn witness_diagram(rels: &RelatorSet, raw: &[i32], moves: &[Move]) -> Diagram {
    let first = canonicalize(raw);
    let mut word = first.word.clone();
    let mut records = Vec::with_capacity(moves.len());
    for &mv in moves {
        let c = canonicalize(&substitute(rels, &word, mv.at, mv.rot));
        records.push((mv, c.ops));
        word = c.word;
    }
    debug_assert!(word.is_empty());
    let mut b = DiagramBuilder::point();
    for (mv, ops) in records.iter().rev() {
        undo(&mut b, ops);
        let k = rels.relator_len(mv.rot.j) as usize - 1;
        let x = rels.rotation_letter(mv.rot, 0);
        b.attach_face(mv.at, k, &[-x]);
    }
    undo(&mut b, &first.ops);
    b.finish()
}

fn contour_word(u: &PowerWord, v: &PowerWord) -> Vec<i32> {
    let mut raw = u.to_codes();
    raw.extend(v.inverse().to_codes());
    raw
}

/// Is there a disc diagram over the relators with at most `e` edges whose
/// contour reads `u v^-1`?
pub fn in_c(rels: &RelatorSet, e: &BigRational, u: &PowerWord, v: &PowerWord, budget: &crate::decision::Budget) -> Outcome {
    let contour = u.len() + v.len();
    let two_e = (e * BigRational::from_integer(BigInt::from(2))).floor().to_integer();
    let capped = two_e > BigInt::from(budget.max_edges) * 2;
    let two_e = if capped { budget.max_edges.saturating_mul(2) } else { two_e.to_u64().unwrap_or(u64::MAX) };
    let Some(limit) = two_e.checked_sub(contour) else {
        return if capped {
            Outcome::BudgetExceeded(Exhaustion::Edges { needed: e.to_string(), cap: budget.max_edges })
        } else {
            Outcome::No(Refutation::SearchExhausted { limit: 0 })
        };
    };
    let raw = contour_word(u, v);
    match AreaSearch::new(rels, limit, budget.max_states).run(&raw).0 {
        SearchEnd::Found(moves) => Outcome::Yes(Witness::Diagram { diagram: witness_diagram(rels, &raw, &moves) }),
        SearchEnd::Exhausted if capped => {
            Outcome::BudgetExceeded(Exhaustion::Edges { needed: e.to_string(), cap: budget.max_edges })
        }
        SearchEnd::Exhausted => Outcome::No(Refutation::SearchExhausted { limit }),
        SearchEnd::StatesCapped => Outcome::BudgetExceeded(Exhaustion::States { cap: budget.max_states }),
    }
}

/// `in_c` with `E = (1 + qL)/2 (|u| + |v|)`, `L` the longest relator length.
pub fn in_d(rels: &RelatorSet, q: &BigRational, u: &PowerWord, v: &PowerWord, budget: &crate::decision::Budget) -> Outcome {
    let int = |x: u64| BigRational::from_integer(BigInt::from(x));
    let e = (BigRational::one() + q * int(rels.max_len())) / int(2) * int(u.len() + v.len());
    in_c(rels, &e, u, v, budget)
}

/// Independent check of a diagram witness: valid over the relators, one
/// contour reading exactly `u v^-1`, and at most `max_edges` edges.
pub fn verify_diagram_witness(relators: &[PowerWord], u: &PowerWord, v: &PowerWord, d: &Diagram, max_edges: Option<u64>) -> bool {
    let rep = validate_diagram(d, relators);
    rep.valid
        && d.contours.len() == 1
        && d.label_codes(&d.contours[0]) == contour_word(u, v)
        && max_edges.is_none_or(|m| d.edge_count() as u64 <= m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::Budget;

    fn toy() -> (RelatorSet, Vec<PowerWord>) {
        let r = PowerWord::from_codes(&[1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, -1, -2]);
        (RelatorSet::new(3, std::slice::from_ref(&r)), vec![r])
    }

    fn w(c: &[i32]) -> PowerWord {
        PowerWord::from_codes(c)
    }

    fn int(x: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn free_one_edge_diagram() {
        let rels = RelatorSet::new(3, &[]);
        let o = in_c(&rels, &int(1), &w(&[1]), &w(&[1]), &Budget::default());
        let Outcome::Yes(Witness::Diagram { diagram }) = o else { panic!("{o:?}") };
        assert_eq!(diagram.edge_count(), 1);
        assert!(verify_diagram_witness(&[], &w(&[1]), &w(&[1]), &diagram, Some(1)));
        assert!(in_c(&rels, &int(5), &w(&[1]), &w(&[2]), &Budget::default()).is_no());
    }

    #[test]
    fn one_face_diagram() {
        let (rels, words) = toy();
        let u = w(&[1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3]);
        let v = w(&[2, 1]);
        let o = in_c(&rels, &int(17), &u, &v, &Budget::default());
        let Outcome::Yes(Witness::Diagram { diagram }) = o else { panic!("{o:?}") };
        assert_eq!(diagram.faces.len(), 1);
        assert!(verify_diagram_witness(&words, &u, &v, &diagram, Some(17)));
        let o = in_d(&rels, &BigRational::one(), &v, &u, &Budget::default());
        assert!(o.is_yes());
        // one edge short of the face
        assert!(in_c(&rels, &int(16), &u, &v, &Budget::default()).is_no());
    }

    #[test]
    fn conjugated_relator_needs_spurs() {
        let (rels, words) = toy();
        let a = w(&[3, -2]);
        let r = words[0].clone();
        let g = a.concat(&r).concat(&a.inverse());
        let o = in_d(&rels, &BigRational::one(), &g, &PowerWord::empty(), &Budget::default());
        let Outcome::Yes(Witness::Diagram { diagram }) = o else { panic!("{o:?}") };
        assert!(verify_diagram_witness(&words, &g, &PowerWord::empty(), &diagram, None));
        assert_eq!(diagram.faces.len(), 1);
        assert_eq!(diagram.edge_count() as u64, (17 + g.len()) / 2);
    }

    #[test]
    fn two_faces() {
        let (rels, words) = toy();
        let r = words[0].clone();
        let g = r.concat(&w(&[2])).concat(&r).concat(&w(&[-2]));
        let o = in_d(&rels, &BigRational::one(), &g, &PowerWord::empty(), &Budget::default());
        let Outcome::Yes(Witness::Diagram { diagram }) = o else { panic!("{o:?}") };
        assert_eq!(diagram.faces.len(), 2);
        assert!(verify_diagram_witness(&words, &g, &PowerWord::empty(), &diagram, None));
    }
}
