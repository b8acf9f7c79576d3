use std::collections::HashMap;
use std::rc::Rc;

use serde::Serialize;

use super::cyclic::{canonical, inverse, is_rotation};
use super::relators::RelatorSet;
use super::{word_text, Budget, Exhaustion, Outcome, Refutation, Witness};
use crate::words::PowerWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepDirection {
    /// The move is applied to `from` and yields `to`.
    Forward,
    /// The move is applied to `to` and yields `from`.
    Backward,
}

/// One relator substitution between canonical cyclic words. The source word
/// is read from position `at`; its prefix `removed` is replaced by `inserted`,
/// where `removed · inserted^-1` is a rotation of the relator or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    #[serde(serialize_with = "word_text")]
    pub from: PowerWord,
    #[serde(serialize_with = "word_text")]
    pub to: PowerWord,
    pub direction: StepDirection,
    pub at: usize,
    #[serde(serialize_with = "word_text")]
    pub removed: PowerWord,
    #[serde(serialize_with = "word_text")]
    pub inserted: PowerWord,
    pub relator: usize,
}

/// Substitution chain from the cyclic word `u v^-1` down to the empty word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteTrace {
    #[serde(serialize_with = "word_text")]
    pub start: PowerWord,
    pub steps: Vec<RewriteStep>,
}

#[derive(Debug, Clone)]
struct MoveRec {
    at: usize,
    removed: Vec<i32>,
    inserted: Vec<i32>,
    relator: usize,
}

fn rotate_to(word: &[i32], at: usize) -> Vec<i32> {
    if word.is_empty() {
        return Vec::new();
    }
    let mut out = word[at..].to_vec();
    out.extend_from_slice(&word[..at]);
    out
}

fn apply(word: &[i32], at: usize, removed: &[i32], inserted: &[i32]) -> Option<Vec<i32>> {
    let rotated = rotate_to(word, at);
    if removed.len() > rotated.len() || rotated[..removed.len()] != *removed {
        return None;
    }
    let mut raw = inserted.to_vec();
    raw.extend_from_slice(&rotated[removed.len()..]);
    Some(canonical(&raw))
}

fn successors(rels: &RelatorSet, word: &[i32], max_len: usize) -> Vec<(Vec<i32>, MoveRec)> {
    let l = word.len();
    let mut out = Vec::new();
    for at in 0..l.max(1) {
        let rotated = rotate_to(word, at);
        for &rot in rels.rotations() {
            let r = rels.rotation(rot);
            let k = rotated.iter().zip(&r).take_while(|(a, b)| a == b).count();
            for kk in 0..=k {
                let inserted = inverse(&r[kk..]);
                let mut raw = inserted.clone();
                raw.extend_from_slice(&rotated[kk..]);
                let next = canonical(&raw);
                if next.len() > max_len {
                    continue;
                }
                out.push((next, MoveRec { at, removed: rotated[..kk].to_vec(), inserted, relator: rot.j as usize }));
            }
        }
    }
    out
}

type Link = Option<(usize, MoveRec)>;
type Edge = (Rc<[i32]>, Rc<[i32]>, MoveRec);

struct Side {
    index: HashMap<Rc<[i32]>, usize>,
    nodes: Vec<(Rc<[i32]>, Link)>,
    frontier: Vec<usize>,
}

impl Side {
    fn new(root: Vec<i32>) -> Self {
        let root: Rc<[i32]> = root.into();
        Side { index: HashMap::from([(root.clone(), 0)]), nodes: vec![(root, None)], frontier: vec![0] }
    }

    /// Moves from the root to node `id`, root first.
    fn path(&self, mut id: usize) -> Vec<Edge> {
        let mut out = Vec::new();
        while let Some((parent, mv)) = &self.nodes[id].1 {
            out.push((self.nodes[*parent].0.clone(), self.nodes[id].0.clone(), mv.clone()));
            id = *parent;
        }
        out.reverse();
        out
    }
}

fn pw(codes: &[i32]) -> PowerWord {
    PowerWord::from_codes(codes)
}

fn build_trace(start: &[i32], fwd: &Side, f_id: usize, bwd: &Side, b_id: usize) -> RewriteTrace {
    let mut steps = Vec::new();
    for (from, to, mv) in fwd.path(f_id) {
        steps.push(RewriteStep {
            from: pw(&from),
            to: pw(&to),
            direction: StepDirection::Forward,
            at: mv.at,
            removed: pw(&mv.removed),
            inserted: pw(&mv.inserted),
            relator: mv.relator,
        });
    }
    for (closer, farther, mv) in bwd.path(b_id).into_iter().rev() {
        steps.push(RewriteStep {
            from: pw(&farther),
            to: pw(&closer),
            direction: StepDirection::Backward,
            at: mv.at,
            removed: pw(&mv.removed),
            inserted: pw(&mv.inserted),
            relator: mv.relator,
        });
    }
    RewriteTrace { start: pw(start), steps }
}

/// Bidirectional breadth-first search between the cyclic word `u v^-1` and
/// the empty word, with every intermediate word at most `max_word_len` long.
/// A no is returned only for an abelian obstruction.
pub fn rewrite_equal(rels: &RelatorSet, u: &PowerWord, v: &PowerWord, budget: &Budget) -> Outcome {
    if u == v {
        return Outcome::Yes(Witness::FreeReduction);
    }
    if rels.is_empty() {
        return Outcome::No(Refutation::FreeGroup);
    }
    let diff = rels.abelian_difference(u, v);
    if !rels.lattice().contains(&diff) {
        return Outcome::No(Refutation::Abelian { difference: diff });
    }
    let mut raw = u.to_codes();
    raw.extend(v.inverse().to_codes());
    let start = canonical(&raw);
    if start.is_empty() {
        return Outcome::Yes(Witness::Trace { trace: RewriteTrace { start: PowerWord::empty(), steps: Vec::new() } });
    }
    if start.len() > budget.max_word_len {
        return Outcome::BudgetExceeded(Exhaustion::WordLength { cap: budget.max_word_len });
    }
    let mut sides = [Side::new(start.clone()), Side::new(Vec::new())];
    loop {
        let s = if sides[0].frontier.is_empty() {
            1
        } else if sides[1].frontier.is_empty() || sides[0].frontier.len() <= sides[1].frontier.len() {
            0
        } else {
            1
        };
        if sides[s].frontier.is_empty() {
            return Outcome::BudgetExceeded(Exhaustion::WordLength { cap: budget.max_word_len });
        }
        let frontier = std::mem::take(&mut sides[s].frontier);
        let mut next_frontier = Vec::new();
        for id in frontier {
            let word = sides[s].nodes[id].0.clone();
            for (next, mv) in successors(rels, &word, budget.max_word_len) {
                if sides[s].index.contains_key(next.as_slice()) {
                    continue;
                }
                let next: Rc<[i32]> = next.into();
                let side = &mut sides[s];
                side.nodes.push((next.clone(), Some((id, mv))));
                let nid = side.nodes.len() - 1;
                side.index.insert(next.clone(), nid);
                next_frontier.push(nid);
                if let Some(&other) = sides[1 - s].index.get(&next) {
                    let trace = if s == 0 {
                        build_trace(&start, &sides[0], nid, &sides[1], other)
                    } else {
                        build_trace(&start, &sides[0], other, &sides[1], nid)
                    };
                    return Outcome::Yes(Witness::Trace { trace });
                }
                if sides[0].nodes.len() + sides[1].nodes.len() > budget.max_states {
                    return Outcome::BudgetExceeded(Exhaustion::States { cap: budget.max_states });
                }
            }
        }
        sides[s].frontier = next_frontier;
    }
}

/// Replay a trace against the relators: it must start at the canonical form
/// of `u v^-1`, chain step to step, end at the empty word, and every step must
/// be a genuine relator substitution.
pub fn verify_trace(relators: &[PowerWord], u: &PowerWord, v: &PowerWord, trace: &RewriteTrace) -> bool {
    let mut raw = u.to_codes();
    raw.extend(v.inverse().to_codes());
    if canonical(&raw) != trace.start.to_codes() {
        return false;
    }
    let mut current = trace.start.to_codes();
    for step in &trace.steps {
        let (from, to) = (step.from.to_codes(), step.to.to_codes());
        if from != current || canonical(&from) != from || canonical(&to) != to {
            return false;
        }
        let Some(r) = relators.get(step.relator).map(PowerWord::to_codes) else {
            return false;
        };
        let (removed, inserted) = (step.removed.to_codes(), step.inserted.to_codes());
        let mut piece = removed.clone();
        piece.extend(inverse(&inserted));
        if !is_rotation(&r, &piece) && !is_rotation(&inverse(&r), &piece) {
            return false;
        }
        let (src, dst) = match step.direction {
            StepDirection::Forward => (&from, &to),
            StepDirection::Backward => (&to, &from),
        };
        if step.at >= src.len().max(1) || apply(src, step.at, &removed, &inserted).as_ref() != Some(dst) {
            return false;
        }
        current = to;
    }
    current.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> (RelatorSet, Vec<PowerWord>) {
        let r = PowerWord::from_codes(&[1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, -1, -2]);
        (RelatorSet::new(3, std::slice::from_ref(&r)), vec![r])
    }

    fn w(c: &[i32]) -> PowerWord {
        PowerWord::from_codes(c)
    }

    #[test]
    fn relator_block_equals_w() {
        let (rels, words) = toy();
        let u = w(&[1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3]);
        let v = w(&[2, 1]);
        let o = rewrite_equal(&rels, &u, &v, &Budget::default());
        let Outcome::Yes(Witness::Trace { trace }) = o else { panic!("{o:?}") };
        assert!(verify_trace(&words, &u, &v, &trace));
        assert!(!verify_trace(&words, &u, &w(&[2, 2]), &trace));
    }

    #[test]
    fn conjugate_of_relator_and_tampering() {
        let (rels, words) = toy();
        let a = w(&[3, -2]);
        let g = a.concat(&words[0]).concat(&a.inverse()).concat(&w(&[2])).concat(&words[0]).concat(&w(&[-2]));
        let o = rewrite_equal(&rels, &g, &PowerWord::empty(), &Budget::default());
        let Outcome::Yes(Witness::Trace { mut trace }) = o else { panic!("{o:?}") };
        assert!(verify_trace(&words, &g, &PowerWord::empty(), &trace));
        trace.steps[0].relator = 1;
        assert!(!verify_trace(&words, &g, &PowerWord::empty(), &trace));
    }

    #[test]
    fn abelian_no_and_word_length_budget() {
        let (rels, _) = toy();
        assert!(rewrite_equal(&rels, &w(&[1]), &w(&[2]), &Budget::default()).is_no());
        let tight = Budget { max_word_len: 4, ..Budget::default() };
        let o = rewrite_equal(&rels, &w(&[1, 2, -1]), &w(&[2]), &tight);
        assert!(matches!(o, Outcome::BudgetExceeded(Exhaustion::WordLength { .. })), "{o:?}");
    }
}
