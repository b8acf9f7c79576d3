use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::area::substitute;
use super::cyclic::{canonical, canonicalize, free_reduce, inverse};
use super::relators::RelatorSet;
use super::rewrite::verify_trace;
use super::{equals_with, in_c, verify_diagram_witness, Budget, Engine, Exhaustion, Outcome, Refutation, Witness};
use crate::construction::Presentation;
use crate::words::{deglex_words, is_cyclically_reduced, Alphabet, PowerWord};

/// Decide whether `u` and `v` are conjugate; on yes the witness carries `c`
/// with `u = c v c^-1`.
pub fn are_conjugate(p: &Presentation, u: &PowerWord, v: &PowerWord, budget: &Budget, engine: Engine) -> Outcome {
    let rels = RelatorSet::from_presentation(p);
    conjugate_with(&rels, p.area_bound_certified(), &p.params.q(), u, v, budget, engine)
}

fn pw(codes: &[i32]) -> PowerWord {
    PowerWord::from_codes(codes)
}

pub(crate) fn conjugate_with(
    rels: &RelatorSet,
    certified: bool,
    q: &BigRational,
    u: &PowerWord,
    v: &PowerWord,
    budget: &Budget,
    engine: Engine,
) -> Outcome {
    let (cu, cv) = (canonicalize(&u.to_codes()), canonicalize(&v.to_codes()));
    if cu.word == cv.word {
        let mut c = cu.delta.clone();
        c.extend(inverse(&cv.delta));
        return Outcome::Yes(Witness::Conjugator { conjugator: pw(&free_reduce(&c)), proof: None });
    }
    if rels.is_empty() {
        return Outcome::No(Refutation::FreeGroup);
    }
    let diff = rels.abelian_difference(u, v);
    if !rels.lattice().contains(&diff) {
        return Outcome::No(Refutation::Abelian { difference: diff });
    }

    let empty = PowerWord::empty();
    let trivial_u = equals_with(rels, certified, u, &empty, budget, engine, q);
    let trivial_v = equals_with(rels, certified, v, &empty, budget, engine, q);
    if trivial_u.is_yes() || trivial_v.is_yes() {
        return match equals_with(rels, certified, v, u, budget, engine, q) {
            Outcome::Yes(w) => Outcome::Yes(Witness::Conjugator { conjugator: empty, proof: Some(Box::new(w)) }),
            other => other,
        };
    }

    let contour = u.len() + v.len();
    let bound = q * BigRational::from_integer(BigInt::from(contour));
    let edge_bound = bound.floor().to_integer().to_u64().unwrap_or(u64::MAX);
    let capped = edge_bound > budget.max_edges;
    let edges = edge_bound.min(budget.max_edges);
    let Some(limit) = edges.saturating_mul(2).checked_sub(contour) else {
        return if capped {
            Outcome::BudgetExceeded(Exhaustion::Edges { needed: bound.to_string(), cap: budget.max_edges })
        } else {
            Outcome::No(Refutation::SearchExhausted { limit: 0 })
        };
    };

    let faces = trivial_words(rels, certified, q, edges, budget, engine);
    let face_set = RelatorSet::from_codes(rels.n() as u32, faces);
    match annulus_search(&face_set, &cu, &cv, limit, budget.max_states) {
        AnnulusEnd::Found { conjugator, sigma } => {
            let c = pw(&conjugator);
            let x = c.concat(v).concat(&c.inverse());
            if x == *u {
                return Outcome::Yes(Witness::Conjugator { conjugator: c, proof: None });
            }
            let e = BigRational::new(BigInt::from(sigma + x.len() + u.len()), BigInt::from(2));
            let proof = match in_c(rels, &e, &x, u, budget) {
                Outcome::Yes(w) => Some(w),
                _ => equals_with(rels, certified, &x, u, budget, Engine::Both, q).witness().cloned(),
            };
            match proof {
                Some(w) => Outcome::Yes(Witness::Conjugator { conjugator: c, proof: Some(Box::new(w)) }),
                None => Outcome::BudgetExceeded(Exhaustion::Nested {
                    inner: Box::new(Exhaustion::States { cap: budget.max_states }),
                }),
            }
        }
        AnnulusEnd::Exhausted if capped => {
            Outcome::BudgetExceeded(Exhaustion::Edges { needed: bound.to_string(), cap: budget.max_edges })
        }
        AnnulusEnd::Exhausted if certified && trivial_u.is_no() && trivial_v.is_no() => {
            Outcome::No(Refutation::Isoperimetric { limit })
        }
        AnnulusEnd::Exhausted => Outcome::BudgetExceeded(Exhaustion::Uncertified { limit }),
        AnnulusEnd::StatesCapped => Outcome::BudgetExceeded(Exhaustion::States { cap: budget.max_states }),
    }
}

/// Cyclically reduced words of length at most `max_len` that are trivial in
/// the group, one per cyclic class up to inversion, relators first. Words
/// beyond the budget are skipped; relators alone already make a negative
/// answer complete.
fn trivial_words(
    rels: &RelatorSet,
    certified: bool,
    q: &BigRational,
    max_len: u64,
    budget: &Budget,
    engine: Engine,
) -> Vec<Vec<i32>> {
    let key = |w: &[i32]| canonical(w).min(canonical(&inverse(w)));
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut out = Vec::new();
    for r in rels.words() {
        if r.len() as u64 <= max_len && seen.insert(key(r)) {
            out.push(r.clone());
        }
    }
    let Ok(alphabet) = Alphabet::new(rels.n() as u32) else {
        return out;
    };
    let len_cap = max_len.min(budget.max_word_len as u64);
    let word_cap = (budget.max_states / 8).max(1);
    let inner = Budget { max_states: (budget.max_states / 64).max(64), ..*budget };
    let empty = PowerWord::empty();
    let mut examined = 0usize;
    for w in deglex_words(alphabet, None) {
        if w.len() > len_cap {
            break;
        }
        examined += 1;
        if examined > word_cap {
            break;
        }
        if w.is_empty() || !is_cyclically_reduced(&w) || !rels.lattice().contains(&w.abelian(rels.n() as u32)) {
            continue;
        }
        let codes = w.to_codes();
        if seen.contains(&key(&codes)) {
            continue;
        }
        if equals_with(rels, certified, &w, &empty, &inner, engine, q).is_yes() {
            seen.insert(key(&codes));
            out.push(codes);
        }
    }
    out
}

enum AnnulusEnd {
    Found { conjugator: Vec<i32>, sigma: u64 },
    Exhausted,
    StatesCapped,
}

type Pair = (Rc<[i32]>, Rc<[i32]>);

struct PairNode {
    pair: Pair,
    /// `u = t_u U t_u^-1` and `v = t_v V t_v^-1` in the group.
    t_u: Vec<i32>,
    t_v: Vec<i32>,
}

/// Best-first search over pairs of cyclic words: every face of an annular
/// diagram can be collapsed through an edge on one of the two contours, so
/// the contours become freely conjugate after substitutions of total cost at
/// most `limit`.
fn annulus_search(
    faces: &RelatorSet,
    cu: &super::cyclic::Canonical,
    cv: &super::cyclic::Canonical,
    limit: u64,
    max_states: usize,
) -> AnnulusEnd {
    let mut memo: HashMap<Vec<i64>, Option<u64>> = HashMap::new();
    let mut heuristic = |a: &[i32], b: &[i32]| -> Option<u64> {
        if a == b {
            return Some(0);
        }
        if faces.is_empty() {
            return None;
        }
        let da = faces.abelian(a);
        let diff: Vec<i64> = da.iter().zip(faces.abelian(b)).map(|(x, y)| x - y).collect();
        let h = *memo
            .entry(diff)
            .or_insert_with_key(|d| faces.lattice().min_cost(d, limit, 4096).lower_bound());
        h.map(|h| h.max(faces.min_len()))
    };
    let start: Pair = (cu.word.clone().into(), cv.word.clone().into());
    let Some(h0) = heuristic(&start.0, &start.1) else {
        return AnnulusEnd::Exhausted;
    };
    if h0 > limit {
        return AnnulusEnd::Exhausted;
    }
    let mut nodes = vec![PairNode { pair: start.clone(), t_u: cu.delta.clone(), t_v: cv.delta.clone() }];
    let mut best: HashMap<Pair, u64> = HashMap::from([(start, 0)]);
    let mut heap = BinaryHeap::from([Reverse((h0, 0u64, 0usize))]);
    while let Some(Reverse((_, g, id))) = heap.pop() {
        let (a, b) = nodes[id].pair.clone();
        if best.get(&(a.clone(), b.clone())).is_some_and(|&x| x < g) {
            continue;
        }
        if a == b {
            let mut c = nodes[id].t_u.clone();
            c.extend(inverse(&nodes[id].t_v));
            return AnnulusEnd::Found { conjugator: free_reduce(&c), sigma: g };
        }
        for side in 0..2 {
            let word = if side == 0 { &a } else { &b };
            for at in 0..word.len() {
                for &rot in faces.starting_with(word[at]) {
                    let g2 = g + faces.relator_len(rot.j);
                    if g2 > limit {
                        continue;
                    }
                    let c = canonicalize(&substitute(faces, word, at, rot));
                    let next_word: Rc<[i32]> = c.word.into();
                    let pair = if side == 0 { (next_word, b.clone()) } else { (a.clone(), next_word) };
                    if best.get(&pair).is_some_and(|&x| x <= g2) {
                        continue;
                    }
                    let Some(h) = heuristic(&pair.0, &pair.1) else { continue };
                    if g2 + h > limit {
                        continue;
                    }
                    let (mut t_u, mut t_v) = (nodes[id].t_u.clone(), nodes[id].t_v.clone());
                    let t = if side == 0 { &mut t_u } else { &mut t_v };
                    t.extend_from_slice(&c.delta);
                    *t = free_reduce(t);
                    best.insert(pair.clone(), g2);
                    nodes.push(PairNode { pair, t_u, t_v });
                    if nodes.len() > max_states {
                        return AnnulusEnd::StatesCapped;
                    }
                    heap.push(Reverse((g2 + h, g2, nodes.len() - 1)));
                }
            }
        }
    }
    AnnulusEnd::Exhausted
}

/// Check `u = c v c^-1`: either freely, or through the attached proof that
/// `c v c^-1` equals `u`.
pub fn verify_conjugator(
    relators: &[PowerWord],
    u: &PowerWord,
    v: &PowerWord,
    c: &PowerWord,
    proof: Option<&Witness>,
) -> bool {
    let x = c.concat(v).concat(&c.inverse());
    if x == *u {
        return true;
    }
    match proof {
        Some(Witness::Diagram { diagram }) => verify_diagram_witness(relators, &x, u, diagram, None),
        Some(Witness::Trace { trace }) => verify_trace(relators, &x, u, trace),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_relator, ConstructionParams};

    fn toy() -> Presentation {
        let params = ConstructionParams::parse(3, "1/15", 2).unwrap();
        let rel = build_relator(&params, 1, &PowerWord::from_codes(&[2, 1])).unwrap();
        Presentation { params, relators: vec![rel] }
    }

    fn w(c: &[i32]) -> PowerWord {
        PowerWord::from_codes(c)
    }

    fn check(p: &Presentation, u: &PowerWord, v: &PowerWord, o: &Outcome) {
        let Outcome::Yes(Witness::Conjugator { conjugator, proof }) = o else { panic!("{o:?}") };
        assert!(verify_conjugator(&p.relator_words(), u, v, conjugator, proof.as_deref()));
    }

    #[test]
    fn cyclic_shift_is_conjugate() {
        let p = toy();
        let u = w(&[1, 2, -3, 2, 2]);
        let v = w(&[-3, 2, 2, 1, 2]);
        let o = are_conjugate(&p, &u, &v, &Budget::default(), Engine::Diagram);
        check(&p, &u, &v, &o);
        check(&p, &u, &u, &are_conjugate(&p, &u, &u, &Budget::default(), Engine::Diagram));
    }

    #[test]
    fn distinct_letters_are_not_conjugate() {
        let p = toy();
        let o = are_conjugate(&p, &w(&[1]), &w(&[2]), &Budget::default(), Engine::Diagram);
        assert!(matches!(o, Outcome::No(Refutation::Abelian { .. })));
        let free = Presentation::empty(p.params.clone());
        assert!(are_conjugate(&free, &w(&[1, 2]), &w(&[1, 1]), &Budget::default(), Engine::Diagram).is_no());
    }

    #[test]
    fn conjugate_through_a_relator() {
        let p = toy();
        let block = w(&[1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3]);
        let a = w(&[3]);
        let u = a.concat(&block).concat(&a.inverse());
        let v = w(&[2, 1]);
        let o = are_conjugate(&p, &u, &v, &Budget::default(), Engine::Diagram);
        check(&p, &u, &v, &o);
    }
}
