//! Budgeted decision procedures: bounded disc-diagram tests, the word
//! problem, regular normal forms and conjugacy.
//!
//! Every procedure answers yes, no, or budget-exceeded. A yes always carries
//! a witness that can be replayed independently; a no is returned only when
//! it is certified (abelian obstruction, free group, or an exhausted search
//! whose bound is a proven isoperimetric bound).

mod abelian;
mod area;
mod conjugacy;
pub mod cyclic;
mod normal_form;
mod relators;
mod rewrite;

use serde::Serialize;
use serde_json::json;

use crate::construction::Presentation;
use crate::diagram::Diagram;
use crate::words::PowerWord;

pub use abelian::{MinCost, RelatorLattice};
pub use area::{in_c, in_d, verify_diagram_witness, AreaSearch, SearchEnd};
pub use conjugacy::{are_conjugate, verify_conjugator};
pub use normal_form::{regular_candidates, regular_normal_form, regular_normal_form_report, NormalFormReport};
pub use relators::RelatorSet;
pub use rewrite::{rewrite_equal, verify_trace, RewriteStep, RewriteTrace, StepDirection};

/// Resource caps shared by all procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Diagram size cap `E`.
    pub max_edges: u64,
    /// Longest intermediate word in rewriting and enumeration.
    pub max_word_len: usize,
    /// Search states (or enumerated words) per call.
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_edges: 4096, max_word_len: 64, max_states: 20_000 }
    }
}

impl Budget {
    /// Budget that only admits answers settled in the free group.
    pub fn free_only() -> Self {
        Self { max_edges: 1, max_word_len: 1, max_states: 1 }
    }

    /// Lower `max_states` so that roughly `bytes` of search state suffice.
    pub fn with_memory_cap(mut self, bytes: u64) -> Self {
        const BYTES_PER_STATE: u64 = 512;
        let cap = (bytes / BYTES_PER_STATE).max(1);
        self.max_states = self.max_states.min(cap.min(usize::MAX as u64) as usize);
        self
    }
}

/// Which word-problem engine to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Bounded disc-diagram test.
    #[default]
    Diagram,
    /// Bidirectional relator-substitution search.
    Rewrite,
    /// Both; a yes from either is returned.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The two words are equal as reduced words.
    FreeReduction,
    /// Disc diagram whose contour reads `u v^-1`.
    Diagram { diagram: Diagram },
    /// Chain of relator substitutions from `u v^-1` to the empty word.
    Trace { trace: RewriteTrace },
    /// `u = c v c^-1`; `proof` shows `u^-1 c v c^-1 = 1` when a relator was used.
    Conjugator {
        #[serde(serialize_with = "word_text")]
        conjugator: PowerWord,
        proof: Option<Box<Witness>>,
    },
    /// Regular word equal to the input, with the equality proof.
    NormalForm {
        #[serde(serialize_with = "word_text")]
        normal_form: PowerWord,
        proof: Box<Witness>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// Distinct reduced words with no relators.
    FreeGroup,
    /// The abelian images differ by a vector outside the relator lattice.
    Abelian { difference: Vec<i64> },
    /// No diagram with at most `limit` face-boundary edges exists.
    SearchExhausted { limit: u64 },
    /// Exhausted search below a proven isoperimetric bound.
    Isoperimetric { limit: u64 },
    /// Complete search over all candidates.
    Candidates { count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exhaustion {
    States { cap: usize },
    Edges { needed: String, cap: u64 },
    WordLength { cap: usize },
    /// The bounded search found nothing, but its bound is not proven complete.
    Uncertified { limit: u64 },
    /// Some candidate could not be decided.
    Undecided { candidates: usize },
    /// The underlying search returned budget-exceeded.
    Nested { inner: Box<Exhaustion> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Outcome {
    Yes(Witness),
    No(Refutation),
    BudgetExceeded(Exhaustion),
}

impl Outcome {
    pub fn verdict(&self) -> Verdict {
        match self {
            Outcome::Yes(_) => Verdict::Yes,
            Outcome::No(_) => Verdict::No,
            Outcome::BudgetExceeded(_) => Verdict::BudgetExceeded,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Outcome::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Outcome::No(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Yes(w) => Some(w),
            _ => None,
        }
    }

    /// `{ "value": ..., "witness"?: ..., "reason"?: ... }`.
    pub fn to_json(&self, with_witness: bool) -> serde_json::Value {
        let mut v = json!({ "value": self.verdict() });
        match self {
            Outcome::Yes(w) if with_witness => v["witness"] = serde_json::to_value(w).expect("witness serializes"),
            Outcome::Yes(_) => {}
            Outcome::No(r) => v["reason"] = serde_json::to_value(r).expect("reason serializes"),
            Outcome::BudgetExceeded(e) => v["reason"] = serde_json::to_value(e).expect("reason serializes"),
        }
        v
    }
}

pub(crate) fn word_text<S: serde::Serializer>(w: &PowerWord, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(w)
}

pub(crate) fn words_text<S: serde::Serializer>(ws: &[PowerWord], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ws.iter().map(|w| w.to_string()))
}

/// Abelian image of a letter-code word over `n` letters.
pub fn abelian_codes(n: usize, word: &[i32]) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for &c in word {
        v[c.unsigned_abs() as usize - 1] += c.signum() as i64;
    }
    v
}

/// Decide `u = v` in the group of the presentation.
pub fn equals_in_g(p: &Presentation, u: &PowerWord, v: &PowerWord, budget: &Budget, engine: Engine) -> Outcome {
    let rels = RelatorSet::from_presentation(p);
    equals_with(&rels, p.area_bound_certified(), u, v, budget, engine, &p.params.q())
}

pub(crate) fn equals_with(
    rels: &RelatorSet,
    certified: bool,
    u: &PowerWord,
    v: &PowerWord,
    budget: &Budget,
    engine: Engine,
    q: &num_rational::BigRational,
) -> Outcome {
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
    let diagram = || match in_d(rels, q, u, v, budget) {
        Outcome::No(Refutation::SearchExhausted { limit }) if certified => {
            Outcome::No(Refutation::Isoperimetric { limit })
        }
        Outcome::No(Refutation::SearchExhausted { limit }) => Outcome::BudgetExceeded(Exhaustion::Uncertified { limit }),
        other => other,
    };
    match engine {
        Engine::Diagram => diagram(),
        Engine::Rewrite => rewrite_equal(rels, u, v, budget),
        Engine::Both => {
            let a = diagram();
            if a.is_yes() {
                return a;
            }
            let b = rewrite_equal(rels, u, v, budget);
            match (a, b) {
                (_, b @ Outcome::Yes(_)) => b,
                (a @ Outcome::No(_), _) => a,
                (_, b @ Outcome::No(_)) => b,
                (a, _) => a,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memory_cap_lowers_states() {
        let b = Budget::default().with_memory_cap(512 * 100);
        assert_eq!(b.max_states, 100);
        assert_eq!(Budget::default().with_memory_cap(u64::MAX).max_states, Budget::default().max_states);
    }

    #[test]
    fn outcome_json_shape() {
        let o = Outcome::No(Refutation::FreeGroup);
        assert_eq!(o.to_json(true)["value"], "no");
        let o = Outcome::BudgetExceeded(Exhaustion::States { cap: 3 });
        assert_eq!(o.to_json(true)["value"], "budget-exceeded");
        assert_eq!(o.to_json(true)["reason"]["kind"], "states");
    }
}
