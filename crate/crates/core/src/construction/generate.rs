use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{build_relator, relator_word_shape, ConstructionError, ConstructionParams, Presentation, Relator};
use crate::decision::{in_d, Budget, Exhaustion, Outcome, RelatorSet};
use crate::words::{deglex_words, regular_word, Alphabet, PowerWord};

/// Result of one selection step.
#[derive(Debug, Clone, PartialEq)]
pub enum NextW {
    Found(PowerWord),
    /// The scan stopped at `at` without deciding it.
    BudgetExceeded { at: PowerWord, reason: Exhaustion },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateOutcome {
    pub presentation: Presentation,
    /// Set when fewer relators than requested were produced.
    pub truncated: Option<Exhaustion>,
}

fn floor_q_times(q: &BigRational, k: u64) -> u64 {
    (q * BigRational::from_integer(BigInt::from(k))).floor().to_integer().to_u64().unwrap_or(u64::MAX)
}

enum Verdict {
    Skip,
    Select,
    Undecided(Exhaustion),
}

/// Is `w` in `D` together with some regular word of length at most
/// `(n+1)|w| + n^4 L`?
fn scan_regular(rels: &RelatorSet, q: &BigRational, w: &PowerWord, budget: &Budget) -> Verdict {
    let n = rels.n() as u64;
    let l = rels.max_len();
    let bound = (n + 1).saturating_mul(w.len()).saturating_add(n.pow(4).saturating_mul(l));
    let limit = floor_q_times(q, l.saturating_mul(bound.saturating_add(w.len())));
    let Some(translates) = rels.lattice().translates(&w.abelian(rels.n() as u32), limit, budget.max_states) else {
        return Verdict::Undecided(Exhaustion::States { cap: budget.max_states });
    };
    // regular words outside this list fail the D-test on abelian grounds
    let mut candidates: Vec<PowerWord> = translates
        .into_iter()
        .filter_map(|(exps, cost)| {
            let len: u64 = exps.iter().map(|e| e.unsigned_abs()).sum();
            (len <= bound && cost <= floor_q_times(q, l.saturating_mul(len + w.len()))).then(|| regular_word(&exps))
        })
        .collect();
    candidates.sort_by(crate::words::deglex_compare);
    let chunk = 2 * rayon::current_num_threads().max(1);
    let mut undecided = None;
    for batch in candidates.chunks(chunk) {
        let outcomes: Vec<Outcome> = batch.par_iter().map(|u| in_d(rels, q, u, w, budget)).collect();
        if outcomes.iter().any(Outcome::is_yes) {
            return Verdict::Skip;
        }
        if undecided.is_none() {
            undecided = outcomes.into_iter().find_map(|o| match o {
                Outcome::BudgetExceeded(e) => Some(e),
                _ => None,
            });
        }
    }
    match undecided {
        Some(e) => Verdict::Undecided(Exhaustion::Nested { inner: Box::new(e) }),
        None => Verdict::Select,
    }
}

/// The deg-lex least word of relator shape that passes the D-test against
/// every regular word within the length bound.
pub fn next_w(params: &ConstructionParams, rel: &[Relator], budget: &Budget) -> NextW {
    let alphabet = Alphabet::new(params.n()).expect("params hold a positive n");
    let words: Vec<PowerWord> = rel.iter().map(|r| r.r.clone()).collect();
    let rels = RelatorSet::new(params.n(), &words);
    let q = params.q();
    let mut examined = 0usize;
    for w in deglex_words(alphabet, None) {
        if relator_word_shape(alphabet, &w).is_err() {
            continue;
        }
        // over the free group a reduced word equals a regular word only if it is one
        if rels.is_empty() {
            return NextW::Found(w);
        }
        examined += 1;
        if examined > budget.max_states {
            return NextW::BudgetExceeded { at: w, reason: Exhaustion::States { cap: budget.max_states } };
        }
        match scan_regular(&rels, &q, &w, budget) {
            Verdict::Skip => {}
            Verdict::Select => return NextW::Found(w),
            Verdict::Undecided(reason) => return NextW::BudgetExceeded { at: w, reason },
        }
    }
    unreachable!("the deg-lex enumeration is infinite")
}

/// Run `count` construction steps, stopping early on budget exhaustion.
pub fn generate(params: &ConstructionParams, count: u64, budget: &Budget) -> Result<GenerateOutcome, ConstructionError> {
    let mut presentation = Presentation::empty(params.clone());
    for i in 1..=count {
        match next_w(params, &presentation.relators, budget) {
            NextW::Found(w) => presentation.relators.push(build_relator(params, i, &w)?),
            NextW::BudgetExceeded { reason, .. } => {
                return Ok(GenerateOutcome { presentation, truncated: Some(reason) });
            }
        }
    }
    Ok(GenerateOutcome { presentation, truncated: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_word_without_relators() {
        for n in [3, 4, 63] {
            let p = ConstructionParams::parse(n, "1/15", 2).unwrap();
            assert_eq!(next_w(&p, &[], &Budget::free_only()), NextW::Found(PowerWord::from_codes(&[2, 1])));
        }
    }

    #[test]
    fn toy_generation() {
        let p = ConstructionParams::parse(3, "1/15", 2).unwrap();
        let g = generate(&p, 0, &Budget::default()).unwrap();
        assert!(g.presentation.relators.is_empty() && g.truncated.is_none());
        let g = generate(&p, 1, &Budget::default()).unwrap();
        assert_eq!(g.presentation.relators.len(), 1);
        assert_eq!(g.presentation.relators[0].r.to_string(), "x1^5 x2^5 x3^5 x1^-1 x2^-1");
    }

    #[test]
    fn relator_word_is_skipped_afterwards() {
        let p = ConstructionParams::parse(3, "1/15", 2).unwrap();
        let r1 = build_relator(&p, 1, &PowerWord::from_codes(&[2, 1])).unwrap();
        let rels = RelatorSet::new(3, std::slice::from_ref(&r1.r));
        let v = scan_regular(&rels, &p.q(), &PowerWord::from_codes(&[2, 1]), &Budget::default());
        assert!(matches!(v, Verdict::Skip));
    }
}
