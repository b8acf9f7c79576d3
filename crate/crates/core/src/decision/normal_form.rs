use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::relators::RelatorSet;
use super::{equals_with, words_text, Budget, Engine, Exhaustion, Outcome, Refutation, Witness};
use crate::construction::Presentation;
use crate::words::{deglex_compare, is_regular, regular_word, PowerWord};

fn floor_q_times(q: &BigRational, k: u64) -> u64 {
    (q * BigRational::from_integer(BigInt::from(k))).floor().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// Regular words that could equal `g`, in deg-lex order: exponent vectors in
/// the relator-lattice coset of `ab(g)` whose cheapest lattice correction fits
/// the area bound, with `|u| <= min((n+1)|g| + n^4 L, max_word_len)`.
/// `None` when the coset enumeration hit the state cap.
pub fn regular_candidates(rels: &RelatorSet, q: &BigRational, g: &PowerWord, budget: &Budget) -> Option<Vec<PowerWord>> {
    let n = rels.n() as u64;
    let l = rels.max_len();
    let bound = (n + 1).saturating_mul(g.len()).saturating_add(n.pow(4).saturating_mul(l));
    let cap = bound.min(budget.max_word_len as u64);
    let limit = floor_q_times(q, l.saturating_mul(cap + g.len()));
    let translates = rels.lattice().translates(&g.abelian(rels.n() as u32), limit, budget.max_states)?;
    let mut out: Vec<PowerWord> = translates
        .into_iter()
        .filter_map(|(exps, cost)| {
            let len: u64 = exps.iter().map(|e| e.unsigned_abs()).sum();
            (len <= cap && cost <= floor_q_times(q, l.saturating_mul(len + g.len()))).then(|| regular_word(&exps))
        })
        .collect();
    out.sort_by(deglex_compare);
    Some(out)
}

/// Outcome of checking every candidate rather than stopping at the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFormReport {
    #[serde(serialize_with = "super::word_text")]
    pub input: PowerWord,
    #[serde(serialize_with = "words_text")]
    pub accepted: Vec<PowerWord>,
    #[serde(serialize_with = "words_text")]
    pub undecided: Vec<PowerWord>,
    pub rejected: usize,
    /// The candidate enumeration itself finished within the state cap.
    pub complete: bool,
}

/// The deg-lex least regular word equal to `g` within the budget.
pub fn regular_normal_form(p: &Presentation, g: &PowerWord, budget: &Budget, engine: Engine) -> Outcome {
    let rels = RelatorSet::from_presentation(p);
    normal_form_with(&rels, p.area_bound_certified(), &p.params.q(), g, budget, engine)
}

pub(crate) fn normal_form_with(
    rels: &RelatorSet,
    certified: bool,
    q: &BigRational,
    g: &PowerWord,
    budget: &Budget,
    engine: Engine,
) -> Outcome {
    if is_regular(g) {
        return Outcome::Yes(Witness::NormalForm { normal_form: g.clone(), proof: Box::new(Witness::FreeReduction) });
    }
    if rels.is_empty() {
        return Outcome::No(Refutation::FreeGroup);
    }
    let Some(candidates) = regular_candidates(rels, q, g, budget) else {
        return Outcome::BudgetExceeded(Exhaustion::States { cap: budget.max_states });
    };
    let mut undecided = 0;
    for u in &candidates {
        match equals_with(rels, certified, u, g, budget, engine, q) {
            Outcome::Yes(w) => {
                return Outcome::Yes(Witness::NormalForm { normal_form: u.clone(), proof: Box::new(w) });
            }
            Outcome::No(_) => {}
            Outcome::BudgetExceeded(_) => undecided += 1,
        }
    }
    if undecided == 0 {
        Outcome::No(Refutation::Candidates { count: candidates.len() })
    } else {
        Outcome::BudgetExceeded(Exhaustion::Undecided { candidates: undecided })
    }
}

/// Test every candidate; more than one accepted word would contradict
/// uniqueness of regular normal forms.
pub fn regular_normal_form_report(p: &Presentation, g: &PowerWord, budget: &Budget, engine: Engine) -> NormalFormReport {
    let rels = RelatorSet::from_presentation(p);
    let q = p.params.q();
    let certified = p.area_bound_certified();
    let mut report = NormalFormReport {
        input: g.clone(),
        accepted: Vec::new(),
        undecided: Vec::new(),
        rejected: 0,
        complete: true,
    };
    if rels.is_empty() {
        if is_regular(g) {
            report.accepted.push(g.clone());
        }
        return report;
    }
    let Some(candidates) = regular_candidates(&rels, &q, g, budget) else {
        report.complete = false;
        return report;
    };
    for u in candidates {
        match equals_with(&rels, certified, &u, g, budget, engine, &q) {
            Outcome::Yes(_) => report.accepted.push(u),
            Outcome::No(_) => report.rejected += 1,
            Outcome::BudgetExceeded(_) => report.undecided.push(u),
        }
    }
    report
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

    #[test]
    fn regular_input_is_its_own_form() {
        let p = toy();
        let g = PowerWord::from_codes(&[1, 1, 3]);
        let o = regular_normal_form(&p, &g, &Budget::default(), Engine::Diagram);
        let Outcome::Yes(Witness::NormalForm { normal_form, .. }) = o else { panic!("{o:?}") };
        assert_eq!(normal_form, g);
        let o = regular_normal_form(&p, &PowerWord::from_codes(&[1, -1]), &Budget::default(), Engine::Diagram);
        assert!(matches!(o, Outcome::Yes(Witness::NormalForm { normal_form, .. }) if normal_form.is_empty()));
    }

    #[test]
    fn relator_word_maps_to_block() {
        let p = toy();
        let g = PowerWord::from_codes(&[2, 1]);
        let o = regular_normal_form(&p, &g, &Budget::default(), Engine::Diagram);
        let Outcome::Yes(Witness::NormalForm { normal_form, .. }) = o else { panic!("{o:?}") };
        assert_eq!(normal_form.to_string(), "x1^5 x2^5 x3^5");
        let rep = regular_normal_form_report(&p, &g, &Budget::default(), Engine::Diagram);
        assert_eq!(rep.accepted, vec![normal_form]);
    }
}
