//! The inductive construction of the relator set.
//!
//! Step `i` picks the deg-lex least word `w_i` that does not start with
//! `x_1^{±1}`, does not end with `x_n^{±1}`, and is not equal to any regular
//! word modulo the relators found so far, then emits
//! `r_i = x_1^{m_i} ... x_n^{m_i} w_i^{-1}` with `m_i = N |w_i| + i`.
//!
//! The full relator set is infinite whenever the parameters are admissible,
//! so generation is always driven by an explicit count and budget.

mod generate;
mod params;
mod presentation;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::words::{is_cyclically_reduced, is_regular, Alphabet, PowerWord, WordError};

pub use generate::{generate, next_w, GenerateOutcome, NextW};
pub use params::{
    least_upper_with_denominator, parse_rational, validate_params, Check, ConstructionParams,
    ValidationReport, Q_DENOMINATOR_CAP,
};
pub use presentation::{Presentation, PresentationViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("malformed parameters: {0}")]
    MalformedParams(String),
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("word {word:?} cannot be a relator word: {reason}")]
    InvalidWord { word: String, reason: &'static str },
    #[error("relator {i} violates {name}: {detail}")]
    InequalityViolated { i: u64, name: &'static str, detail: String },
    #[error("arithmetic overflow while building relator {0}")]
    Overflow(u64),
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One construction step: `r = x_1^m ... x_n^m w^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relator {
    pub i: u64,
    pub w: PowerWord,
    pub m: u64,
    pub r: PowerWord,
}

impl Relator {
    /// `lambda1 (n m + |w|) >= |w|`.
    pub fn weight_condition_holds(&self, params: &ConstructionParams) -> bool {
        let lhs = params.lambda1() * BigRational::from_integer(BigInt::from(self.r.len()));
        lhs >= BigRational::from_integer(BigInt::from(self.w.len()))
    }
}

/// Reasons a word can never be `w_i`, independent of the relators so far.
pub fn relator_word_shape(alphabet: Alphabet, w: &PowerWord) -> Result<(), &'static str> {
    if w.max_index() > alphabet.n() {
        return Err("letter outside the alphabet");
    }
    match (w.first_letter(), w.last_letter()) {
        (None, _) | (_, None) => return Err("empty word"),
        (Some(f), Some(l)) => {
            if f.index() == 1 {
                return Err("starts with x1^{±1}");
            }
            if l.index() == alphabet.n() {
                return Err("ends with x_n^{±1}");
            }
        }
    }
    if is_regular(w) {
        return Err("regular word");
    }
    Ok(())
}

/// `x_1^m x_2^m ... x_n^m`.
pub fn ascending_block(n: u32, m: u64) -> PowerWord {
    PowerWord::from_runs((1..=n).map(|i| (i, m as i64)))
}

/// Build `r_i` for a chosen `w`, with `m = N |w| + i`.
///
/// The weight inequality `lambda1 (n m + |w|) >= |w|` is implied by
/// `lambda1 n N >= 1`; when the parameters satisfy that bound a violation is
/// an error, otherwise the relator is returned and the violation shows up in
/// [`Presentation::violations`].
pub fn build_relator(
    params: &ConstructionParams,
    i: u64,
    w: &PowerWord,
) -> Result<Relator, ConstructionError> {
    let alphabet = Alphabet::new(params.n())?;
    relator_word_shape(alphabet, w)
        .map_err(|reason| ConstructionError::InvalidWord { word: w.to_string(), reason })?;
    if i == 0 {
        return Err(ConstructionError::MalformedParams("relator index starts at 1".into()));
    }
    let m = params
        .big_n()
        .checked_mul(w.len())
        .and_then(|x| x.checked_add(i))
        .filter(|&m| m <= i64::MAX as u64)
        .ok_or(ConstructionError::Overflow(i))?;
    let expected_len = (params.n() as u64)
        .checked_mul(m)
        .and_then(|x| x.checked_add(w.len()))
        .ok_or(ConstructionError::Overflow(i))?;

    let r = ascending_block(params.n(), m).concat(&w.inverse());
    debug_assert_eq!(r.len(), expected_len);
    debug_assert!(is_cyclically_reduced(&r));
    if r.len() != expected_len {
        return Err(ConstructionError::InequalityViolated {
            i,
            name: "relator_length",
            detail: format!("|r| = {} but n m + |w| = {expected_len}", r.len()),
        });
    }

    let rel = Relator { i, w: w.clone(), m, r };
    if !rel.weight_condition_holds(params) && params.validate().check("exponent_scale").is_some_and(|c| c.holds) {
        return Err(ConstructionError::InequalityViolated {
            i,
            name: "relator_weight",
            detail: format!("{} * {} < {}", params.lambda1(), rel.r.len(), rel.w.len()),
        });
    }
    Ok(rel)
}
