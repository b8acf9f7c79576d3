use serde::{Deserialize, Serialize};

use super::{build_relator, ConstructionError, ConstructionParams, Relator};
use crate::words::{cyclically_reduce, parse_word, Alphabet, PowerWord};

/// A finite prefix `R_k = {r_1, ..., r_k}` of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub params: ConstructionParams,
    pub relators: Vec<Relator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationViolation {
    pub i: u64,
    pub condition: &'static str,
    pub detail: String,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    n: u32,
    lambda1: String,
    #[serde(rename = "N")]
    big_n: u64,
    relators: Vec<RelatorJson>,
}

#[derive(Serialize, Deserialize)]
struct RelatorJson {
    i: u64,
    w: String,
    m: u64,
    r: String,
}

impl Presentation {
    pub fn empty(params: ConstructionParams) -> Self {
        Self { params, relators: Vec::new() }
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.params.n()).expect("params hold a positive n")
    }

    pub fn relator_words(&self) -> Vec<PowerWord> {
        self.relators.iter().map(|r| r.r.clone()).collect()
    }

    /// Longest relator length, 0 for the empty presentation.
    pub fn max_relator_len(&self) -> u64 {
        self.relators.iter().map(|r| r.r.len()).max().unwrap_or(0)
    }

    /// Negative answers of the bounded diagram search are complete: the
    /// parameters pass validation, carry a proven area bound, and every
    /// relator satisfies its conditions.
    pub fn area_bound_certified(&self) -> bool {
        self.params.validate().passed() && self.params.area_bound_certified() && self.violations().is_empty()
    }

    /// Re-check every per-relator and cross-relator condition.
    pub fn violations(&self) -> Vec<PresentationViolation> {
        let mut out = Vec::new();
        let n = self.params.n() as u64;
        for (k, rel) in self.relators.iter().enumerate() {
            let mut bad = |condition, detail: String| {
                out.push(PresentationViolation { i: rel.i, condition, detail })
            };
            if rel.i != k as u64 + 1 {
                bad("index_sequence", format!("relator at position {} has index {}", k + 1, rel.i));
            }
            match build_relator(&self.params, rel.i, &rel.w) {
                Ok(expected) if expected.r == rel.r && expected.m == rel.m => {}
                Ok(expected) => bad(
                    "relator_shape",
                    format!("expected m = {}, r = {}", expected.m, expected.r),
                ),
                Err(ConstructionError::InequalityViolated { .. }) => {}
                Err(e) => bad("relator_shape", e.to_string()),
            }
            if rel.r.len() != n * rel.m + rel.w.len() {
                bad("relator_length", format!("|r| = {} != n m + |w|", rel.r.len()));
            }
            if cyclically_reduce(&rel.r).0 != rel.r {
                bad("cyclically_reduced", rel.r.to_string());
            }
            if !rel.weight_condition_holds(&self.params) {
                bad(
                    "relator_weight",
                    format!("{} * {} < {}", self.params.lambda1(), rel.r.len(), rel.w.len()),
                );
            }
        }
        for (a, b) in self.relators.iter().zip(self.relators.iter().skip(1)) {
            if b.r.len() < a.r.len() {
                out.push(PresentationViolation {
                    i: b.i,
                    condition: "lengths_nondecreasing",
                    detail: format!("|r_{}| = {} < |r_{}| = {}", b.i, b.r.len(), a.i, a.r.len()),
                });
            }
        }
        for (x, a) in self.relators.iter().enumerate() {
            for b in &self.relators[x + 1..] {
                if a.m == b.m {
                    out.push(PresentationViolation {
                        i: b.i,
                        condition: "exponents_distinct",
                        detail: format!("m_{} = m_{} = {}", a.i, b.i, a.m),
                    });
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = PresentationJson {
            n: self.params.n(),
            lambda1: self.params.lambda1().to_string(),
            big_n: self.params.big_n(),
            relators: self
                .relators
                .iter()
                .map(|r| RelatorJson { i: r.i, w: r.w.to_string(), m: r.m, r: r.r.to_string() })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("presentation serializes")
    }

    /// Parse the JSON document; relator fields must be mutually consistent.
    pub fn from_json(text: &str) -> Result<Self, ConstructionError> {
        let doc: PresentationJson = serde_json::from_str(text)
            .map_err(|e| ConstructionError::MalformedPresentation(e.to_string()))?;
        let params = ConstructionParams::parse(doc.n, &doc.lambda1, doc.big_n)?;
        let alphabet = Alphabet::new(doc.n)?;
        let mut relators = Vec::with_capacity(doc.relators.len());
        for r in doc.relators {
            let rel = Relator {
                i: r.i,
                w: parse_word(alphabet, &r.w)?,
                m: r.m,
                r: parse_word(alphabet, &r.r)?,
            };
            let expected = build_relator(&params, rel.i, &rel.w)
                .or_else(|e| match e {
                    ConstructionError::InequalityViolated { .. } => Ok(rel.clone()),
                    other => Err(other),
                })?;
            if expected.m != rel.m || expected.r != rel.r {
                return Err(ConstructionError::MalformedPresentation(format!(
                    "relator {} does not match x_1^m ... x_n^m w^-1 with m = N|w| + i",
                    rel.i
                )));
            }
            relators.push(rel);
        }
        Ok(Self { params, relators })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Presentation {
        let params = ConstructionParams::parse(3, "1/15", 2).unwrap();
        let rel = build_relator(&params, 1, &PowerWord::from_codes(&[2, 1])).unwrap();
        Presentation { params, relators: vec![rel] }
    }

    #[test]
    fn json_round_trip() {
        let p = toy();
        let text = p.to_json();
        assert!(text.contains("\"r\": \"x1^5 x2^5 x3^5 x1^-1 x2^-1\""));
        assert!(text.contains("\"N\": 2"));
        assert_eq!(Presentation::from_json(&text).unwrap(), p);
    }

    #[test]
    fn inconsistent_relator_rejected() {
        let text = toy().to_json().replace("\"m\": 5", "\"m\": 6");
        assert!(Presentation::from_json(&text).is_err());
        assert!(Presentation::from_json("{}").is_err());
    }

    #[test]
    fn toy_violations_report_weight_only() {
        let v = toy().violations();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].condition, "relator_weight");
    }
}
