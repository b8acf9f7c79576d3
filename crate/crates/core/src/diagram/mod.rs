//! Labelled combinatorial maps: darts with an involution, face boundary
//! cycles and map contours, plus the selection machinery and the structural
//! conditions evaluated on them.
//!
//! A diagram is stored as abstract combinatorial data. Every dart lies on
//! exactly one face cycle or one contour; the rotation around a vertex is
//! recovered as `rho(d) = next(inv(d))`, where `next` follows the cycle that
//! contains a dart.

mod arcs;
mod builder;
mod cancel;
mod conditions;
mod corpus;
mod selection;
mod validate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{GroupLetter, PowerWord};

pub use arcs::{double_selected_arcs, maximal_arcs, Arc};
pub use builder::DiagramBuilder;
pub use cancel::find_immediately_cancellable;
pub use conditions::{
    check_condition_b, check_condition_x, check_letter_budget, check_main_lemma,
    maximal_semisimple_submaps, ConditionBReport, ConditionXReport, FaceConditionB, LetterBudgetReport,
    MainLemmaReport, Metrics, Submap,
};
pub use corpus::{random_disc_diagram, CorpusConfig};
pub use selection::{
    face_rank, selected_darts, special_selection, special_selection_candidates, SelectedPath, Selection,
};
pub use validate::{face_matches, validate_diagram, DiagramReport, FaceMatch, Issue, IssueKind, Location};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed diagram JSON: {0}")]
    MalformedJson(String),
    #[error("invalid diagram: {0} structural issue(s), first: {1}")]
    Invalid(usize, String),
    #[error("face {face} has no special selection")]
    NoSelection { face: usize },
    #[error("face {face} has {count} candidate special selections")]
    AmbiguousSelection { face: usize, count: usize },
    #[error("face {face} is not labelled by any relator")]
    UnmatchedFace { face: usize },
    #[error("map is not semisimple: edge of dart {dart} is not incident to a face")]
    NotSemisimple { dart: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dart {
    pub id: usize,
    pub inv: usize,
    pub from: usize,
    pub to: usize,
    #[serde(with = "letter_text")]
    pub label: GroupLetter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: usize,
    pub cycle: Vec<usize>,
}

/// Darts are indexed by id (`darts[d].id == d`), likewise faces; vertices are `0..V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub vertices: Vec<usize>,
    pub darts: Vec<Dart>,
    pub faces: Vec<Face>,
    pub contours: Vec<Vec<usize>>,
}

/// Which cycle a dart lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleRef {
    Face(usize),
    Contour(usize),
}

impl Diagram {
    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        serde_json::from_str(text).map_err(|e| DiagramError::MalformedJson(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// `Σ |∂Π|` over faces.
    pub fn sigma(&self) -> u64 {
        self.faces.iter().map(|f| f.cycle.len() as u64).sum()
    }

    pub fn is_degenerate(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn label_codes(&self, path: &[usize]) -> Vec<i32> {
        path.iter().map(|&d| self.darts[d].label.code()).collect()
    }

    pub fn label(&self, path: &[usize]) -> PowerWord {
        PowerWord::from_codes(&self.label_codes(path))
    }

    pub fn face_label(&self, face: usize) -> Vec<i32> {
        self.label_codes(&self.faces[face].cycle)
    }

    /// Cycle and position of every dart; `None` for darts on no cycle.
    /// Assumes a validated diagram (first occurrence wins otherwise).
    pub fn dart_positions(&self) -> Vec<Option<(CycleRef, usize)>> {
        let mut pos = vec![None; self.darts.len()];
        for (f, face) in self.faces.iter().enumerate() {
            for (i, &d) in face.cycle.iter().enumerate() {
                if d < pos.len() && pos[d].is_none() {
                    pos[d] = Some((CycleRef::Face(f), i));
                }
            }
        }
        for (c, contour) in self.contours.iter().enumerate() {
            for (i, &d) in contour.iter().enumerate() {
                if d < pos.len() && pos[d].is_none() {
                    pos[d] = Some((CycleRef::Contour(c), i));
                }
            }
        }
        pos
    }

    /// `next(d)`: the dart after `d` on its cycle.
    pub fn next_dart(&self) -> Vec<usize> {
        let mut next: Vec<usize> = (0..self.darts.len()).collect();
        let cycles = self.faces.iter().map(|f| &f.cycle).chain(self.contours.iter());
        for cycle in cycles {
            for (i, &d) in cycle.iter().enumerate() {
                if d < next.len() {
                    next[d] = cycle[(i + 1) % cycle.len()];
                }
            }
        }
        next
    }

    /// Number of incident edges, loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for d in &self.darts {
            if d.from < deg.len() {
                deg[d.from] += 1;
            }
        }
        deg
    }

    /// Edge of `dart` is external iff one of its darts lies on a map contour.
    pub fn external_darts(&self) -> Vec<bool> {
        let mut on_contour = vec![false; self.darts.len()];
        for c in &self.contours {
            for &d in c {
                on_contour[d] = true;
            }
        }
        (0..self.darts.len()).map(|d| on_contour[d] || on_contour[self.darts[d].inv]).collect()
    }

    /// Same complex and labels with every face cycle and contour reversed.
    pub fn mirror_copy(&self) -> Diagram {
        let rev = |cycle: &Vec<usize>| -> Vec<usize> {
            cycle.iter().rev().map(|&d| self.darts[d].inv).collect()
        };
        Diagram {
            vertices: self.vertices.clone(),
            darts: self.darts.clone(),
            faces: self.faces.iter().map(|f| Face { id: f.id, cycle: rev(&f.cycle) }).collect(),
            contours: self.contours.iter().map(rev).collect(),
        }
    }
}

mod letter_text {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::words::{GroupLetter, Sign};

    pub fn serialize<S: Serializer>(l: &GroupLetter, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(l)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<GroupLetter, D::Error> {
        let text = String::deserialize(d)?;
        let bad = || D::Error::custom(format!("bad letter {text:?}"));
        let body = text.trim().strip_prefix('x').ok_or_else(bad)?;
        let (idx, sign) = match body.split_once('^') {
            Some((i, "-1")) => (i, Sign::Minus),
            Some((i, "1")) => (i, Sign::Plus),
            Some(_) => return Err(bad()),
            None => (body, Sign::Plus),
        };
        let index: u32 = idx.parse().map_err(|_| bad())?;
        if index == 0 || index > i32::MAX as u32 / 2 {
            return Err(bad());
        }
        Ok(GroupLetter::new(index, sign))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn one_face(r: &[i32]) -> Diagram {
        let mut b = DiagramBuilder::point();
        b.attach_face(0, 0, r);
        b.finish()
    }

    #[test]
    fn json_round_trip() {
        let d = one_face(&[1, 1, 2, -1]);
        let text = d.to_json();
        assert!(text.contains("\"label\": \"x1^-1\""));
        assert_eq!(Diagram::from_json(&text).unwrap(), d);
        assert!(Diagram::from_json("{\"vertices\": 1}").is_err());
    }

    #[test]
    fn mirror_is_involution() {
        let d = one_face(&[1, 2, -1, 3]);
        let m = d.mirror_copy();
        assert_ne!(m, d);
        assert_eq!(m.mirror_copy(), d);
        assert_eq!(m.face_label(0), vec![-3, 1, -2, -1]);
    }
}
