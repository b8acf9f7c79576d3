use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::selection::rational;
use super::{double_selected_arcs, selected_darts, CycleRef, Dart, Diagram, DiagramError, Face, Selection};

/// Counts entering the selection inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Metrics {
    /// Selected external edges.
    #[serde(rename = "S")]
    pub s: u64,
    /// `Σ |∂Π|`.
    #[serde(rename = "Sigma")]
    pub sigma: u64,
    #[serde(rename = "E")]
    pub e: u64,
    #[serde(rename = "F")]
    pub f: u64,
}

impl Metrics {
    pub fn of(d: &Diagram, sel: &Selection) -> Self {
        Self {
            s: selected_external_edges(d, sel, |_| true),
            sigma: d.sigma(),
            e: d.edge_count() as u64,
            f: d.faces.len() as u64,
        }
    }
}

fn selected_external_edges(d: &Diagram, sel: &Selection, keep: impl Fn(&Dart) -> bool) -> u64 {
    let flags = selected_darts(d, sel);
    let external = d.external_darts();
    d.darts
        .iter()
        .filter(|x| x.id < x.inv && external[x.id] && (flags[x.id] || flags[x.inv]) && keep(x))
        .count() as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceConditionB {
    pub face: usize,
    pub boundary: usize,
    pub b0: bool,
    pub selected_len: usize,
    /// `(1 - lambda1) |∂Π|`.
    pub b1_bound: String,
    pub b1: bool,
    pub longest_double_selected_arc: usize,
    /// `lambda2 |∂Π|`.
    pub b2_bound: String,
    pub b2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionBReport {
    pub lambda1: String,
    pub lambda2: String,
    pub faces: Vec<FaceConditionB>,
    pub holds: bool,
}

/// Per-face evaluation of the three selection conditions.
pub fn check_condition_b(
    d: &Diagram,
    sel: &Selection,
    lambda1: &BigRational,
    lambda2: &BigRational,
) -> ConditionBReport {
    let mut longest: BTreeMap<usize, usize> = BTreeMap::new();
    for (arc, a, b) in double_selected_arcs(d, sel) {
        for f in [a, b] {
            let e = longest.entry(f).or_insert(0);
            *e = (*e).max(arc.len());
        }
    }
    let one = BigRational::one();
    let faces: Vec<FaceConditionB> = d
        .faces
        .iter()
        .enumerate()
        .map(|(f, face)| {
            let l = face.cycle.len();
            let paths: Vec<_> = sel.for_face(f).collect();
            let b0 = paths.len() == 1 && paths[0].len >= 1 && paths[0].len <= l;
            let selected_len = paths.iter().map(|p| p.len).max().unwrap_or(0);
            let b1_bound = (&one - lambda1) * rational(l as u64);
            let b1 = rational(selected_len as u64) >= b1_bound;
            let dl = longest.get(&f).copied().unwrap_or(0);
            let b2_bound = lambda2 * rational(l as u64);
            let b2 = rational(dl as u64) <= b2_bound;
            FaceConditionB {
                face: f,
                boundary: l,
                b0,
                selected_len,
                b1_bound: b1_bound.to_string(),
                b1,
                longest_double_selected_arc: dl,
                b2_bound: b2_bound.to_string(),
                b2,
            }
        })
        .collect();
    let holds = faces.iter().all(|f| f.b0 && f.b1 && f.b2);
    ConditionBReport { lambda1: lambda1.to_string(), lambda2: lambda2.to_string(), faces, holds }
}

/// A maximal semisimple submap, re-indexed, with maps back to the original ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submap {
    pub diagram: Diagram,
    pub vertices: Vec<usize>,
    pub darts: Vec<usize>,
    pub faces: Vec<usize>,
}

impl Submap {
    /// Restrict a selection of the ambient diagram to this submap.
    pub fn selection(&self, sel: &Selection) -> Selection {
        Selection {
            paths: sel
                .paths
                .iter()
                .filter_map(|p| {
                    self.faces.iter().position(|&f| f == p.face).map(|f| super::SelectedPath { face: f, ..*p })
                })
                .collect(),
        }
    }
}

/// Remove every edge not incident to a face and split into connected
/// components; isolated vertices become one-vertex submaps.
pub fn maximal_semisimple_submaps(d: &Diagram) -> Vec<Submap> {
    let pos = d.dart_positions();
    let on_face = |x: usize| matches!(pos[x], Some((CycleRef::Face(_), _)));
    let keep: Vec<bool> = (0..d.darts.len()).map(|x| on_face(x) || on_face(d.darts[x].inv)).collect();
    let nv = d.vertices.len();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for x in d.darts.iter().filter(|x| keep[x.id]) {
        let (a, b) = (find(&mut parent, x.from), find(&mut parent, x.to));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..nv {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let next = d.next_dart();
    let rho = |x: usize| next[d.darts[x].inv];
    let restricted_rho = |x: usize| {
        let mut y = rho(x);
        while !keep[y] {
            y = rho(y);
        }
        y
    };

    let mut out = Vec::new();
    for (_, verts) in groups {
        let mut vmap = vec![usize::MAX; nv];
        for (i, &v) in verts.iter().enumerate() {
            vmap[v] = i;
        }
        let darts: Vec<usize> = (0..d.darts.len()).filter(|&x| keep[x] && vmap[d.darts[x].from] != usize::MAX).collect();
        let mut dmap = vec![usize::MAX; d.darts.len()];
        for (i, &x) in darts.iter().enumerate() {
            dmap[x] = i;
        }
        let faces: Vec<usize> = (0..d.faces.len()).filter(|&f| dmap[d.faces[f].cycle[0]] != usize::MAX).collect();
        let mut contours = Vec::new();
        let mut seen = vec![false; d.darts.len()];
        for &x in &darts {
            if on_face(x) || seen[x] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                cycle.push(dmap[y]);
                y = restricted_rho(d.darts[y].inv);
            }
            contours.push(cycle);
        }
        if darts.is_empty() {
            contours.push(Vec::new());
        }
        let diagram = Diagram {
            vertices: (0..verts.len()).collect(),
            darts: darts
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    let o = &d.darts[x];
                    Dart { id: i, inv: dmap[o.inv], from: vmap[o.from], to: vmap[o.to], label: o.label }
                })
                .collect(),
            faces: faces
                .iter()
                .enumerate()
                .map(|(i, &f)| Face { id: i, cycle: d.faces[f].cycle.iter().map(|&x| dmap[x]).collect() })
                .collect(),
            contours,
        };
        out.push(Submap { diagram, vertices: verts, darts, faces });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionXReport {
    pub metrics: Metrics,
    pub mu: String,
    /// `E - mu Σ`.
    pub bound: String,
    pub holds: bool,
}

/// `S >= E - mu Σ` on a semisimple S-map.
pub fn check_condition_x(d: &Diagram, sel: &Selection, mu: &BigRational) -> Result<ConditionXReport, DiagramError> {
    let pos = d.dart_positions();
    let on_face = |x: usize| matches!(pos[x], Some((CycleRef::Face(_), _)));
    if let Some(x) = (0..d.darts.len()).find(|&x| !on_face(x) && !on_face(d.darts[x].inv)) {
        return Err(DiagramError::NotSemisimple { dart: x });
    }
    let m = Metrics::of(d, sel);
    let bound = rational(m.e) - mu * rational(m.sigma);
    let holds = rational(m.s) >= bound;
    Ok(ConditionXReport { metrics: m, mu: mu.to_string(), bound: bound.to_string(), holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainLemmaReport {
    pub metrics: Metrics,
    pub mu: String,
    /// `(1 - 2 mu) Σ`.
    pub bound: String,
    pub holds: bool,
    pub condition_b: ConditionBReport,
}

/// `S >= (1 - 2 mu) Σ` with `mu = lambda1 + 5 lambda2`, after checking the
/// hypotheses: at most three contours, `2 lambda1 + 13 lambda2 < 1`, and
/// the selection condition.
pub fn check_main_lemma(
    d: &Diagram,
    sel: &Selection,
    lambda1: &BigRational,
    lambda2: &BigRational,
) -> Result<MainLemmaReport, DiagramError> {
    if d.contours.len() > 3 {
        return Err(DiagramError::Precondition(format!("{} contours, at most 3 allowed", d.contours.len())));
    }
    let lhs = lambda1 * rational(2) + lambda2 * rational(13);
    if lhs >= BigRational::one() {
        return Err(DiagramError::Precondition(format!("2 lambda1 + 13 lambda2 = {lhs} is not below 1")));
    }
    let condition_b = check_condition_b(d, sel, lambda1, lambda2);
    if !condition_b.holds {
        let f = condition_b.faces.iter().find(|f| !(f.b0 && f.b1 && f.b2)).map(|f| f.face);
        return Err(DiagramError::Precondition(format!("selection condition fails at face {}", f.unwrap_or(0))));
    }
    let mu = lambda1 + lambda2 * rational(5);
    let m = Metrics::of(d, sel);
    let bound = (BigRational::one() - &mu * rational(2)) * rational(m.sigma);
    let holds = rational(m.s) >= bound;
    Ok(MainLemmaReport { metrics: m, mu: mu.to_string(), bound: bound.to_string(), holds, condition_b })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LetterBudgetReport {
    pub letters: Vec<u32>,
    pub count: u64,
    pub sigma: u64,
    /// `(k/n) Σ`.
    pub bound: String,
    pub holds: bool,
}

/// Selected external edges labelled by one of `letters` number fewer than
/// `(k/n) Σ`.
pub fn check_letter_budget(
    d: &Diagram,
    sel: &Selection,
    letters: &[u32],
    n: u32,
) -> Result<LetterBudgetReport, DiagramError> {
    if d.is_degenerate() {
        return Err(DiagramError::Precondition("degenerate diagram".into()));
    }
    let mut set: Vec<u32> = letters.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() || set.iter().any(|&i| i == 0 || i > n) {
        return Err(DiagramError::Precondition("letter subset must be a nonempty subset of 1..=n".into()));
    }
    let count = selected_external_edges(d, sel, |x| set.binary_search(&x.label.index()).is_ok());
    let sigma = d.sigma();
    let bound = rational(set.len() as u64) * rational(sigma) / rational(n as u64);
    let holds = rational(count) < bound;
    Ok(LetterBudgetReport { letters: set, count, sigma, bound: bound.to_string(), holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_relator, ConstructionParams};
    use crate::diagram::{special_selection, validate_diagram, DiagramBuilder};
    use crate::words::PowerWord;

    fn face_diagram(params: &ConstructionParams) -> (Diagram, Vec<PowerWord>) {
        let rel = build_relator(params, 1, &PowerWord::from_codes(&[2, 1])).unwrap();
        let mut b = DiagramBuilder::point();
        b.attach_face(0, 0, &rel.r.to_codes());
        (b.finish(), vec![rel.r])
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn toy_face_fails_b1_exactly() {
        let p = ConstructionParams::parse(3, "1/15", 2).unwrap();
        let (d, _) = face_diagram(&p);
        let sel = special_selection(&d, 3).unwrap();
        let rep = check_condition_b(&d, &sel, p.lambda1(), &p.lambda2());
        assert!(!rep.holds);
        assert_eq!(rep.faces[0].b1_bound, "238/15"); // (14/15) * 17 > 15
        assert!(!rep.faces[0].b1 && rep.faces[0].b0 && rep.faces[0].b2);
        let x = check_condition_x(&d, &sel, &p.mu()).unwrap();
        assert_eq!(x.metrics, Metrics { s: 15, sigma: 17, e: 17, f: 1 });
    }

    #[test]
    fn theorem_scale_face_main_lemma() {
        let p = ConstructionParams::parse(63, "1/315", 315).unwrap();
        let (d, rels) = face_diagram(&p);
        assert!(validate_diagram(&d, &rels).valid);
        let sel = special_selection(&d, 63).unwrap();
        let rep = check_main_lemma(&d, &sel, p.lambda1(), &p.lambda2()).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.metrics.s, 63 * 631);
        assert_eq!(rep.metrics.sigma, 63 * 631 + 2);
        let one = check_letter_budget(&d, &sel, &[1], 63).unwrap();
        assert_eq!(one.count, 631);
        assert!(one.holds);
        let all: Vec<u32> = (1..=63).collect();
        assert!(check_letter_budget(&d, &sel, &all, 63).unwrap().holds);
        assert!(check_letter_budget(&d, &sel, &[], 63).is_err());
    }

    #[test]
    fn degenerate_cases() {
        let d = DiagramBuilder::point().finish();
        let sel = Selection::default();
        assert!(check_condition_b(&d, &sel, &q(1, 10), &q(1, 10)).holds);
        let ml = check_main_lemma(&d, &sel, &q(1, 315), &q(2, 63)).unwrap();
        assert!(ml.holds && ml.metrics.s == 0 && ml.metrics.sigma == 0);
        let subs = maximal_semisimple_submaps(&d);
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].diagram.vertices.len(), 1);
        let x = check_condition_x(&subs[0].diagram, &sel, &q(1, 3)).unwrap();
        assert!(x.holds);
        assert!(check_letter_budget(&d, &sel, &[1], 3).is_err());
    }

    #[test]
    fn bridge_splits_into_two_components() {
        let r = PowerWord::from_codes(&[1, 2, -1, -2]);
        let mut b = DiagramBuilder::point();
        b.attach_face(0, 0, &r.to_codes());
        b.insert_spur(0, 3);
        // second face hangs off the far end of the spur
        b.attach_face(1, 0, &r.to_codes());
        let d = b.finish();
        assert!(validate_diagram(&d, std::slice::from_ref(&r)).valid);
        let subs = maximal_semisimple_submaps(&d);
        assert_eq!(subs.len(), 2);
        for s in &subs {
            let rep = validate_diagram(&s.diagram, std::slice::from_ref(&r));
            assert!(rep.valid, "{:?}", rep.issues);
            assert_eq!(s.diagram.faces.len(), 1);
        }
    }
}
