use serde::Serialize;

use super::Diagram;
use crate::decision::cyclic::{find_all, inverse};
use crate::words::PowerWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum Location {
    Diagram,
    Vertex(usize),
    Dart(usize),
    Face(usize),
    Contour(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueKind {
    VertexId,
    DartId,
    FaceId,
    Involution,
    UnknownVertex,
    Endpoints,
    LabelInverse,
    UnknownDart,
    DartUnused,
    DartRepeated,
    EmptyFace,
    EmptyContour,
    CycleNotClosed,
    VertexRotation,
    Disconnected,
    EulerCharacteristic,
    FaceLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub location: Location,
    pub kind: IssueKind,
    pub detail: String,
}

/// Face `face` reads the rotation of `r^{±1}` starting at `offset`, where
/// `r` is entry `relator` of the relator list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FaceMatch {
    pub face: usize,
    pub relator: usize,
    pub offset: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub valid: bool,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub contours: usize,
    pub issues: Vec<Issue>,
    pub face_matches: Vec<FaceMatch>,
}

impl DiagramReport {
    pub fn issues_at(&self, location: Location) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(move |i| i.location == location)
    }
}

/// Check every structural invariant and match each face label against
/// `relators^{±1}` up to rotation.
pub fn validate_diagram(d: &Diagram, relators: &[PowerWord]) -> DiagramReport {
    let mut issues = Vec::new();
    let mut push = |location, kind, detail: String| issues.push(Issue { location, kind, detail });
    let nv = d.vertices.len();
    let nd = d.darts.len();

    for (i, &v) in d.vertices.iter().enumerate() {
        if v != i {
            push(Location::Vertex(v), IssueKind::VertexId, format!("vertex at position {i} has id {v}"));
        }
    }
    for (i, f) in d.faces.iter().enumerate() {
        if f.id != i {
            push(Location::Face(f.id), IssueKind::FaceId, format!("face at position {i} has id {}", f.id));
        }
    }
    for (i, dart) in d.darts.iter().enumerate() {
        let at = Location::Dart(i);
        if dart.id != i {
            push(at, IssueKind::DartId, format!("dart at position {i} has id {}", dart.id));
        }
        if dart.from >= nv || dart.to >= nv {
            push(at, IssueKind::UnknownVertex, format!("endpoints {} -> {}", dart.from, dart.to));
        }
        if dart.inv >= nd || dart.inv == i || d.darts[dart.inv].inv != i {
            push(at, IssueKind::Involution, format!("inv = {} is not a fixed-point-free involution", dart.inv));
            continue;
        }
        let other = &d.darts[dart.inv];
        if other.from != dart.to || other.to != dart.from {
            push(at, IssueKind::Endpoints, format!("inverse dart {} has endpoints {} -> {}", dart.inv, other.from, other.to));
        }
        if other.label != dart.label.inverse() {
            push(at, IssueKind::LabelInverse, format!("{} and inverse {}", dart.label, other.label));
        }
    }

    let mut seen: Vec<Option<Location>> = vec![None; nd];
    let cycles: Vec<(Location, &Vec<usize>)> = d
        .faces
        .iter()
        .enumerate()
        .map(|(f, face)| (Location::Face(f), &face.cycle))
        .chain(d.contours.iter().enumerate().map(|(c, cycle)| (Location::Contour(c), cycle)))
        .collect();
    for &(loc, cycle) in &cycles {
        if cycle.is_empty() {
            match loc {
                Location::Face(_) => push(loc, IssueKind::EmptyFace, "face with empty boundary".into()),
                _ if nd > 0 => push(loc, IssueKind::EmptyContour, "empty contour on a map with edges".into()),
                _ => {}
            }
        }
        for (k, &dart) in cycle.iter().enumerate() {
            if dart >= nd {
                push(loc, IssueKind::UnknownDart, format!("position {k} names dart {dart}"));
                continue;
            }
            match seen[dart] {
                Some(first) => push(
                    Location::Dart(dart),
                    IssueKind::DartRepeated,
                    format!("dart lies on {} and on {}", describe(first), describe(loc)),
                ),
                None => seen[dart] = Some(loc),
            }
            let next = cycle[(k + 1) % cycle.len()];
            if next < nd && d.darts[dart].to < nv && d.darts[dart].to != d.darts[next].from {
                push(loc, IssueKind::CycleNotClosed, format!("dart {dart} at position {k} does not lead into dart {next}"));
            }
        }
    }
    for (dart, s) in seen.iter().enumerate() {
        if s.is_none() {
            push(Location::Dart(dart), IssueKind::DartUnused, "dart lies on no face and no contour".into());
        }
    }

    let mut face_matches = Vec::new();
    if issues.is_empty() {
        topology(d, &mut issues);
        for (f, m) in face_matches_inner(d, relators).into_iter().enumerate() {
            match m {
                Some(m) => face_matches.push(m),
                None => issues.push(Issue {
                    location: Location::Face(f),
                    kind: IssueKind::FaceLabel,
                    detail: format!("label {} is no rotation of a relator or its inverse", d.label(&d.faces[f].cycle)),
                }),
            }
        }
    }

    DiagramReport {
        valid: issues.is_empty(),
        vertices: nv,
        edges: nd / 2,
        faces: d.faces.len(),
        contours: d.contours.len(),
        issues,
        face_matches,
    }
}

fn describe(loc: Location) -> String {
    match loc {
        Location::Face(f) => format!("face {f}"),
        Location::Contour(c) => format!("contour {c}"),
        Location::Vertex(v) => format!("vertex {v}"),
        Location::Dart(x) => format!("dart {x}"),
        Location::Diagram => "the diagram".into(),
    }
}

/// Rotation orbits, connectivity and Euler characteristic, assuming the
/// local invariants already hold.
fn topology(d: &Diagram, issues: &mut Vec<Issue>) {
    let nd = d.darts.len();
    let nv = d.vertices.len();
    let next = d.next_dart();
    let mut orbit_of = vec![usize::MAX; nd];
    let mut orbits_at = vec![0usize; nv];
    for start in 0..nd {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let v = d.darts[start].from;
        orbits_at[v] += 1;
        let mut x = start;
        loop {
            orbit_of[x] = start;
            x = next[d.darts[x].inv];
            if x == start {
                break;
            }
        }
    }
    for (v, &k) in orbits_at.iter().enumerate() {
        if k > 1 {
            issues.push(Issue {
                location: Location::Vertex(v),
                kind: IssueKind::VertexRotation,
                detail: format!("darts around the vertex form {k} rotation orbits"),
            });
        }
    }

    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    for dart in &d.darts {
        let (a, b) = (find(&mut parent, dart.from), find(&mut parent, dart.to));
        parent[a] = b;
    }
    let roots = (0..nv).filter(|&v| find(&mut parent, v) == v).count();
    if roots != 1 {
        issues.push(Issue {
            location: Location::Diagram,
            kind: IssueKind::Disconnected,
            detail: format!("{roots} connected components"),
        });
        return;
    }
    let chi = nv as i64 - (nd / 2) as i64 + d.faces.len() as i64 + d.contours.len() as i64;
    if chi != 2 {
        issues.push(Issue {
            location: Location::Diagram,
            kind: IssueKind::EulerCharacteristic,
            detail: format!("V - E + F + C = {chi}, expected 2"),
        });
    }
}

/// Match every face label; `None` entries are unmatched faces.
pub fn face_matches(d: &Diagram, relators: &[PowerWord]) -> Vec<Option<FaceMatch>> {
    face_matches_inner(d, relators)
}

fn face_matches_inner(d: &Diagram, relators: &[PowerWord]) -> Vec<Option<FaceMatch>> {
    let codes: Vec<Vec<i32>> = relators.iter().map(|r| r.to_codes()).collect();
    (0..d.faces.len())
        .map(|f| {
            let label = d.face_label(f);
            codes.iter().enumerate().find_map(|(j, r)| {
                if r.len() != label.len() || r.is_empty() {
                    return None;
                }
                for (inv, base) in [(false, r.clone()), (true, inverse(r))] {
                    let mut doubled = base.clone();
                    doubled.extend_from_slice(&base[..base.len() - 1]);
                    let found = find_all(&doubled, &label).next();
                    if let Some(offset) = found {
                        return Some(FaceMatch { face: f, relator: j, offset, inverse: inv });
                    }
                }
                None
            })
        })
        .collect()
}
