use super::{selected_darts, CycleRef, Diagram, Selection};

/// An oriented arc; the opposite orientation reads the inverse darts backwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub darts: Vec<usize>,
}

impl Arc {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// Maximal arcs: every edge lies on exactly one; all intermediate vertices
/// have degree 2. A closed circuit of degree-2 vertices is cut at the
/// origin of its least dart.
pub fn maximal_arcs(d: &Diagram) -> Vec<Arc> {
    let deg = d.degrees();
    let mut out_darts: Vec<Vec<usize>> = vec![Vec::new(); d.vertices.len()];
    for dart in &d.darts {
        out_darts[dart.from].push(dart.id);
    }
    // the other dart leaving a degree-2 vertex
    let through = |v: usize, arriving: usize| -> usize {
        let back = d.darts[arriving].inv;
        let o = &out_darts[v];
        if o[0] == back { o[1] } else { o[0] }
    };
    let mut done = vec![false; d.darts.len()];
    let mut arcs = Vec::new();
    for start in 0..d.darts.len() {
        if done[start] || done[d.darts[start].inv] {
            continue;
        }
        let mut forward = vec![start];
        let mut closed = false;
        let mut x = start;
        while deg[d.darts[x].to] == 2 {
            let y = through(d.darts[x].to, x);
            if y == start {
                closed = true;
                break;
            }
            forward.push(y);
            x = y;
        }
        let mut backward = Vec::new();
        if !closed {
            let mut x = start;
            while deg[d.darts[x].from] == 2 {
                // predecessor p with through(from, p) == x, i.e. p = inv(other dart at from)
                let v = d.darts[x].from;
                let o = &out_darts[v];
                let other = if o[0] == x { o[1] } else { o[0] };
                let p = d.darts[other].inv;
                backward.push(p);
                x = p;
            }
        }
        backward.reverse();
        backward.extend(forward);
        for &y in &backward {
            done[y] = true;
            done[d.darts[y].inv] = true;
        }
        arcs.push(Arc { darts: backward });
    }
    arcs
}

/// Double-selected sub-arcs: maximal runs along maximal arcs where both
/// darts of every edge lie on designated selected paths. Each entry carries
/// the faces on either side.
pub fn double_selected_arcs(d: &Diagram, sel: &Selection) -> Vec<(Arc, usize, usize)> {
    let flags = selected_darts(d, sel);
    let pos = d.dart_positions();
    let face_of = |x: usize| match pos[x] {
        Some((CycleRef::Face(f), _)) => Some(f),
        _ => None,
    };
    let mut out = Vec::new();
    for arc in maximal_arcs(d) {
        let mut run: Vec<usize> = Vec::new();
        let mut flush = |run: &mut Vec<usize>| {
            if let Some(&x) = run.first() {
                let (a, b) = (face_of(x).unwrap(), face_of(d.darts[x].inv).unwrap());
                out.push((Arc { darts: std::mem::take(run) }, a, b));
            }
        };
        for &x in &arc.darts {
            if flags[x] && flags[d.darts[x].inv] {
                run.push(x);
            } else {
                flush(&mut run);
            }
        }
        flush(&mut run);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramBuilder;

    #[test]
    fn arcs_partition_edges_and_have_degree_two_interiors() {
        let mut b = DiagramBuilder::point();
        b.attach_face(0, 0, &[1, 2, 3, -1, -2]);
        b.insert_spur(2, 3);
        let c = b.contour_codes();
        b.attach_face(0, 1, &[c[0], 1, 2, -3, -1].iter().skip(1).copied().collect::<Vec<_>>());
        let d = b.finish();
        let deg = d.degrees();
        let arcs = maximal_arcs(&d);
        let mut count = vec![0; d.darts.len()];
        for a in &arcs {
            for w in a.darts.windows(2) {
                assert_eq!(d.darts[w[0]].to, d.darts[w[1]].from);
                assert_eq!(deg[d.darts[w[0]].to], 2);
            }
            for &x in &a.darts {
                count[x] += 1;
                count[d.darts[x].inv] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 1));
    }

    #[test]
    fn one_face_circle_is_one_arc() {
        let mut b = DiagramBuilder::point();
        b.attach_face(0, 0, &[1, 2, 3]);
        let arcs = maximal_arcs(&b.finish());
        assert_eq!(arcs.len(), 1);
        assert_eq!(arcs[0].len(), 3);
    }
}
