use std::collections::{BTreeSet, HashMap};

use super::{CycleRef, Diagram};
use crate::decision::cyclic::find_all;

/// Unordered pairs of distinct faces that are immediately cancellable: some
/// edge has one dart on each face and the two face labels read as mutual
/// mirror images starting from that edge.
pub fn find_immediately_cancellable(d: &Diagram) -> Vec<(usize, usize)> {
    let pos = d.dart_positions();
    // shared edges grouped by face pair, with positions (i1 in f1, i2 in f2)
    let mut shared: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (x, p) in pos.iter().enumerate() {
        let Some((CycleRef::Face(f1), i1)) = *p else { continue };
        let Some((CycleRef::Face(f2), i2)) = pos[d.darts[x].inv] else { continue };
        if f1 < f2 {
            shared.entry((f1, f2)).or_default().push((i1, i2));
        }
    }
    let mut out = BTreeSet::new();
    for ((f1, f2), edges) in shared {
        let a = d.face_label(f1);
        let c2 = d.face_label(f2);
        let l = a.len();
        if l != c2.len() {
            continue;
        }
        let b: Vec<i32> = c2.iter().rev().map(|&x| -x).collect();
        let mut doubled = a.clone();
        doubled.extend_from_slice(&a[..l - 1]);
        let shifts: BTreeSet<usize> = find_all(&doubled, &b).collect();
        if edges.iter().any(|&(i1, i2)| shifts.contains(&((i1 + i2 + 1) % l))) {
            out.insert((f1, f2));
        }
    }
    out.into_iter().collect()
}
