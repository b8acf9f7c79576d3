//! Abelian images of relators: lattice membership and weighted coefficient
//! search, used both as a certified obstruction and as a search heuristic.

use std::collections::HashMap;

/// The integer lattice spanned by relator abelian vectors, each weighted by
/// the relator length.
#[derive(Debug, Clone)]
pub struct RelatorLattice {
    n: usize,
    gens: Vec<Vec<i64>>,
    weights: Vec<u64>,
    /// Echelon basis: `(pivot column, row)` with positive pivots.
    echelon: Vec<(usize, Vec<i128>)>,
}

/// Callback receiving `(cost, coefficients, accumulated vector)`.
type Visit<'a> = dyn FnMut(u64, &[i64], &[i64]) + 'a;

/// Minimal `Σ |c_j| w_j` with `Σ c_j g_j = target`, as far as it was determined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinCost {
    /// The target is not in the lattice.
    Unreachable,
    /// Exact minimum with one optimal coefficient vector.
    Exact(u64, Vec<i64>),
    /// Every representation costs more than the limit.
    AboveLimit,
    /// The node cap stopped the search; only `0` is a safe lower bound.
    Unknown,
}

impl MinCost {
    /// Admissible lower bound, `None` when no representation exists within the limit.
    pub fn lower_bound(&self) -> Option<u64> {
        match self {
            MinCost::Unreachable | MinCost::AboveLimit => None,
            MinCost::Exact(c, _) => Some(*c),
            MinCost::Unknown => Some(0),
        }
    }
}

impl RelatorLattice {
    pub fn new(n: usize, gens: Vec<(Vec<i64>, u64)>) -> Self {
        let (gens, weights): (Vec<_>, Vec<_>) = gens.into_iter().unzip();
        let echelon = echelon_form(n, &gens);
        Self { n, gens, weights, echelon }
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn contains(&self, target: &[i64]) -> bool {
        let mut t: Vec<i128> = target.iter().map(|&x| x as i128).collect();
        t.resize(self.n, 0);
        for (col, row) in &self.echelon {
            if t[..*col].iter().any(|&x| x != 0) {
                return false;
            }
            if t[*col] % row[*col] != 0 {
                return false;
            }
            let k = t[*col] / row[*col];
            for (x, y) in t.iter_mut().zip(row) {
                *x -= k * y;
            }
        }
        t.iter().all(|&x| x == 0)
    }

    /// Search coefficient vectors of cost at most `limit`, visiting at most
    /// `node_cap` partial assignments.
    pub fn min_cost(&self, target: &[i64], limit: u64, node_cap: usize) -> MinCost {
        if !self.contains(target) {
            return MinCost::Unreachable;
        }
        if target.iter().all(|&x| x == 0) {
            return MinCost::Exact(0, vec![0; self.gens.len()]);
        }
        let mut best: Option<(u64, Vec<i64>)> = None;
        let mut nodes = 0usize;
        let complete = self.enumerate(target, limit, node_cap, &mut nodes, &mut |cost, c, _| {
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, c.to_vec()));
            }
        });
        match (best, complete) {
            (Some((c, v)), true) => MinCost::Exact(c, v),
            (None, true) => MinCost::AboveLimit,
            (_, false) => MinCost::Unknown,
        }
    }

    /// Every lattice translate `base + Σ c_j g_j` reachable with cost at most
    /// `limit`, keyed by the translated vector with its cheapest cost.
    /// `None` when the node cap was hit.
    pub fn translates(
        &self,
        base: &[i64],
        limit: u64,
        node_cap: usize,
    ) -> Option<HashMap<Vec<i64>, u64>> {
        let mut out: HashMap<Vec<i64>, u64> = HashMap::new();
        let mut nodes = 0usize;
        let mut c = vec![0i64; self.gens.len()];
        let complete = self.walk(0, base.to_vec(), 0, limit, node_cap, &mut nodes, &mut c, &mut |cost, _, v| {
            let e = out.entry(v.to_vec()).or_insert(cost);
            *e = (*e).min(cost);
        });
        complete.then_some(out)
    }

    /// Visit each coefficient vector of cost `<= limit` with `Σ c_j g_j = target`.
    /// The last generator's coefficient is solved for rather than enumerated.
    fn enumerate(
        &self,
        target: &[i64],
        limit: u64,
        node_cap: usize,
        nodes: &mut usize,
        visit: &mut Visit,
    ) -> bool {
        let k = self.gens.len();
        if k == 0 {
            return true;
        }
        let negated: Vec<i64> = target.iter().map(|&x| -x).collect();
        let mut c = vec![0i64; k];
        let last = &self.gens[k - 1];
        let w_last = self.weights[k - 1];
        let pivot = last.iter().position(|&x| x != 0);
        self.walk_prefix(0, k - 1, negated, 0, limit, node_cap, nodes, &mut c, &mut |cost, c, rest| {
            // rest = Σ_{j<k-1} c_j g_j - target; need c_last g_last = -rest
            let Some(p) = pivot else {
                if rest.iter().all(|&x| x == 0) {
                    visit(cost, c, rest);
                }
                return;
            };
            if rest[p] % last[p] != 0 {
                return;
            }
            let cl = -rest[p] / last[p];
            if rest.iter().zip(last).all(|(&r, &g)| r + cl * g == 0) {
                let total = cost + cl.unsigned_abs() * w_last;
                if total <= limit {
                    let mut full = c.to_vec();
                    full[k - 1] = cl;
                    visit(total, &full, rest);
                }
            }
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        j: usize,
        acc: Vec<i64>,
        cost: u64,
        limit: u64,
        node_cap: usize,
        nodes: &mut usize,
        c: &mut Vec<i64>,
        visit: &mut Visit,
    ) -> bool {
        self.walk_prefix(j, self.gens.len(), acc, cost, limit, node_cap, nodes, c, visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_prefix(
        &self,
        j: usize,
        end: usize,
        acc: Vec<i64>,
        cost: u64,
        limit: u64,
        node_cap: usize,
        nodes: &mut usize,
        c: &mut Vec<i64>,
        visit: &mut Visit,
    ) -> bool {
        *nodes += 1;
        if *nodes > node_cap {
            return false;
        }
        if j == end {
            visit(cost, c, &acc);
            return true;
        }
        let w = self.weights[j].max(1);
        let max_k = ((limit - cost) / w) as i64;
        for k in -max_k..=max_k {
            let mut next = acc.clone();
            for (x, g) in next.iter_mut().zip(&self.gens[j]) {
                *x += k * g;
            }
            c[j] = k;
            let step = k.unsigned_abs() * w;
            if !self.walk_prefix(j + 1, end, next, cost + step, limit, node_cap, nodes, c, visit) {
                c[j] = 0;
                return false;
            }
        }
        c[j] = 0;
        true
    }
}

/// Row echelon form over the integers (extended Euclid on pivot columns).
fn echelon_form(n: usize, gens: &[Vec<i64>]) -> Vec<(usize, Vec<i128>)> {
    let mut rows: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| {
            let mut r: Vec<i128> = g.iter().map(|&x| x as i128).collect();
            r.resize(n, 0);
            r
        })
        .collect();
    let mut out = Vec::new();
    for col in 0..n {
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| rows[i][col].abs());
            let p = nz[0];
            for &i in &nz[1..] {
                let q = rows[i][col] / rows[p][col];
                let pivot_row = rows[p].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= q * y;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut row = rows.swap_remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push((col, row));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn toy_relator_lattice() {
        let l = RelatorLattice::new(3, vec![(vec![4, 4, 5], 17)]);
        assert!(l.contains(&[8, 8, 10]));
        assert!(!l.contains(&[1, 0, 0]));
        assert!(!l.contains(&[4, 4, 4]));
        assert_eq!(l.min_cost(&[-8, -8, -10], 100, 1000), MinCost::Exact(34, vec![-2]));
        assert_eq!(l.min_cost(&[8, 8, 10], 20, 1000), MinCost::AboveLimit);
        assert_eq!(l.min_cost(&[1, 0, 0], 100, 1000), MinCost::Unreachable);
    }

    #[test]
    fn dependent_generators() {
        let l = RelatorLattice::new(2, vec![(vec![2, 0], 2), (vec![3, 0], 3), (vec![0, 1], 1)]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&[1, 5]));
        match l.min_cost(&[1, 0], 100, 100_000) {
            MinCost::Exact(c, v) => {
                assert_eq!(c, 5);
                assert_eq!(2 * v[0] + 3 * v[1], 1);
            }
            other => panic!("{other:?}"),
        }
        let t = l.translates(&[0, 0], 3, 100_000).unwrap();
        assert_eq!(t.get(&vec![0, 0]), Some(&0));
        assert_eq!(t.get(&vec![2, 1]), Some(&3));
        assert_eq!(t.get(&vec![3, 0]), Some(&3));
        assert!(!t.contains_key(&vec![5, 0]));
    }

    fn brute_member(gens: &[Vec<i64>], t: &[i64], r: i64) -> bool {
        let k = gens.len();
        let mut c = vec![-r; k];
        loop {
            let mut s = vec![0i64; t.len()];
            for (j, g) in gens.iter().enumerate() {
                for (x, y) in s.iter_mut().zip(g) {
                    *x += c[j] * y;
                }
            }
            if s == t {
                return true;
            }
            let mut j = 0;
            while j < k && c[j] == r {
                c[j] = -r;
                j += 1;
            }
            if j == k {
                return false;
            }
            c[j] += 1;
        }
    }

    proptest! {
        #[test]
        fn membership_matches_small_combinations(
            gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..3),
            coeffs in prop::collection::vec(-2i64..=2, 2),
            noise in prop::collection::vec(-1i64..=1, 3),
        ) {
            let l = RelatorLattice::new(3, gens.iter().map(|g| (g.clone(), 1)).collect());
            let mut t = vec![0i64; 3];
            for (c, g) in coeffs.iter().zip(&gens) {
                for (x, y) in t.iter_mut().zip(g) { *x += c * y; }
            }
            prop_assert!(l.contains(&t));
            for (x, y) in t.iter_mut().zip(&noise) { *x += y; }
            // a bounded brute-force hit proves membership
            if brute_member(&gens, &t, 6) {
                prop_assert!(l.contains(&t));
            }
        }
    }
}
