//! Finite partially ordered sets with precomputed relation rows.

use std::collections::HashSet;

use crate::bitset::Bitset;
use crate::error::{NotALatticeReason, OrderError};

/// A finite poset. The order is stored twice (up-sets and down-sets) so that
/// both directions of quantification are single bitset operations.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<Bitset>,
    down: Vec<Bitset>,
}

impl FinitePoset {
    /// Builds a poset as the reflexive-transitive closure of a cover relation.
    /// Rejects duplicate labels, unknown labels, and cycles (a self-cover
    /// counts as a one-step cycle).
    pub fn from_covers(labels: Vec<String>, covers: &[(String, String)]) -> Result<Self, OrderError> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(OrderError::DuplicateLabel(l.clone()));
            }
        }
        let index_of = |l: &String| -> Result<usize, OrderError> {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| OrderError::UnknownLabel(l.clone()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let (i, j) = (index_of(a)?, index_of(b)?);
            if i == j {
                return Err(OrderError::CycleDetected(a.clone(), b.clone()));
            }
            pairs.push((i, j));
        }
        Self::from_cover_indices(labels, &pairs)
    }

    /// Same as [`from_covers`](Self::from_covers) but with index pairs.
    pub fn from_cover_indices(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, OrderError> {
        let n = labels.len();
        let mut up: Vec<Bitset> = (0..n).map(|i| Bitset::singleton(n, i)).collect();
        for &(i, j) in covers {
            if i == j {
                return Err(OrderError::CycleDetected(labels[i].clone(), labels[j].clone()));
            }
            up[i].insert(j);
        }
        // Warshall closure on bitset rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    let row = up[k].clone();
                    up[i].union_with(&row);
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if up[i].contains(j) && up[j].contains(i) {
                    return Err(OrderError::CycleDetected(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let mut down: Vec<Bitset> = (0..n).map(|_| Bitset::empty(n)).collect();
        for i in 0..n {
            for j in up[i].iter() {
                down[j].insert(i);
            }
        }
        Ok(FinitePoset { labels, up, down })
    }

    /// Builds a poset directly from a full order relation given as up-rows.
    pub fn from_up_rows(labels: Vec<String>, up: Vec<Bitset>) -> Self {
        let n = labels.len();
        debug_assert_eq!(up.len(), n);
        let mut down: Vec<Bitset> = (0..n).map(|_| Bitset::empty(n)).collect();
        for i in 0..n {
            debug_assert!(up[i].contains(i));
            for j in up[i].iter() {
                down[j].insert(i);
            }
        }
        FinitePoset { labels, up, down }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `{ y | x <= y }`, including `x`.
    pub fn up_set(&self, x: usize) -> &Bitset {
        &self.up[x]
    }

    /// `{ y | y <= x }`, including `x`.
    pub fn down_set(&self, x: usize) -> &Bitset {
        &self.down[x]
    }

    pub fn is_down_closed(&self, s: &Bitset) -> bool {
        s.iter().all(|x| self.down[x].is_subset(s))
    }

    pub fn down_closure(&self, s: &Bitset) -> Bitset {
        let mut out = Bitset::empty(self.size());
        for x in s.iter() {
            out.union_with(&self.down[x]);
        }
        out
    }

    /// The greatest element of `s` if one exists.
    pub fn greatest_of(&self, s: &Bitset) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(&self.down[m]))
    }

    /// The least element of `s` if one exists.
    pub fn least_of(&self, s: &Bitset) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(&self.up[m]))
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.up[x].count() == 1).collect()
    }

    /// Cover pairs (x, y) with x < y and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.up[x].iter() {
                if y == x {
                    continue;
                }
                let between = (0..n).any(|z| {
                    z != x && z != y && self.leq(x, z) && self.leq(z, y)
                });
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Sub-poset on the given (strictly increasing) index list.
    pub fn restrict(&self, indices: &[usize]) -> FinitePoset {
        let m = indices.len();
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let mut up = vec![Bitset::empty(m); m];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                if self.leq(i, j) {
                    up[a].insert(b);
                }
            }
        }
        FinitePoset::from_up_rows(labels, up)
    }

    /// Enumerates down-closed subsets in canonical order (cardinality, then
    /// membership-lexicographic), stopping once more than `budget` have been
    /// produced. Returns the list and whether it was truncated.
    ///
    /// Levels are generated by adding one maximal-available element at a
    /// time, so the cardinality grading is exact.
    pub fn downsets_budgeted(&self, budget: usize) -> (Vec<Bitset>, bool) {
        let n = self.size();
        let mut out: Vec<Bitset> = Vec::new();
        let mut level: Vec<Bitset> = vec![Bitset::empty(n)];
        loop {
            let room = budget.saturating_sub(out.len());
            if level.len() > room {
                level.truncate(room);
                out.extend(level);
                return (out, true);
            }
            out.extend(level.iter().cloned());
            if out.len() == budget && level_has_successor(self, &level) {
                return (out, true);
            }
            let mut next: HashSet<Bitset> = HashSet::new();
            for d in &level {
                for x in 0..n {
                    if !d.contains(x) {
                        let mut strict = self.down[x].clone();
                        strict.remove(x);
                        if strict.is_subset(d) {
                            let mut e = d.clone();
                            e.insert(x);
                            next.insert(e);
                        }
                    }
                }
            }
            if next.is_empty() {
                return (out, false);
            }
            let mut next: Vec<Bitset> = next.into_iter().collect();
            next.sort_by(|a, b| a.canonical_cmp(b));
            level = next;
        }
    }

    /// All down-closed subsets, in canonical order.
    pub fn all_downsets(&self) -> Vec<Bitset> {
        self.downsets_budgeted(usize::MAX).0
    }

    /// Checks that the stored relation is a partial order (used by tests and
    /// by validation of externally assembled posets).
    pub fn order_axioms_hold(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| self.leq(x, x))
            && (0..n).all(|x| {
                (0..n).all(|y| !(x != y && self.leq(x, y) && self.leq(y, x)))
            })
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    !self.leq(x, y)
                        || self.up[y].is_subset(&self.up[x])
                })
            })
    }

    pub(crate) fn no_meet_reason(&self, x: usize, y: usize) -> NotALatticeReason {
        NotALatticeReason::NoMeet(self.labels[x].clone(), self.labels[y].clone())
    }

    pub(crate) fn no_join_reason(&self, x: usize, y: usize) -> NotALatticeReason {
        NotALatticeReason::NoJoin(self.labels[x].clone(), self.labels[y].clone())
    }
}

fn level_has_successor(p: &FinitePoset, level: &[Bitset]) -> bool {
    let n = p.size();
    level.iter().any(|d| {
        (0..n).any(|x| {
            if d.contains(x) {
                return false;
            }
            let mut strict = p.down_set(x).clone();
            strict.remove(x);
            strict.is_subset(d)
        })
    })
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .iter()
            .map(|&(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "FinitePoset[{}; {}]", self.labels.join(","), covers.join(" "))
    }
}

pub fn labels_from_strs(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

pub fn cover_pairs(ps: &[(&str, &str)]) -> Vec<(String, String)> {
    ps.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FinitePoset {
        FinitePoset::from_covers(
            labels_from_strs(&["0", "a", "b", "1"]),
            &cover_pairs(&[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]),
        )
        .unwrap()
    }

    #[test]
    fn singleton_poset() {
        let p = FinitePoset::from_covers(labels_from_strs(&["x"]), &[]).unwrap();
        assert_eq!(p.size(), 1);
        assert!(p.leq(0, 0));
    }

    #[test]
    fn diamond_closure_matches_reachability_oracle() {
        let p = diamond();
        // Oracle: exhaustive reachability over the cover graph.
        let covers = [(0usize, 1usize), (0, 2), (1, 3), (2, 3)];
        let mut reach = [[false; 4]; 4];
        for i in 0..4 {
            reach[i][i] = true;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, j) in &covers {
                for k in 0..4 {
                    if reach[k][i] && !reach[k][j] {
                        reach[k][j] = true;
                        changed = true;
                    }
                }
            }
        }
        let mut related = 0;
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(p.leq(i, j), reach[i][j]);
                if reach[i][j] {
                    related += 1;
                }
            }
        }
        assert_eq!(related, 9);
    }

    #[test]
    fn cycles_rejected() {
        let r = FinitePoset::from_covers(
            labels_from_strs(&["x", "y"]),
            &cover_pairs(&[("x", "y"), ("y", "x")]),
        );
        assert!(matches!(r, Err(OrderError::CycleDetected(_, _))));
        let r = FinitePoset::from_covers(labels_from_strs(&["x"]), &cover_pairs(&[("x", "x")]));
        assert!(matches!(r, Err(OrderError::CycleDetected(_, _))));
    }

    #[test]
    fn duplicate_and_unknown_labels_rejected() {
        let r = FinitePoset::from_covers(labels_from_strs(&["x", "x"]), &[]);
        assert!(matches!(r, Err(OrderError::DuplicateLabel(_))));
        let r = FinitePoset::from_covers(
            labels_from_strs(&["x"]),
            &cover_pairs(&[("x", "z")]),
        );
        assert!(matches!(r, Err(OrderError::UnknownLabel(_))));
    }

    #[test]
    fn downsets_of_diamond() {
        let p = diamond();
        let (ds, truncated) = p.downsets_budgeted(1000);
        assert!(!truncated);
        // Oracle: filter all 2^4 subsets for down-closure.
        let mut expected = Vec::new();
        for mask in 0u32..16 {
            let s = Bitset::from_indices(4, &(0..4).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>());
            if p.is_down_closed(&s) {
                expected.push(s);
            }
        }
        assert_eq!(ds.len(), expected.len());
        assert_eq!(ds.len(), 6);
        for d in &ds {
            assert!(expected.contains(d));
        }
        // Canonical order: cardinality graded, lexicographic within.
        for w in ds.windows(2) {
            assert_eq!(w[0].canonical_cmp(&w[1]), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn downset_budget_truncates() {
        let p = diamond();
        let (ds, truncated) = p.downsets_budgeted(3);
        assert!(truncated);
        assert_eq!(ds.len(), 3);
        let (full, _) = p.downsets_budgeted(1000);
        assert_eq!(&full[..3], &ds[..]);
    }

    #[test]
    fn covers_of_chain() {
        let p = FinitePoset::from_covers(
            labels_from_strs(&["0", "m", "1"]),
            &cover_pairs(&[("0", "m"), ("m", "1")]),
        )
        .unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }
}
