//! Bounded meet-semilattices and lattices over a finite poset, with full
//! meet/join tables, distributivity and frame checks.

use std::sync::Arc;

use crate::bitset::Bitset;
use crate::error::{NotALatticeReason, OrderError};
use crate::poset::FinitePoset;

/// Hard cap on table materialization; quantifier scans dominate runtime and
/// anything beyond this is better handled by the order-only paths.
pub const TABLE_CAP: usize = 2048;

/// A meet-semilattice with a top element. Every meet is the greatest lower
/// bound under the poset order, which the constructor verifies.
#[derive(Clone, PartialEq, Eq)]
pub struct MeetSemilattice {
    poset: FinitePoset,
    meet: Vec<u32>,
    top: usize,
}

impl MeetSemilattice {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y] as usize
    }

    pub fn top(&self) -> usize {
        self.top
    }
}

/// A bounded lattice. `distributive` is decided exhaustively at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct BoundedLattice {
    mlat: MeetSemilattice,
    join: Vec<u32>,
    bottom: usize,
    distributive: bool,
}

impl BoundedLattice {
    /// Computes meet/join tables from the order. Fails with the first pair in
    /// canonical order lacking a bound.
    pub fn from_poset(poset: FinitePoset) -> Result<Self, OrderError> {
        let n = poset.size();
        if n == 0 {
            return Err(OrderError::NotALattice(NotALatticeReason::Empty));
        }
        if n > TABLE_CAP {
            return Err(OrderError::TooLarge(n));
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let lower = poset.down_set(x).intersection(poset.down_set(y));
                match poset.greatest_of(&lower) {
                    Some(m) => meet[x * n + y] = m as u32,
                    None => return Err(OrderError::NotALattice(poset.no_meet_reason(x, y))),
                }
                let upper = poset.up_set(x).intersection(poset.up_set(y));
                match poset.least_of(&upper) {
                    Some(j) => join[x * n + y] = j as u32,
                    None => return Err(OrderError::NotALattice(poset.no_join_reason(x, y))),
                }
            }
        }
        // Finite + all binary bounds forces global bounds.
        let mut top = 0usize;
        let mut bottom = 0usize;
        for x in 1..n {
            top = join[top * n + x] as usize;
            bottom = meet[bottom * n + x] as usize;
        }
        let mut lat = BoundedLattice {
            mlat: MeetSemilattice { poset, meet, top },
            join,
            bottom,
            distributive: false,
        };
        lat.distributive = lat.distributivity_witness().is_none();
        Ok(lat)
    }

    pub fn poset(&self) -> &FinitePoset {
        self.mlat.poset()
    }

    pub fn meet_semilattice(&self) -> &MeetSemilattice {
        &self.mlat
    }

    pub fn size(&self) -> usize {
        self.mlat.size()
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.mlat.meet(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y] as usize
    }

    pub fn top(&self) -> usize {
        self.mlat.top()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive
    }

    /// Join of a subset; the empty join is the bottom.
    pub fn join_of(&self, s: &Bitset) -> usize {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a subset; the empty meet is the top.
    pub fn meet_of(&self, s: &Bitset) -> usize {
        s.iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// First triple in canonical order violating the distributive law or its
    /// dual, if any.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                    let lhs = self.join(a, self.meet(b, c));
                    let rhs = self.meet(self.join(a, b), self.join(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Frame check: `a ∧ ⋁S = ⋁{a ∧ s}` for every element `a` and every
    /// downset `S`. Independent of the distributivity scan (it quantifies
    /// over downsets rather than triples); the two must agree on every
    /// finite lattice.
    pub fn frame_witness(&self, budget: usize) -> Result<Option<FrameViolation>, OrderError> {
        let (downsets, truncated) = self.poset().downsets_budgeted(budget);
        if truncated {
            return Err(OrderError::TooLarge(downsets.len()));
        }
        for s in &downsets {
            let joined = self.join_of(s);
            for a in 0..self.size() {
                let lhs = self.meet(a, joined);
                let mut rhs = self.bottom;
                for x in s.iter() {
                    rhs = self.join(rhs, self.meet(a, x));
                }
                if lhs != rhs {
                    return Ok(Some(FrameViolation { element: a, downset: s.clone() }));
                }
            }
        }
        Ok(None)
    }

    /// Verifies the stored tables against the order (used on lattices that
    /// were assembled rather than computed).
    pub fn tables_consistent(&self) -> bool {
        let n = self.size();
        let p = self.poset();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let m = self.meet(x, y);
                let j = self.join(x, y);
                let lower = p.down_set(x).intersection(p.down_set(y));
                let upper = p.up_set(x).intersection(p.up_set(y));
                p.greatest_of(&lower) == Some(m) && p.least_of(&upper) == Some(j)
            })
        }) && (0..n).all(|x| self.meet(x, self.top()) == x && self.join(x, self.bottom) == x)
    }
}

#[derive(Clone, Debug)]
pub struct FrameViolation {
    pub element: usize,
    pub downset: Bitset,
}

/// A carrier for homomorphisms: either a bare poset or a bounded lattice.
/// Meet-semilattice carriers are represented as lattices (a finite
/// meet-semilattice with top has all joins); which operations a morphism must
/// preserve is decided by the morphism's category tag, not the carrier.
#[derive(Clone, PartialEq, Eq)]
pub enum Carrier {
    Poset(FinitePoset),
    Lattice(BoundedLattice),
}

pub type CarrierRc = Arc<Carrier>;

impl Carrier {
    pub fn poset(&self) -> &FinitePoset {
        match self {
            Carrier::Poset(p) => p,
            Carrier::Lattice(l) => l.poset(),
        }
    }

    pub fn lattice(&self) -> Option<&BoundedLattice> {
        match self {
            Carrier::Poset(_) => None,
            Carrier::Lattice(l) => Some(l),
        }
    }

    pub fn size(&self) -> usize {
        self.poset().size()
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset().label(i)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset().leq(x, y)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Carrier::Poset(_) => "poset",
            Carrier::Lattice(l) => {
                if l.is_distributive() {
                    "distributive lattice"
                } else {
                    "lattice"
                }
            }
        }
    }

    pub fn rc(self) -> CarrierRc {
        Arc::new(self)
    }
}

/// Restricts a lattice to a sub-poset and recomputes tables. The index list
/// must be strictly increasing. Fails if the restriction is not a lattice.
pub fn sub_lattice(parent: &BoundedLattice, indices: &[usize]) -> Result<BoundedLattice, OrderError> {
    BoundedLattice::from_poset(parent.poset().restrict(indices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{cover_pairs, labels_from_strs};

    fn poset(labels: &[&str], covers: &[(&str, &str)]) -> FinitePoset {
        FinitePoset::from_covers(labels_from_strs(labels), &cover_pairs(covers)).unwrap()
    }

    pub(crate) fn chain_lattice(n: usize) -> BoundedLattice {
        let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        BoundedLattice::from_poset(FinitePoset::from_cover_indices(labels, &covers).unwrap()).unwrap()
    }

    pub(crate) fn m3() -> BoundedLattice {
        BoundedLattice::from_poset(poset(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        ))
        .unwrap()
    }

    pub(crate) fn n5() -> BoundedLattice {
        BoundedLattice::from_poset(poset(
            &["0", "x", "z", "y", "1"],
            &[("0", "x"), ("x", "z"), ("z", "1"), ("0", "y"), ("y", "1")],
        ))
        .unwrap()
    }

    #[test]
    fn chain_is_min_max() {
        let l = chain_lattice(3);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(l.meet(x, y), x.min(y));
                assert_eq!(l.join(x, y), x.max(y));
            }
        }
        assert!(l.is_distributive());
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let p = poset(&["a", "b"], &[]);
        assert!(matches!(
            BoundedLattice::from_poset(p),
            Err(OrderError::NotALattice(_))
        ));
    }

    #[test]
    fn m3_is_a_lattice_but_not_distributive() {
        let l = m3();
        // Brute-force oracle over all triples.
        let mut oracle_witness = None;
        'outer: for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    if l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)) {
                        oracle_witness = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        assert!(!l.is_distributive());
        let w = l.distributivity_witness().unwrap();
        assert_eq!(Some(w), oracle_witness);
        // The witness is a triple of the three atoms.
        let atoms = [1usize, 2, 3];
        assert!(atoms.contains(&w.0) && atoms.contains(&w.1) && atoms.contains(&w.2));
    }

    #[test]
    fn n5_is_not_distributive() {
        assert!(!n5().is_distributive());
        assert!(n5().distributivity_witness().is_some());
    }

    #[test]
    fn cube_is_a_frame() {
        // B3: downsets of a 3-antichain.
        let p = poset(&["x", "y", "z"], &[]);
        let ds = p.all_downsets();
        assert_eq!(ds.len(), 8);
        let labels: Vec<String> = (0..8).map(|i| format!("s{i}")).collect();
        let mut up = vec![Bitset::empty(8); 8];
        for i in 0..8 {
            for j in 0..8 {
                if ds[i].is_subset(&ds[j]) {
                    up[i].insert(j);
                }
            }
        }
        let cube = BoundedLattice::from_poset(FinitePoset::from_up_rows(labels, up)).unwrap();
        assert!(cube.is_distributive());
        assert!(cube.frame_witness(10_000).unwrap().is_none());
    }

    #[test]
    fn frame_check_agrees_with_distributivity_on_m3() {
        let l = m3();
        let v = l.frame_witness(10_000).unwrap();
        assert!(v.is_some());
        let v = v.unwrap();
        // The reported violation really violates the frame law.
        let joined = l.join_of(&v.downset);
        let lhs = l.meet(v.element, joined);
        let mut rhs = l.bottom();
        for x in v.downset.iter() {
            rhs = l.join(rhs, l.meet(v.element, x));
        }
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn one_element_lattice_is_degenerate_but_valid() {
        let l = chain_lattice(1);
        assert_eq!(l.top(), l.bottom());
        assert!(l.is_distributive());
        assert!(l.frame_witness(100).unwrap().is_none());
    }

    #[test]
    fn order_determined_by_meet_and_join() {
        for l in [chain_lattice(4), m3(), n5()] {
            let n = l.size();
            for x in 0..n {
                for y in 0..n {
                    let leq = l.poset().leq(x, y);
                    assert_eq!(leq, l.meet(x, y) == x);
                    assert_eq!(leq, l.join(x, y) == y);
                }
            }
            // Absorption.
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(l.meet(x, l.join(x, y)), x);
                    assert_eq!(l.join(x, l.meet(x, y)), x);
                }
            }
        }
    }
}
