//! The way-below and totally-below relations, computed by quantifying over
//! the downsets of a lattice.

use crate::bitset::Bitset;
use crate::error::{MonadError, OrderError};
use crate::lattice::BoundedLattice;

/// A binary relation on a lattice stored column-wise: `below[x]` is the set
/// of `y` with `y rel x`.
#[derive(Clone)]
pub struct BelowRelation {
    pub below: Vec<Bitset>,
}

impl BelowRelation {
    pub fn holds(&self, y: usize, x: usize) -> bool {
        self.below[x].contains(y)
    }

    /// Elements related to themselves.
    pub fn self_related(&self) -> Vec<usize> {
        (0..self.below.len()).filter(|&x| self.holds(x, x)).collect()
    }
}

/// Way-below: `a ≪ b` iff every downset whose join dominates `b` has join
/// dominating `a`. (A finite subset of a finite set is the set itself, so
/// the finite-subcover clause of the definition collapses; the relation must
/// come out equal to the order, which is asserted.)
pub fn way_below(l: &BoundedLattice, budget: usize) -> Result<BelowRelation, MonadError> {
    let n = l.size();
    let (downsets, truncated) = l.poset().downsets_budgeted(budget);
    if truncated {
        return Err(MonadError::BudgetExceeded { count: downsets.len(), budget });
    }
    let mut below: Vec<Bitset> = (0..n).map(|_| Bitset::full(n)).collect();
    for s in &downsets {
        let j = l.join_of(s);
        let dominated = l.poset().down_set(j).clone();
        for b in dominated.iter() {
            below[b].intersect_with(&dominated);
        }
    }
    for b in 0..n {
        if below[b] != *l.poset().down_set(b) {
            return Err(MonadError::Invariant(
                "way-below disagrees with the order on a finite lattice".to_string(),
            ));
        }
    }
    Ok(BelowRelation { below })
}

/// Totally-below: `y ⋘ x` iff `y` lies in every downset whose join
/// dominates `x`. The empty downset has bottom join, so nothing is totally
/// below the bottom — in particular `⊥ ⋘ ⊥` never holds.
pub fn totally_below(l: &BoundedLattice, budget: usize) -> Result<BelowRelation, MonadError> {
    let n = l.size();
    let (downsets, truncated) = l.poset().downsets_budgeted(budget);
    if truncated {
        return Err(MonadError::BudgetExceeded { count: downsets.len(), budget });
    }
    let mut below: Vec<Bitset> = (0..n).map(|_| Bitset::full(n)).collect();
    for s in &downsets {
        let j = l.join_of(s);
        for x in l.poset().down_set(j).iter() {
            below[x].intersect_with(s);
        }
    }
    Ok(BelowRelation { below })
}

/// Convenience: totally-below for the downset monad, way-below for ideals.
pub fn monad_below(
    monad: crate::monad::Monad,
    l: &BoundedLattice,
    budget: usize,
) -> Result<BelowRelation, MonadError> {
    match monad {
        crate::monad::Monad::Downset => totally_below(l, budget),
        crate::monad::Monad::Ideal => way_below(l, budget),
    }
}

pub fn lattice_of(c: &crate::lattice::Carrier) -> Result<&BoundedLattice, MonadError> {
    c.lattice().ok_or(MonadError::Order(OrderError::NotALattice(
        crate::error::NotALatticeReason::Empty,
    )))
}
