//! Exhaustive enumeration of homomorphisms under per-element candidate
//! constraints. Backtracking assigns source elements in index order and
//! tries target candidates in ascending order, so enumeration is
//! lexicographic on the map vector and "first found" is deterministic.

use std::ops::ControlFlow;

use crate::hom::{validate_hom_as, CategoryTag, Hom};
use crate::lattice::CarrierRc;

pub struct HomSearch {
    source: CarrierRc,
    target: CarrierRc,
    tag: CategoryTag,
    allowed: Vec<Vec<usize>>,
}

impl HomSearch {
    pub fn new(source: CarrierRc, target: CarrierRc, tag: CategoryTag) -> Self {
        let all: Vec<usize> = (0..target.size()).collect();
        let allowed = vec![all; source.size()];
        HomSearch { source, target, tag, allowed }
    }

    /// Forces `f(x) = y`.
    pub fn pin(mut self, x: usize, y: usize) -> Self {
        self.allowed[x] = vec![y];
        self
    }

    /// Restricts the candidates for `x` (kept in ascending order).
    pub fn restrict(mut self, x: usize, candidates: Vec<usize>) -> Self {
        self.allowed[x] = candidates;
        self
    }

    pub fn for_each(&self, mut visit: impl FnMut(Hom) -> ControlFlow<()>) {
        let n = self.source.size();
        // Pre-pin bound constraints so whole branches die early.
        let mut allowed = self.allowed.clone();
        if self.tag >= CategoryTag::MLat {
            if let (Some(sl), Some(tl)) = (self.source.lattice(), self.target.lattice()) {
                allowed[sl.top()].retain(|&y| y == tl.top());
                if self.tag >= CategoryTag::DLat {
                    allowed[sl.bottom()].retain(|&y| y == tl.bottom());
                }
            }
        }
        let mut map = vec![usize::MAX; n];
        let _ = self.recurse(&allowed, &mut map, 0, &mut visit);
    }

    fn recurse(
        &self,
        allowed: &[Vec<usize>],
        map: &mut Vec<usize>,
        x: usize,
        visit: &mut impl FnMut(Hom) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.source.size();
        if x == n {
            let h = Hom::new(self.source.clone(), self.target.clone(), map.clone(), self.tag)
                .expect("search produces well-shaped maps");
            if matches!(validate_hom_as(&h, self.tag), Ok(v) if v.is_empty()) {
                return visit(h);
            }
            return ControlFlow::Continue(());
        }
        'cand: for &y in &allowed[x] {
            for px in 0..x {
                let py = map[px];
                if self.source.leq(px, x) && !self.target.leq(py, y) {
                    continue 'cand;
                }
                if self.source.leq(x, px) && !self.target.leq(y, py) {
                    continue 'cand;
                }
            }
            if self.tag >= CategoryTag::MLat {
                if let (Some(sl), Some(tl)) = (self.source.lattice(), self.target.lattice()) {
                    for px in 0..x {
                        if let Some(fm) = map_get(map, sl.meet(px, x), x, y) {
                            if fm != tl.meet(map[px], y) {
                                continue 'cand;
                            }
                        }
                        if self.tag >= CategoryTag::DLat {
                            if let Some(fj) = map_get(map, sl.join(px, x), x, y) {
                                if fj != tl.join(map[px], y) {
                                    continue 'cand;
                                }
                            }
                        }
                    }
                }
            }
            map[x] = y;
            if let ControlFlow::Break(()) = self.recurse(allowed, map, x + 1, visit) {
                map[x] = usize::MAX;
                return ControlFlow::Break(());
            }
            map[x] = usize::MAX;
        }
        ControlFlow::Continue(())
    }

    pub fn first(&self) -> Option<Hom> {
        let mut found = None;
        self.for_each(|h| {
            found = Some(h);
            ControlFlow::Break(())
        });
        found
    }

    pub fn collect_up_to(&self, limit: usize) -> Vec<Hom> {
        let mut out = Vec::new();
        self.for_each(|h| {
            out.push(h);
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        out
    }

    pub fn collect_all(&self) -> Vec<Hom> {
        self.collect_up_to(usize::MAX)
    }
}

/// Value of the partial map at `m`, treating the tentative assignment
/// `x ↦ y` as already made.
fn map_get(map: &[usize], m: usize, x: usize, y: usize) -> Option<usize> {
    if m == x {
        Some(y)
    } else if map[m] != usize::MAX {
        Some(map[m])
    } else {
        None
    }
}
