//! Homomorphisms between carriers, tagged by the category whose laws they
//! must satisfy, together with adjoint computation.

use serde::Serialize;
use std::sync::Arc;

use crate::error::HomError;
use crate::lattice::{Carrier, CarrierRc};

/// Which preservation laws a morphism claims. Tags are totally ordered by
/// strength: every Frm hom is a DLat hom, every DLat hom an MLat hom, every
/// MLat hom monotone. On finite carriers Frm and DLat demand the same checks
/// (arbitrary joins reduce to iterated binary joins plus the empty join).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum CategoryTag {
    Poset,
    MLat,
    DLat,
    Frm,
}

impl CategoryTag {
    pub fn name(&self) -> &'static str {
        match self {
            CategoryTag::Poset => "Poset",
            CategoryTag::MLat => "MLat",
            CategoryTag::DLat => "DLat",
            CategoryTag::Frm => "Frm",
        }
    }
}

#[derive(Clone)]
pub struct Hom {
    source: CarrierRc,
    target: CarrierRc,
    map: Vec<usize>,
    tag: CategoryTag,
}

/// One violated preservation law, with the first witness in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    NotMonotone { x: usize, y: usize },
    MeetNotPreserved { x: usize, y: usize },
    TopNotPreserved,
    JoinNotPreserved { x: usize, y: usize },
    BottomNotPreserved,
}

impl Violation {
    pub fn describe(&self, src: &Carrier) -> String {
        match self {
            Violation::NotMonotone { x, y } => {
                format!("not monotone at ({}, {})", src.label(*x), src.label(*y))
            }
            Violation::MeetNotPreserved { x, y } => {
                format!("meet not preserved at ({}, {})", src.label(*x), src.label(*y))
            }
            Violation::TopNotPreserved => "top not preserved".to_string(),
            Violation::JoinNotPreserved { x, y } => {
                format!("join not preserved at ({}, {})", src.label(*x), src.label(*y))
            }
            Violation::BottomNotPreserved => "bottom not preserved".to_string(),
        }
    }
}

impl Hom {
    pub fn new(
        source: CarrierRc,
        target: CarrierRc,
        map: Vec<usize>,
        tag: CategoryTag,
    ) -> Result<Self, HomError> {
        if map.len() != source.size() {
            return Err(HomError::SourceTargetMismatch(format!(
                "map has {} entries for a source of size {}",
                map.len(),
                source.size()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size()) {
            return Err(HomError::SourceTargetMismatch(format!(
                "map value {} out of range for target of size {}",
                v,
                target.size()
            )));
        }
        Ok(Hom { source, target, map, tag })
    }

    pub fn identity(c: CarrierRc, tag: CategoryTag) -> Self {
        let map = (0..c.size()).collect();
        Hom { source: c.clone(), target: c, map, tag }
    }

    pub fn source(&self) -> &CarrierRc {
        &self.source
    }

    pub fn target(&self) -> &CarrierRc {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn tag(&self) -> CategoryTag {
        self.tag
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn with_tag(mut self, tag: CategoryTag) -> Self {
        self.tag = tag;
        self
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// First source element where the two maps differ, in index order.
    pub fn first_difference(&self, other: &Hom) -> Option<usize> {
        debug_assert_eq!(self.map.len(), other.map.len());
        (0..self.map.len()).find(|&i| self.map[i] != other.map[i])
    }

    pub fn same_map(&self, other: &Hom) -> bool {
        self.map == other.map
    }

    /// True when the map is a bijection whose inverse is also monotone.
    pub fn order_isomorphism(&self) -> Option<Hom> {
        let n = self.source.size();
        if n != self.target.size() {
            return None;
        }
        let mut inv = vec![usize::MAX; n];
        for (i, &v) in self.map.iter().enumerate() {
            if inv[v] != usize::MAX {
                return None;
            }
            inv[v] = i;
        }
        let fwd_monotone = (0..n).all(|x| {
            (0..n).all(|y| !self.source.leq(x, y) || self.target.leq(self.map[x], self.map[y]))
        });
        let bwd_monotone = (0..n).all(|x| {
            (0..n).all(|y| !self.target.leq(x, y) || self.source.leq(inv[x], inv[y]))
        });
        if fwd_monotone && bwd_monotone {
            Some(Hom {
                source: self.target.clone(),
                target: self.source.clone(),
                map: inv,
                tag: self.tag,
            })
        } else {
            None
        }
    }
}

fn same_carrier(a: &CarrierRc, b: &CarrierRc) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Composite `g ∘ f`. The tag of the composite is the weaker of the two.
pub fn compose(g: &Hom, f: &Hom) -> Result<Hom, HomError> {
    if !same_carrier(&f.target, &g.source) {
        return Err(HomError::SourceTargetMismatch(
            "composition endpoints do not match".to_string(),
        ));
    }
    Ok(Hom {
        source: f.source.clone(),
        target: g.target.clone(),
        map: f.map.iter().map(|&i| g.map[i]).collect(),
        tag: f.tag.min(g.tag),
    })
}

/// Lists every preservation law of `tag` the map violates (first witness per
/// law, laws in a fixed order). An empty report means the hom is valid.
pub fn validate_hom_as(f: &Hom, tag: CategoryTag) -> Result<Vec<Violation>, HomError> {
    let src = f.source.as_ref();
    let tgt = f.target.as_ref();
    let n = src.size();
    let mut out = Vec::new();

    'mono: for x in 0..n {
        for y in 0..n {
            if src.leq(x, y) && !tgt.leq(f.map[x], f.map[y]) {
                out.push(Violation::NotMonotone { x, y });
                break 'mono;
            }
        }
    }
    if tag == CategoryTag::Poset {
        return Ok(out);
    }

    let (sl, tl) = match (src.lattice(), tgt.lattice()) {
        (Some(s), Some(t)) => (s, t),
        _ => return Err(HomError::MissingStructure("lattice")),
    };

    'meet: for x in 0..n {
        for y in 0..n {
            if f.map[sl.meet(x, y)] != tl.meet(f.map[x], f.map[y]) {
                out.push(Violation::MeetNotPreserved { x, y });
                break 'meet;
            }
        }
    }
    if f.map[sl.top()] != tl.top() {
        out.push(Violation::TopNotPreserved);
    }
    if tag == CategoryTag::MLat {
        return Ok(out);
    }

    'join: for x in 0..n {
        for y in 0..n {
            if f.map[sl.join(x, y)] != tl.join(f.map[x], f.map[y]) {
                out.push(Violation::JoinNotPreserved { x, y });
                break 'join;
            }
        }
    }
    if f.map[sl.bottom()] != tl.bottom() {
        out.push(Violation::BottomNotPreserved);
    }
    Ok(out)
}

pub fn validate_hom(f: &Hom) -> Result<Vec<Violation>, HomError> {
    validate_hom_as(f, f.tag)
}

pub fn is_valid_hom(f: &Hom) -> bool {
    matches!(validate_hom(f), Ok(v) if v.is_empty())
}

/// An adjoint pair `lower ⊣ upper`: `lower(x) ≤ y  ⟺  x ≤ upper(y)`.
#[derive(Clone)]
pub struct AdjointPair {
    pub lower: Hom,
    pub upper: Hom,
}

impl AdjointPair {
    pub fn new(lower: Hom, upper: Hom) -> Result<Self, HomError> {
        if check_adjoint(&lower, &upper)? {
            Ok(AdjointPair { lower, upper })
        } else {
            Err(HomError::SourceTargetMismatch(
                "maps do not satisfy the adjunction law".to_string(),
            ))
        }
    }
}

/// Full quantifier scan of `f(x) ≤ y ⟺ x ≤ g(y)`.
pub fn check_adjoint(f: &Hom, g: &Hom) -> Result<bool, HomError> {
    if !same_carrier(&f.target, &g.source) || !same_carrier(&g.target, &f.source) {
        return Err(HomError::SourceTargetMismatch(
            "adjoint candidates must run in opposite directions".to_string(),
        ));
    }
    let p = f.source.as_ref();
    let q = f.target.as_ref();
    for x in 0..p.size() {
        for y in 0..q.size() {
            if q.leq(f.map[x], y) != p.leq(x, g.map[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `g(y) = max { x | f(x) ≤ y }` when that maximum exists for every `y` and
/// the adjunction law holds; `None` otherwise. The result is monotone and
/// tagged `Poset`.
pub fn right_adjoint(f: &Hom) -> Option<Hom> {
    let p = f.source.as_ref();
    let q = f.target.as_ref();
    let mut map = Vec::with_capacity(q.size());
    for y in 0..q.size() {
        let mut s = crate::bitset::Bitset::empty(p.size());
        for x in 0..p.size() {
            if q.leq(f.map[x], y) {
                s.insert(x);
            }
        }
        map.push(p.poset().greatest_of(&s)?);
    }
    let g = Hom {
        source: f.target.clone(),
        target: f.source.clone(),
        map,
        tag: CategoryTag::Poset,
    };
    match check_adjoint(f, &g) {
        Ok(true) => Some(g),
        _ => None,
    }
}

/// `g(y) = min { x | y ≤ f(x) }` when it exists everywhere and `g ⊣ f`.
pub fn left_adjoint(f: &Hom) -> Option<Hom> {
    let p = f.source.as_ref();
    let q = f.target.as_ref();
    let mut map = Vec::with_capacity(q.size());
    for y in 0..q.size() {
        let mut s = crate::bitset::Bitset::empty(p.size());
        for x in 0..p.size() {
            if q.leq(y, f.map[x]) {
                s.insert(x);
            }
        }
        map.push(p.poset().least_of(&s)?);
    }
    let g = Hom {
        source: f.target.clone(),
        target: f.source.clone(),
        map,
        tag: CategoryTag::Poset,
    };
    match check_adjoint(&g, f) {
        Ok(true) => Some(g),
        _ => None,
    }
}

/// A named pointwise equation between two maps with the same source, with
/// the first failing element (by label) as witness.
#[derive(Clone, Debug, Serialize)]
pub struct Equation {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl Equation {
    pub fn of_homs(name: impl Into<String>, lhs: &Hom, rhs: &Hom) -> Equation {
        let diff = lhs.first_difference(rhs);
        Equation {
            name: name.into(),
            holds: diff.is_none(),
            witness: diff.map(|i| lhs.source().label(i).to_string()),
        }
    }

    pub fn of_identity(name: impl Into<String>, h: &Hom) -> Equation {
        let diff = (0..h.map().len()).find(|&i| h.apply(i) != i);
        Equation {
            name: name.into(),
            holds: diff.is_none(),
            witness: diff.map(|i| h.source().label(i).to_string()),
        }
    }

    pub fn of_bool(name: impl Into<String>, holds: bool, witness: Option<String>) -> Equation {
        Equation { name: name.into(), holds, witness }
    }
}

pub fn all_hold(eqs: &[Equation]) -> bool {
    eqs.iter().all(|e| e.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BoundedLattice;
    use crate::poset::{cover_pairs, labels_from_strs, FinitePoset};

    fn chain(n: usize) -> CarrierRc {
        let labels: Vec<String> = (0..n).map(|i| format!("{i}")).collect();
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Carrier::Lattice(
            BoundedLattice::from_poset(FinitePoset::from_cover_indices(labels, &covers).unwrap())
                .unwrap(),
        )
        .rc()
    }

    fn b2() -> CarrierRc {
        Carrier::Lattice(
            BoundedLattice::from_poset(
                FinitePoset::from_covers(
                    labels_from_strs(&["0", "a", "b", "1"]),
                    &cover_pairs(&[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]),
                )
                .unwrap(),
            )
            .unwrap(),
        )
        .rc()
    }

    #[test]
    fn identity_is_valid_under_every_tag() {
        for tag in [CategoryTag::Poset, CategoryTag::MLat, CategoryTag::DLat, CategoryTag::Frm] {
            let id = Hom::identity(b2(), tag);
            assert!(validate_hom(&id).unwrap().is_empty());
        }
    }

    #[test]
    fn constant_top_map_fails_bottom_preservation() {
        let c = b2();
        let f = Hom::new(c.clone(), c, vec![3, 3, 3, 3], CategoryTag::DLat).unwrap();
        let report = validate_hom(&f).unwrap();
        assert!(report.contains(&Violation::BottomNotPreserved));
    }

    #[test]
    fn skip_middle_embedding_is_a_dlat_hom() {
        let c2 = chain(2);
        let c3 = chain(3);
        let f = Hom::new(c2, c3, vec![0, 2], CategoryTag::DLat).unwrap();
        assert!(validate_hom(&f).unwrap().is_empty());
    }

    #[test]
    fn adjoints_of_identity() {
        let c = chain(3);
        let id = Hom::identity(c, CategoryTag::Poset);
        assert!(right_adjoint(&id).unwrap().is_identity());
        assert!(left_adjoint(&id).unwrap().is_identity());
        assert!(check_adjoint(&id, &id).unwrap());
    }

    #[test]
    fn adjoint_uniqueness_via_exhaustive_search() {
        // On small chains, the computed right adjoint is the unique map
        // satisfying the adjunction law.
        let p = chain(3);
        let q = chain(2);
        let f = Hom::new(p.clone(), q.clone(), vec![0, 0, 1], CategoryTag::Poset).unwrap();
        let g = right_adjoint(&f).unwrap();
        let mut matches = 0;
        for m0 in 0..3 {
            for m1 in 0..3 {
                let cand = Hom::new(q.clone(), p.clone(), vec![m0, m1], CategoryTag::Poset).unwrap();
                if check_adjoint(&f, &cand).unwrap() {
                    assert!(cand.same_map(&g));
                    matches += 1;
                }
            }
        }
        assert_eq!(matches, 1);
    }
}

#[cfg(test)]
mod adjoint_pair_tests {
    use super::*;
    use crate::corpus;
    use crate::monad::{Budget, Monad};

    #[test]
    fn adjoint_pair_accepts_join_unit_and_rejects_the_reverse() {
        let asm = Monad::Downset
            .apply_object(corpus::chain(3), &Budget::default())
            .unwrap();
        let join = left_adjoint(&asm.unit).unwrap();
        assert!(AdjointPair::new(join.clone(), asm.unit.clone()).is_ok());
        assert!(AdjointPair::new(asm.unit.clone(), join).is_err());
    }
}
