//! The two concrete monads: the downset monad on meet-semilattices and the
//! ideal monad on distributive lattices. Objects map to the lattice of their
//! admissible subsets (all downsets, resp. all ideals), the unit is the
//! principal-subset map, and multiplication is union.
//!
//! Admissible subsets are enumerated in canonical order (cardinality, then
//! membership-lexicographic); that order is part of the contract, so every
//! "first found" result is reproducible. Third-level towers are never
//! materialized: law checks walk their elements lazily up to a budget and
//! continue on a seeded pseudorandom sample beyond it.

use std::collections::HashMap;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::error::MonadError;
use crate::hom::{
    check_adjoint, compose, validate_hom_as, CategoryTag, Equation, Hom,
};
use crate::lattice::{BoundedLattice, Carrier, CarrierRc};
use crate::poset::FinitePoset;
use crate::search::HomSearch;

/// Enumeration and sampling limits. `max_subsets` bounds any single
/// admissible-subset enumeration; `seed`/`samples` drive the pseudorandom
/// continuation of associativity checks past the budget.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_subsets: usize,
    pub seed: u64,
    pub samples: usize,
}

pub const DEFAULT_SUBSET_BUDGET: usize = 50_000;
pub const DEFAULT_SAMPLE_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_SAMPLE_COUNT: usize = 2_000;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_subsets: DEFAULT_SUBSET_BUDGET,
            seed: DEFAULT_SAMPLE_SEED,
            samples: DEFAULT_SAMPLE_COUNT,
        }
    }
}

impl Budget {
    pub fn with_max(max_subsets: usize) -> Self {
        Budget { max_subsets, ..Budget::default() }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Monad {
    Downset,
    Ideal,
}

impl Monad {
    pub fn name(&self) -> &'static str {
        match self {
            Monad::Downset => "downset",
            Monad::Ideal => "ideal",
        }
    }

    /// The base category the monad lives on.
    pub fn base_tag(&self) -> CategoryTag {
        match self {
            Monad::Downset => CategoryTag::MLat,
            Monad::Ideal => CategoryTag::DLat,
        }
    }

    fn expects(&self) -> &'static str {
        match self {
            Monad::Downset => "a meet-semilattice with top",
            Monad::Ideal => "a distributive lattice",
        }
    }

    fn check_object(&self, c: &Carrier) -> Result<(), MonadError> {
        let ok = match self {
            Monad::Downset => c.lattice().is_some(),
            Monad::Ideal => c.lattice().is_some_and(|l| l.is_distributive()),
        };
        if ok {
            Ok(())
        } else {
            Err(MonadError::WrongKind {
                monad: self.name(),
                expected: self.expects(),
                found: c.kind_name().to_string(),
            })
        }
    }

    /// Is `s` an admissible subset of `c` for this monad?
    pub fn is_admissible(&self, c: &Carrier, s: &Bitset) -> bool {
        if !c.poset().is_down_closed(s) {
            return false;
        }
        match self {
            Monad::Downset => true,
            Monad::Ideal => {
                let l = match c.lattice() {
                    Some(l) => l,
                    None => return false,
                };
                if !s.contains(l.bottom()) {
                    return false;
                }
                s.iter().all(|a| s.iter().all(|b| s.contains(l.join(a, b))))
            }
        }
    }

    /// Least admissible subset containing `s`.
    pub fn admissible_closure(&self, c: &Carrier, s: &Bitset) -> Bitset {
        match self {
            Monad::Downset => c.poset().down_closure(s),
            Monad::Ideal => {
                let l = c.lattice().expect("ideal closure needs a lattice");
                let mut cur = c.poset().down_closure(s);
                cur.insert(l.bottom());
                loop {
                    let mut next = cur.clone();
                    let elems: Vec<usize> = cur.iter().collect();
                    for &a in &elems {
                        for &b in &elems {
                            next.insert(l.join(a, b));
                        }
                    }
                    next = c.poset().down_closure(&next);
                    if next == cur {
                        return cur;
                    }
                    cur = next;
                }
            }
        }
    }

    /// All admissible subsets in canonical order, with a truncation flag.
    pub fn admissible_budgeted(
        &self,
        c: &Carrier,
        max: usize,
    ) -> Result<(Vec<Bitset>, bool), MonadError> {
        self.check_object(c)?;
        let (downsets, truncated) = c.poset().downsets_budgeted(max);
        let subsets = match self {
            Monad::Downset => downsets,
            Monad::Ideal => downsets
                .into_iter()
                .filter(|s| self.is_admissible(c, s))
                .collect(),
        };
        Ok((subsets, truncated))
    }

    /// Materializes `TX` with its unit. Errors if the budget is exceeded or
    /// a structural invariant fails (the total carrier must be a frame, the
    /// unit a hom of the base category, meets intersections, joins the
    /// appropriate closures of unions).
    pub fn apply_object(&self, base: CarrierRc, budget: &Budget) -> Result<MonadAssembly, MonadError> {
        let (subsets, truncated) = self.admissible_budgeted(&base, budget.max_subsets)?;
        if truncated {
            return Err(MonadError::BudgetExceeded {
                count: subsets.len(),
                budget: budget.max_subsets,
            });
        }
        let total = subset_lattice(&base, &subsets)?;
        let total = Carrier::Lattice(total).rc();
        let lat = total.lattice().unwrap();
        if !lat.is_distributive() {
            return Err(MonadError::Invariant(
                "total carrier is not a frame".to_string(),
            ));
        }
        let mut index = HashMap::new();
        for (i, s) in subsets.iter().enumerate() {
            index.insert(s.clone(), i);
        }
        // Meets are intersections; joins are admissible closures of unions.
        for i in 0..subsets.len() {
            for j in 0..subsets.len() {
                let m = lat.meet(i, j);
                if subsets[m] != subsets[i].intersection(&subsets[j]) {
                    return Err(MonadError::Invariant(
                        "meet on the total carrier is not intersection".to_string(),
                    ));
                }
                let jn = lat.join(i, j);
                let expect = self.admissible_closure(&base, &subsets[i].union(&subsets[j]));
                if subsets[jn] != expect {
                    return Err(MonadError::Invariant(
                        "join on the total carrier is not the closed union".to_string(),
                    ));
                }
            }
        }
        let unit_map: Result<Vec<usize>, MonadError> = (0..base.size())
            .map(|x| {
                index.get(base.poset().down_set(x)).copied().ok_or_else(|| {
                    MonadError::Invariant("principal subset missing from total".to_string())
                })
            })
            .collect();
        let unit = Hom::new(base.clone(), total.clone(), unit_map?, self.base_tag())
            .map_err(MonadError::Hom)?;
        let report = validate_hom_as(&unit, self.base_tag()).map_err(MonadError::Hom)?;
        if !report.is_empty() {
            return Err(MonadError::Invariant(format!(
                "unit is not a {} hom: {}",
                self.base_tag().name(),
                report[0].describe(&base)
            )));
        }
        Ok(MonadAssembly { monad: *self, base, total, subsets, index, unit })
    }

    /// Functor action on a hom of the base category.
    pub fn apply_hom(
        &self,
        f: &Hom,
        src: &MonadAssembly,
        tgt: &MonadAssembly,
    ) -> Result<Hom, MonadError> {
        let same = |a: &CarrierRc, b: &CarrierRc| std::sync::Arc::ptr_eq(a, b) || **a == **b;
        if !same(f.source(), &src.base) || !same(f.target(), &tgt.base) {
            return Err(MonadError::Invariant(
                "assemblies do not match the hom's endpoints".to_string(),
            ));
        }
        let report = validate_hom_as(f, self.base_tag()).map_err(MonadError::Hom)?;
        if !report.is_empty() {
            return Err(MonadError::InvalidHom(format!(
                "not a {} hom: {}",
                self.base_tag().name(),
                report[0].describe(f.source())
            )));
        }
        let mut map = Vec::with_capacity(src.size());
        for s in &src.subsets {
            let mut image = Bitset::empty(tgt.base.size());
            for x in s.iter() {
                image.insert(f.apply(x));
            }
            let closed = tgt.base.poset().down_closure(&image);
            if *self == Monad::Ideal && !s.is_empty() && !self.is_admissible(&tgt.base, &closed) {
                return Err(MonadError::Invariant(
                    "down-closed image of an ideal failed to be an ideal".to_string(),
                ));
            }
            let idx = tgt.index.get(&closed).copied().ok_or_else(|| {
                MonadError::Invariant("image subset missing from target total".to_string())
            })?;
            map.push(idx);
        }
        let lifted = Hom::new(src.total.clone(), tgt.total.clone(), map, CategoryTag::Frm)
            .map_err(MonadError::Hom)?;
        let report = validate_hom_as(&lifted, CategoryTag::Frm).map_err(MonadError::Hom)?;
        if !report.is_empty() {
            return Err(MonadError::Invariant(format!(
                "lifted hom is not a frame hom: {}",
                report[0].describe(&src.total)
            )));
        }
        Ok(lifted)
    }
}

/// `TX` for one object: the total carrier, the subset each element denotes,
/// and the unit. The subsets are the embedding data from which any higher
/// application is built on demand.
#[derive(Clone)]
pub struct MonadAssembly {
    pub monad: Monad,
    pub base: CarrierRc,
    pub total: CarrierRc,
    pub subsets: Vec<Bitset>,
    index: HashMap<Bitset, usize>,
    pub unit: Hom,
}

impl MonadAssembly {
    pub fn size(&self) -> usize {
        self.subsets.len()
    }

    pub fn subset(&self, i: usize) -> &Bitset {
        &self.subsets[i]
    }

    pub fn index_of(&self, s: &Bitset) -> Option<usize> {
        self.index.get(s).copied()
    }
}

fn subset_label(base: &Carrier, s: &Bitset) -> String {
    let parts: Vec<&str> = s.iter().map(|i| base.label(i)).collect();
    format!("{{{}}}", parts.join(","))
}

fn subset_lattice(base: &Carrier, subsets: &[Bitset]) -> Result<BoundedLattice, MonadError> {
    let k = subsets.len();
    let labels: Vec<String> = subsets.iter().map(|s| subset_label(base, s)).collect();
    let mut up = vec![Bitset::empty(k); k];
    for i in 0..k {
        for j in 0..k {
            if subsets[i].is_subset(&subsets[j]) {
                up[i].insert(j);
            }
        }
    }
    let poset = FinitePoset::from_up_rows(labels, up);
    BoundedLattice::from_poset(poset).map_err(MonadError::Order)
}

/// First and second application over one base, with the derived homs the
/// rest of the crate needs constantly.
#[derive(Clone)]
pub struct Assemblies {
    pub monad: Monad,
    pub base: CarrierRc,
    pub tx: MonadAssembly,
    pub ttx: MonadAssembly,
}

impl Assemblies {
    pub fn new(monad: Monad, base: CarrierRc, budget: &Budget) -> Result<Self, MonadError> {
        let tx = monad.apply_object(base.clone(), budget)?;
        let ttx = monad.apply_object(tx.total.clone(), budget)?;
        Ok(Assemblies { monad, base, tx, ttx })
    }

    /// `e : X → TX`.
    pub fn unit(&self) -> &Hom {
        &self.tx.unit
    }

    /// `e at TX : TX → TTX`.
    pub fn unit_total(&self) -> &Hom {
        &self.ttx.unit
    }

    /// `T e : TX → TTX`.
    pub fn lifted_unit(&self) -> Result<Hom, MonadError> {
        self.monad.apply_hom(&self.tx.unit, &self.tx, &self.ttx)
    }

    /// `m : TTX → TX`, union of denoted subsets. For the ideal monad the
    /// union of an ideal of ideals is checked to be an ideal, not assumed.
    pub fn mult(&self) -> Result<Hom, MonadError> {
        let mut map = Vec::with_capacity(self.ttx.size());
        for family in &self.ttx.subsets {
            let mut u = Bitset::empty(self.base.size());
            for d in family.iter() {
                u.union_with(&self.tx.subsets[d]);
            }
            if self.monad == Monad::Ideal
                && !family.is_empty()
                && !self.monad.is_admissible(&self.base, &u)
            {
                return Err(MonadError::Invariant(
                    "union of an ideal of ideals failed to be an ideal".to_string(),
                ));
            }
            let idx = self.tx.index_of(&u).ok_or_else(|| {
                MonadError::Invariant("union subset missing from total".to_string())
            })?;
            map.push(idx);
        }
        let m = Hom::new(
            self.ttx.total.clone(),
            self.tx.total.clone(),
            map,
            CategoryTag::Frm,
        )
        .map_err(MonadError::Hom)?;
        let report = validate_hom_as(&m, CategoryTag::Frm).map_err(MonadError::Hom)?;
        if !report.is_empty() {
            return Err(MonadError::Invariant(format!(
                "multiplication is not a frame hom: {}",
                report[0].describe(&self.ttx.total)
            )));
        }
        Ok(m)
    }

    /// Lifts a structure-style hom `TX → X` to `TTX → TX`.
    pub fn lift_structure(&self, a: &Hom) -> Result<Hom, MonadError> {
        self.monad.apply_hom(a, &self.ttx, &self.tx)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LawsReport {
    pub monad: &'static str,
    pub sizes: [usize; 2],
    pub unit_section: Equation,
    pub unit_lifted: Equation,
    pub assoc_enumerated: usize,
    pub assoc_truncated: bool,
    pub assoc_sampled: usize,
    pub violations: Vec<String>,
}

impl LawsReport {
    pub fn all_pass(&self) -> bool {
        self.unit_section.holds && self.unit_lifted.holds && self.violations.is_empty()
    }
}

/// Unit laws pointwise on all of `TX`; associativity pointwise on the
/// elements of the third application, enumerated in canonical order up to
/// the budget and pseudorandomly sampled (fixed seed) beyond it.
pub fn check_monad_laws(
    monad: Monad,
    base: CarrierRc,
    budget: &Budget,
) -> Result<LawsReport, MonadError> {
    let asms = Assemblies::new(monad, base, budget)?;
    let m = asms.mult()?;
    let unit_section = Equation::of_identity(
        "m · (e at TX) = 1",
        &compose(&m, asms.unit_total()).map_err(MonadError::Hom)?,
    );
    let te = asms.lifted_unit()?;
    let unit_lifted = Equation::of_identity(
        "m · T(e) = 1",
        &compose(&m, &te).map_err(MonadError::Hom)?,
    );

    let mut violations = Vec::new();
    let mut check_third_level = |family: &Bitset| -> Result<(), MonadError> {
        // family is an admissible subset of TTX. Left route: union it down
        // to one element of TTX, then multiply. Right route: multiply each
        // member, close the image in TX, then multiply.
        let mut u = Bitset::empty(asms.tx.size());
        for d in family.iter() {
            u.union_with(&asms.ttx.subsets[d]);
        }
        let left_mid = asms.ttx.index_of(&u).ok_or_else(|| {
            MonadError::Invariant("flattened family missing from second level".to_string())
        })?;
        let lhs = m.apply(left_mid);

        let mut image = Bitset::empty(asms.tx.size());
        for d in family.iter() {
            image.insert(m.apply(d));
        }
        let closed = monad.admissible_closure(&asms.tx.total, &image);
        let right_mid = asms.ttx.index_of(&closed).ok_or_else(|| {
            MonadError::Invariant("mapped family missing from second level".to_string())
        })?;
        let rhs = m.apply(right_mid);
        if lhs != rhs {
            violations.push(format!(
                "associativity fails on a third-level element over {}",
                asms.ttx.total.label(left_mid)
            ));
        }
        Ok(())
    };

    let (third, truncated) =
        monad.admissible_budgeted(&asms.ttx.total, budget.max_subsets)?;
    let enumerated = third.len();
    for family in &third {
        check_third_level(family)?;
    }
    let mut sampled = 0;
    if truncated {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let universe = asms.ttx.size();
        for _ in 0..budget.samples {
            let mut raw = Bitset::empty(universe);
            for i in 0..universe {
                if rng.next_u32() & 1 == 1 {
                    raw.insert(i);
                }
            }
            let family = monad.admissible_closure(&asms.ttx.total, &raw);
            check_third_level(&family)?;
            sampled += 1;
        }
    }

    Ok(LawsReport {
        monad: monad.name(),
        sizes: [asms.tx.size(), asms.ttx.size()],
        unit_section,
        unit_lifted,
        assoc_enumerated: enumerated,
        assoc_truncated: truncated,
        assoc_sampled: sampled,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LaxReport {
    pub monad: &'static str,
    pub holds: bool,
    pub pointwise_equal: bool,
    pub witness: Option<String>,
}

/// `T(e)(t) ⊆ (e at TX)(t)` for every `t` in `TX`; also records whether the
/// two maps coincide (they do for the ideal monad on finite carriers).
pub fn check_lax_idempotent(
    monad: Monad,
    base: CarrierRc,
    budget: &Budget,
) -> Result<LaxReport, MonadError> {
    let asms = Assemblies::new(monad, base, budget)?;
    lax_of_assemblies(&asms)
}

pub fn lax_of_assemblies(asms: &Assemblies) -> Result<LaxReport, MonadError> {
    let te = asms.lifted_unit()?;
    let e_tx = asms.unit_total();
    let mut holds = true;
    let mut equal = true;
    let mut witness = None;
    for t in 0..asms.tx.size() {
        let (a, b) = (te.apply(t), e_tx.apply(t));
        if a != b {
            equal = false;
        }
        if !asms.ttx.total.leq(a, b) {
            holds = false;
            witness = Some(asms.tx.total.label(t).to_string());
            break;
        }
    }
    Ok(LaxReport {
        monad: asms.monad.name(),
        holds,
        pointwise_equal: holds && equal,
        witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionCheck {
    pub map: Vec<usize>,
    pub adjoint_to_unit: bool,
    pub satisfies_algebra_laws: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointChainReport {
    pub monad: &'static str,
    pub lax: bool,
    pub lifted_unit_adjoint_mult: bool,
    pub mult_adjoint_unit: bool,
    pub conditions_agree: bool,
    pub sections: Vec<SectionCheck>,
}

impl AdjointChainReport {
    pub fn all_pass(&self) -> bool {
        self.lax
            && self.lifted_unit_adjoint_mult
            && self.mult_adjoint_unit
            && self.conditions_agree
            && self
                .sections
                .iter()
                .all(|s| s.adjoint_to_unit && s.satisfies_algebra_laws)
    }
}

/// Verifies the three equivalent conditions (`T(e) ≤ e at TX`, `T(e) ⊣ m`,
/// `m ⊣ e at TX`) individually, and their consequence for structures:
/// every hom `a : TX → X` of the base category with `a·e = 1` is adjoint
/// to the unit and makes the carrier an algebra. Sections are found by
/// exhaustive search; with no section the consequence is vacuous.
pub fn check_adjoint_chain(
    monad: Monad,
    base: CarrierRc,
    budget: &Budget,
) -> Result<AdjointChainReport, MonadError> {
    let asms = Assemblies::new(monad, base.clone(), budget)?;
    let lax = lax_of_assemblies(&asms)?.holds;
    let te = asms.lifted_unit()?;
    let m = asms.mult()?;
    let cond2 = check_adjoint(&te, &m).map_err(MonadError::Hom)?;
    let cond3 = check_adjoint(&m, asms.unit_total()).map_err(MonadError::Hom)?;

    let mut search = HomSearch::new(asms.tx.total.clone(), base.clone(), monad.base_tag());
    for x in 0..base.size() {
        search = search.pin(asms.unit().apply(x), x);
    }
    let mut sections = Vec::new();
    for a in search.collect_all() {
        let adjoint_to_unit = check_adjoint(&a, asms.unit()).map_err(MonadError::Hom)?;
        let ta = asms.lift_structure(&a)?;
        let lhs = compose(&a, &ta).map_err(MonadError::Hom)?;
        let rhs = compose(&a, &m).map_err(MonadError::Hom)?;
        let unit_law = compose(&a, asms.unit()).map_err(MonadError::Hom)?.is_identity();
        sections.push(SectionCheck {
            map: a.map().to_vec(),
            adjoint_to_unit,
            satisfies_algebra_laws: unit_law && lhs.same_map(&rhs),
        });
    }

    Ok(AdjointChainReport {
        monad: monad.name(),
        lax,
        lifted_unit_adjoint_mult: cond2,
        mult_adjoint_unit: cond3,
        conditions_agree: lax == cond2 && cond2 == cond3,
        sections,
    })
}

/// Sizes of iterated applications, order-only (no tables), for exploration.
pub fn iterate_sizes(
    monad: Monad,
    base: &Carrier,
    steps: usize,
    budget: &Budget,
) -> Result<Vec<usize>, MonadError> {
    monad.check_object(base)?;
    let mut sizes = Vec::new();
    let mut current: Carrier = base.clone();
    for _ in 0..steps {
        let (subsets, truncated) = monad.admissible_budgeted(&current, budget.max_subsets)?;
        if truncated {
            return Err(MonadError::BudgetExceeded {
                count: subsets.len(),
                budget: budget.max_subsets,
            });
        }
        sizes.push(subsets.len());
        let next = subset_lattice(&current, &subsets)?;
        current = Carrier::Lattice(next);
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn downset_on_singleton_is_two_chain() {
        let one = corpus::chain(1);
        let asm = Monad::Downset.apply_object(one, &budget()).unwrap();
        assert_eq!(asm.size(), 2);
        assert_eq!(asm.unit.apply(0), 1);
    }

    #[test]
    fn downset_on_diamond_has_six_elements() {
        let asm = Monad::Downset.apply_object(corpus::diamond(), &budget()).unwrap();
        assert_eq!(asm.size(), 6);
    }

    #[test]
    fn ideal_on_distributive_collapses_to_base() {
        for c in [corpus::chain(3), corpus::diamond(), corpus::cube()] {
            let asm = Monad::Ideal.apply_object(c.clone(), &budget()).unwrap();
            assert_eq!(asm.size(), c.size());
            // Unit is an isomorphism onto the total carrier.
            assert!(asm.unit.order_isomorphism().is_some());
            assert!(crate::iso::are_isomorphic(&c, &asm.total).is_some());
        }
    }

    #[test]
    fn ideal_rejects_non_distributive() {
        let r = Monad::Ideal.apply_object(corpus::m3(), &budget());
        assert!(matches!(r, Err(MonadError::WrongKind { .. })));
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let r = Monad::Downset.apply_object(corpus::m3(), &Budget::with_max(4));
        assert!(matches!(r, Err(MonadError::BudgetExceeded { .. })));
    }

    #[test]
    fn functor_identity_law() {
        let c = corpus::chain(3);
        let asm = Monad::Downset.apply_object(c.clone(), &budget()).unwrap();
        let id = Hom::identity(c, CategoryTag::MLat);
        let lifted = Monad::Downset.apply_hom(&id, &asm, &asm).unwrap();
        assert!(lifted.is_identity());
    }

    #[test]
    fn functor_action_on_skip_middle_embedding() {
        let c2 = corpus::chain(2);
        let c3 = corpus::chain(3);
        let f = Hom::new(c2.clone(), c3.clone(), vec![0, 2], CategoryTag::MLat).unwrap();
        let a2 = Monad::Downset.apply_object(c2, &budget()).unwrap();
        let a3 = Monad::Downset.apply_object(c3.clone(), &budget()).unwrap();
        let tf = Monad::Downset.apply_hom(&f, &a2, &a3).unwrap();
        // Elementwise oracle: the image of each downset, down-closed.
        for (i, s) in a2.subsets.iter().enumerate() {
            let mut img = Bitset::empty(3);
            for x in s.iter() {
                img.insert(f.apply(x));
            }
            let expected = c3.poset().down_closure(&img);
            assert_eq!(a3.subset(tf.apply(i)), &expected);
        }
        // The full downset {0,1} maps to the full downset {0,m,1}.
        let full2 = a2.index_of(&Bitset::full(2)).unwrap();
        assert_eq!(a3.subset(tf.apply(full2)), &Bitset::full(3));
    }

    #[test]
    fn mult_on_two_chain_matches_union_oracle() {
        let asms = Assemblies::new(Monad::Downset, corpus::chain(2), &budget()).unwrap();
        let m = asms.mult().unwrap();
        // The element {∅, {0}} of TTX maps to {0}.
        let mut fam = Bitset::empty(asms.tx.size());
        let empty_idx = asms.tx.index_of(&Bitset::empty(2)).unwrap();
        let zero_idx = asms.tx.index_of(&Bitset::from_indices(2, &[0])).unwrap();
        fam.insert(empty_idx);
        fam.insert(zero_idx);
        let fam_idx = asms.ttx.index_of(&fam).unwrap();
        assert_eq!(m.apply(fam_idx), zero_idx);
    }

    #[test]
    fn monad_laws_on_two_chain_with_full_third_level() {
        let report = check_monad_laws(Monad::Downset, corpus::chain(2), &budget()).unwrap();
        assert!(report.all_pass());
        assert!(!report.assoc_truncated);
        // Chain downsets are chains one longer: sizes 3, 4 and third level 5.
        assert_eq!(report.sizes, [3, 4]);
        assert_eq!(report.assoc_enumerated, 5);
    }

    #[test]
    fn monad_laws_survive_budget_sampling() {
        // The budget admits TX (3) and TTX (4) but not the 5-element third
        // level, so the associativity check falls back to sampling.
        let tight = Budget { max_subsets: 4, seed: DEFAULT_SAMPLE_SEED, samples: 64 };
        let report = check_monad_laws(Monad::Downset, corpus::chain(2), &tight).unwrap();
        assert!(report.all_pass());
        assert!(report.assoc_truncated);
        assert_eq!(report.assoc_sampled, 64);
    }

    #[test]
    fn lax_idempotency_with_equality_for_ideal() {
        let r = check_lax_idempotent(Monad::Ideal, corpus::diamond(), &budget()).unwrap();
        assert!(r.holds && r.pointwise_equal);
        let r = check_lax_idempotent(Monad::Downset, corpus::diamond(), &budget()).unwrap();
        assert!(r.holds);
        assert!(!r.pointwise_equal);
    }

    #[test]
    fn adjoint_chain_on_three_chain() {
        let r = check_adjoint_chain(Monad::Downset, corpus::chain(3), &budget()).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.sections.len(), 1);
    }

    #[test]
    fn adjoint_chain_on_m3_finds_no_section() {
        let r = check_adjoint_chain(Monad::Downset, corpus::m3(), &budget()).unwrap();
        assert!(r.lax && r.conditions_agree);
        assert!(r.sections.is_empty());
    }

    #[test]
    fn downset_chain_sizes() {
        for n in 1..=6 {
            let asm = Monad::Downset.apply_object(corpus::chain(n), &budget()).unwrap();
            assert_eq!(asm.size(), n + 1);
        }
    }

    #[test]
    fn one_element_laws_fully_enumerated_for_both_monads() {
        for monad in [Monad::Downset, Monad::Ideal] {
            let report = check_monad_laws(monad, corpus::chain(1), &budget()).unwrap();
            assert!(report.all_pass());
            assert!(!report.assoc_truncated);
        }
    }

    #[test]
    fn ideal_applications_all_collapse_to_the_base() {
        for c in [corpus::chain(4), corpus::diamond()] {
            let asms = Assemblies::new(Monad::Ideal, c.clone(), &budget()).unwrap();
            assert!(crate::iso::are_isomorphic(&c, &asms.tx.total).is_some());
            assert!(crate::iso::are_isomorphic(&c, &asms.ttx.total).is_some());
            let (third, truncated) = Monad::Ideal
                .admissible_budgeted(&asms.ttx.total, budget().max_subsets)
                .unwrap();
            assert!(!truncated);
            assert_eq!(third.len(), c.size());
        }
    }

    #[test]
    fn iterate_sizes_on_chain() {
        let sizes = iterate_sizes(Monad::Downset, &corpus::chain(2), 3, &budget()).unwrap();
        assert_eq!(sizes, vec![3, 4, 5]);
    }
}
