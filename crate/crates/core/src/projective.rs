//! Projectivity of algebras: coalgebra-structure existence, retract-of-free
//! search, and the lifting property against structure maps, which must agree
//! three ways.

use serde::Serialize;

use crate::error::MonadError;
use crate::hom::{compose, Equation, Hom};
use crate::monad::Budget;
use crate::search::HomSearch;
use crate::tower::{build_coalgebra, AlgebraWitness, Build, Refusal};

#[derive(Clone)]
pub struct CoalgebraDecision {
    pub has: bool,
    pub refusal: Option<Refusal>,
    /// Valid costructures found by exhaustive search on small carriers;
    /// confirms that no alternative exists when the canonical one fails.
    pub alternatives: Option<usize>,
}

pub fn has_coalgebra_structure(
    w: &AlgebraWitness,
    budget: &Budget,
) -> Result<CoalgebraDecision, MonadError> {
    match build_coalgebra(w, budget)? {
        Build::Built(cw) => Ok(CoalgebraDecision {
            has: true,
            refusal: None,
            alternatives: cw.alternatives,
        }),
        Build::Refused(refusal) => Ok(CoalgebraDecision {
            has: false,
            alternatives: if w.base().size() <= crate::tower::UNIQUENESS_SEARCH_LIMIT {
                Some(0)
            } else {
                None
            },
            refusal: Some(refusal),
        }),
    }
}

/// A retraction exhibiting the algebra as a retract of the free algebra on
/// its own carrier: `p·s = 1` with both maps algebra morphisms.
#[derive(Clone)]
pub struct RetractionWitness {
    pub section: Hom,
    pub retraction: Hom,
    pub canonical: bool,
    pub evidence: Vec<Equation>,
}

/// Tries the canonical candidate `(s, p) = (c, a)` first; otherwise searches
/// base-category sections of the structure that are algebra morphisms, in
/// canonical order, examining at most `search_cap` candidates.
pub fn find_retraction(
    w: &AlgebraWitness,
    budget: &Budget,
    search_cap: usize,
) -> Result<Option<RetractionWitness>, MonadError> {
    let monad = w.monad();
    let canonical = match build_coalgebra(w, budget)? {
        Build::Built(cw) => Some(cw.costructure),
        Build::Refused(_) => None,
    };
    let (section, canonical_used) = match canonical {
        Some(c) => (Some(c), true),
        None => {
            // Exhaustive fallback: sections s with a·s = 1 that satisfy the
            // algebra-morphism square s·a = m·T(s).
            let base = w.base().clone();
            let mut search =
                HomSearch::new(base.clone(), w.asm.tx.total.clone(), monad.base_tag());
            for x in 0..base.size() {
                let fiber: Vec<usize> = (0..w.asm.tx.size())
                    .filter(|&t| w.structure.apply(t) == x)
                    .collect();
                search = search.restrict(x, fiber);
            }
            let mut found = None;
            let mut seen = 0usize;
            search.for_each(|cand| {
                seen += 1;
                let ok = (|| -> Result<bool, MonadError> {
                    let ts = monad.apply_hom(&cand, &w.asm.tx, &w.asm.ttx)?;
                    Ok(compose(&cand, &w.structure)
                        .map_err(MonadError::Hom)?
                        .same_map(&compose(&w.mult, &ts).map_err(MonadError::Hom)?))
                })()
                .unwrap_or(false);
                if ok {
                    found = Some(cand);
                    return std::ops::ControlFlow::Break(());
                }
                if seen >= search_cap {
                    return std::ops::ControlFlow::Break(());
                }
                std::ops::ControlFlow::Continue(())
            });
            (found, false)
        }
    };
    let section = match section {
        Some(s) => s,
        None => return Ok(None),
    };
    let retraction = w.structure.clone();
    let ts = monad.apply_hom(&section, &w.asm.tx, &w.asm.ttx)?;
    let evidence = vec![
        Equation::of_identity(
            "p·s = 1",
            &compose(&retraction, &section).map_err(MonadError::Hom)?,
        ),
        Equation::of_homs(
            "s·a = m·T(s)",
            &compose(&section, &w.structure).map_err(MonadError::Hom)?,
            &compose(&w.mult, &ts).map_err(MonadError::Hom)?,
        ),
        Equation::of_homs(
            "p·m = a·T(p)",
            &compose(&retraction, &w.mult).map_err(MonadError::Hom)?,
            &compose(&w.structure, &w.lifted_structure).map_err(MonadError::Hom)?,
        ),
    ];
    if evidence.iter().any(|e| !e.holds) {
        return Err(MonadError::Invariant(
            "retraction witness failed its own evidence".to_string(),
        ));
    }
    Ok(Some(RetractionWitness {
        section,
        retraction,
        canonical: canonical_used,
        evidence,
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftingReport {
    pub morphisms_checked: usize,
    pub lifted: usize,
    pub failures: Vec<String>,
}

impl LiftingReport {
    pub fn all_lift(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every algebra `(A, α)` in the family and every algebra morphism
/// `g : X → A`, looks for a lift `h : X → TA` with `α·h = g` that is itself
/// an algebra morphism. Morphism enumeration is exhaustive.
pub fn lifting_property(
    w: &AlgebraWitness,
    family: &[(String, AlgebraWitness)],
    _budget: &Budget,
) -> Result<LiftingReport, MonadError> {
    let monad = w.monad();
    let mut checked = 0;
    let mut lifted = 0;
    let mut failures = Vec::new();
    for (name, target) in family {
        let candidates = HomSearch::new(
            w.base().clone(),
            target.base().clone(),
            monad.base_tag(),
        )
        .collect_all();
        for g in candidates {
            let tg = monad.apply_hom(&g, &w.asm.tx, &target.asm.tx)?;
            let is_algebra_morphism = compose(&g, &w.structure)
                .map_err(MonadError::Hom)?
                .same_map(&compose(&target.structure, &tg).map_err(MonadError::Hom)?);
            if !is_algebra_morphism {
                continue;
            }
            checked += 1;
            let mut lift_search = HomSearch::new(
                w.base().clone(),
                target.asm.tx.total.clone(),
                monad.base_tag(),
            );
            for x in 0..w.base().size() {
                let fiber: Vec<usize> = (0..target.asm.tx.size())
                    .filter(|&t| target.structure.apply(t) == g.apply(x))
                    .collect();
                lift_search = lift_search.restrict(x, fiber);
            }
            let mut found = false;
            lift_search.for_each(|h| {
                let ok = (|| -> Result<bool, MonadError> {
                    let th = monad.apply_hom(&h, &w.asm.tx, &target.asm.ttx)?;
                    Ok(compose(&h, &w.structure)
                        .map_err(MonadError::Hom)?
                        .same_map(&compose(&target.mult, &th).map_err(MonadError::Hom)?))
                })()
                .unwrap_or(false);
                if ok {
                    found = true;
                    std::ops::ControlFlow::Break(())
                } else {
                    std::ops::ControlFlow::Continue(())
                }
            });
            if found {
                lifted += 1;
            } else {
                failures.push(format!(
                    "no lift for a morphism into {name} sending bottom to {}",
                    target.base().label(g.apply(
                        w.base().lattice().map(|l| l.bottom()).unwrap_or(0)
                    ))
                ));
            }
        }
    }
    Ok(LiftingReport { morphisms_checked: checked, lifted, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::monad::Monad;
    use crate::tower::build_algebra;

    fn budget() -> Budget {
        Budget::default()
    }

    fn algebra(monad: Monad, base: crate::lattice::CarrierRc) -> AlgebraWitness {
        build_algebra(monad, base, &budget()).unwrap().built().unwrap()
    }

    fn family(monad: Monad, max: usize) -> Vec<(String, AlgebraWitness)> {
        corpus::distributive_lattices_up_to(max)
            .into_iter()
            .filter_map(|e| {
                build_algebra(monad, e.carrier.clone(), &budget())
                    .unwrap()
                    .built()
                    .map(|w| (e.name, w))
            })
            .collect()
    }

    #[test]
    fn three_chain_is_projective_for_downsets() {
        let w = algebra(Monad::Downset, corpus::chain(3));
        let d = has_coalgebra_structure(&w, &budget()).unwrap();
        assert!(d.has);
        assert_eq!(d.alternatives, Some(1));
        let r = find_retraction(&w, &budget(), 100_000).unwrap().unwrap();
        assert!(r.canonical);
        let fam = family(Monad::Downset, 4);
        let l = lifting_property(&w, &fam, &budget()).unwrap();
        assert!(l.all_lift());
        assert!(l.morphisms_checked > 0);
    }

    #[test]
    fn diamond_is_not_projective_for_downsets() {
        let w = algebra(Monad::Downset, corpus::diamond());
        let d = has_coalgebra_structure(&w, &budget()).unwrap();
        assert!(!d.has);
        assert_eq!(d.alternatives, Some(0));
        let r = find_retraction(&w, &budget(), 100_000).unwrap();
        assert!(r.is_none());
        let fam = family(Monad::Downset, 4);
        let l = lifting_property(&w, &fam, &budget()).unwrap();
        assert!(!l.all_lift());
    }

    #[test]
    fn everything_is_projective_for_ideals() {
        for c in [corpus::chain(1), corpus::chain(3), corpus::diamond()] {
            let w = algebra(Monad::Ideal, c);
            assert!(has_coalgebra_structure(&w, &budget()).unwrap().has);
            assert!(find_retraction(&w, &budget(), 100_000).unwrap().is_some());
        }
    }

    #[test]
    fn tampered_section_is_rejected() {
        // A section that is not an algebra morphism must not be accepted:
        // the fallback search on the diamond examines all sections and
        // rejects every one.
        let w = algebra(Monad::Downset, corpus::diamond());
        let r = find_retraction(&w, &budget(), usize::MAX).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn free_algebras_pass_all_three() {
        let free = Monad::Downset.apply_object(corpus::diamond(), &budget()).unwrap().total;
        let w = algebra(Monad::Downset, free);
        assert!(has_coalgebra_structure(&w, &budget()).unwrap().has);
        assert!(find_retraction(&w, &budget(), 100_000).unwrap().is_some());
        let fam = family(Monad::Downset, 4);
        let l = lifting_property(&w, &fam, &budget()).unwrap();
        assert!(l.all_lift());
    }
}
