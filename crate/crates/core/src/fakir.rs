//! The idempotent approximation of a monad: the sub-functor carved out of
//! the first application by equalizing the two ways of doubling the unit.
//! On both monads here the first step is already essentially the identity
//! monad, which is what the checks certify.

use crate::error::MonadError;
use crate::hom::{compose, Equation, Hom};
use crate::lattice::{sub_lattice, Carrier, CarrierRc};
use crate::monad::{Assemblies, Budget, Monad};
use crate::tower::{AlgebraWitness, Orientation, SplitDiagram};

/// The approximation at one object: the equalizer sub-carrier of
/// `(T(e), e at TX)` inside `TX`, with the corestricted unit and the
/// inclusion.
#[derive(Clone)]
pub struct FakirAssembly {
    pub asm: Assemblies,
    /// Indices of `TX` elements in the equalizer, ascending.
    pub sub_indices: Vec<usize>,
    /// The sub-carrier itself, re-validated as a lattice.
    pub carrier: CarrierRc,
    /// `φ : T^φX → TX`.
    pub inclusion: Hom,
    /// `e^φ : X → T^φX`.
    pub unit: Hom,
    pub evidence: Vec<Equation>,
}

/// Computes the equalizer sub-carrier elementwise and validates closure
/// under the base category's operations, the corestricted unit, and the
/// defining equation `φ·e^φ = e`.
pub fn fakir_object(monad: Monad, base: CarrierRc, budget: &Budget) -> Result<FakirAssembly, MonadError> {
    let asm = Assemblies::new(monad, base.clone(), budget)?;
    let te = asm.lifted_unit()?;
    let e_tx = asm.unit_total();
    let sub_indices: Vec<usize> = (0..asm.tx.size())
        .filter(|&t| te.apply(t) == e_tx.apply(t))
        .collect();
    if sub_indices.is_empty() {
        return Err(MonadError::Invariant("equalizer sub-carrier is empty".to_string()));
    }
    let total_lat = asm.tx.total.lattice().expect("total carrier is a lattice");
    for &i in &sub_indices {
        for &j in &sub_indices {
            if sub_indices.binary_search(&total_lat.meet(i, j)).is_err() {
                return Err(MonadError::Invariant(
                    "equalizer sub-carrier is not meet-closed".to_string(),
                ));
            }
            if monad == Monad::Ideal
                && sub_indices.binary_search(&total_lat.join(i, j)).is_err()
            {
                return Err(MonadError::Invariant(
                    "equalizer sub-carrier is not join-closed".to_string(),
                ));
            }
        }
    }
    if sub_indices.binary_search(&total_lat.top()).is_err() {
        return Err(MonadError::Invariant("equalizer sub-carrier lacks the top".to_string()));
    }
    let carrier =
        Carrier::Lattice(sub_lattice(total_lat, &sub_indices).map_err(MonadError::Order)?).rc();
    let inclusion = Hom::new(
        carrier.clone(),
        asm.tx.total.clone(),
        sub_indices.clone(),
        monad.base_tag(),
    )
    .map_err(MonadError::Hom)?;
    let mut unit_map = Vec::with_capacity(base.size());
    for x in 0..base.size() {
        let pos = sub_indices
            .binary_search(&asm.unit().apply(x))
            .map_err(|_| MonadError::Invariant("unit image escapes the equalizer".to_string()))?;
        unit_map.push(pos);
    }
    let unit = Hom::new(base.clone(), carrier.clone(), unit_map, monad.base_tag())
        .map_err(MonadError::Hom)?;
    let evidence = vec![Equation::of_homs(
        "φ·e^φ = e",
        &compose(&inclusion, &unit).map_err(MonadError::Hom)?,
        asm.unit(),
    )];
    Ok(FakirAssembly { asm, sub_indices, carrier, inclusion, unit, evidence })
}

/// Restriction of the lifted hom to the approximation sub-carriers.
/// Functorial by construction; tests check identity and composites.
pub fn phi_functor_with(
    src: &FakirAssembly,
    tgt: &FakirAssembly,
    f: &Hom,
) -> Result<Hom, MonadError> {
    let monad = src.asm.monad;
    let tf = monad.apply_hom(f, &src.asm.tx, &tgt.asm.tx)?;
    let mut map = Vec::with_capacity(src.sub_indices.len());
    for &i in &src.sub_indices {
        let v = tf.apply(i);
        let pos = tgt.sub_indices.binary_search(&v).map_err(|_| {
            MonadError::Invariant("lifted hom escapes the equalizer sub-carrier".to_string())
        })?;
        map.push(pos);
    }
    Hom::new(src.carrier.clone(), tgt.carrier.clone(), map, monad.base_tag())
        .map_err(MonadError::Hom)
}

pub fn phi_functor(monad: Monad, f: &Hom, budget: &Budget) -> Result<Hom, MonadError> {
    let src = fakir_object(monad, f.source().clone(), budget)?;
    let tgt = fakir_object(monad, f.target().clone(), budget)?;
    phi_functor_with(&src, &tgt, f)
}

/// The approximation's multiplication at one object, computed by mapping the
/// second-level equalizer through the double inclusion and multiplying, then
/// corestricting. Returns the second-level assembly and the multiplication.
pub fn fakir_mult(
    fa: &FakirAssembly,
    budget: &Budget,
) -> Result<(FakirAssembly, Hom), MonadError> {
    let monad = fa.asm.monad;
    let fa2 = fakir_object(monad, fa.carrier.clone(), budget)?;
    // (φ∘φ) = T(φ) · φ at the sub-carrier level.
    let t_phi = monad.apply_hom(&fa.inclusion, &fa2.asm.tx, &fa.asm.ttx)?;
    let double = compose(&t_phi, &fa2.inclusion).map_err(MonadError::Hom)?;
    let m = fa.asm.mult()?;
    let through = compose(&m, &double).map_err(MonadError::Hom)?;
    let mut map = Vec::with_capacity(fa2.carrier.size());
    for i in 0..fa2.carrier.size() {
        let v = through.apply(i);
        let pos = fa.sub_indices.binary_search(&v).map_err(|_| {
            MonadError::Invariant("approximation multiplication escapes the equalizer".to_string())
        })?;
        map.push(pos);
    }
    let mphi = Hom::new(fa2.carrier.clone(), fa.carrier.clone(), map, monad.base_tag())
        .map_err(MonadError::Hom)?;
    Ok((fa2, mphi))
}

/// Is the corestricted unit an isomorphism? Returns the inverse.
pub fn check_unit_iso(fa: &FakirAssembly) -> Option<Hom> {
    fa.unit.order_isomorphism()
}

/// Is `T(e^φ) : TX → T(T^φX)` an isomorphism? This is the idempotency
/// criterion for the approximation.
pub fn check_lifted_unit_iso(fa: &FakirAssembly, budget: &Budget) -> Result<Option<Hom>, MonadError> {
    let monad = fa.asm.monad;
    let over_sub = monad.apply_object(fa.carrier.clone(), budget)?;
    let lifted = monad.apply_hom(&fa.unit, &fa.asm.tx, &over_sub)?;
    Ok(lifted.order_isomorphism())
}

/// Monad laws for the approximation `(T^φ, m^φ, e^φ)` at one object:
/// both unit laws and associativity, plus the defining equations.
pub fn fakir_monad_laws(
    monad: Monad,
    base: CarrierRc,
    budget: &Budget,
) -> Result<Vec<Equation>, MonadError> {
    let fa1 = fakir_object(monad, base, budget)?;
    let (fa2, m1) = fakir_mult(&fa1, budget)?;
    let (fa3, m2) = fakir_mult(&fa2, budget)?;
    let mut eqs = fa1.evidence.clone();

    // Defining equation of the multiplication.
    let t_phi = monad.apply_hom(&fa1.inclusion, &fa2.asm.tx, &fa1.asm.ttx)?;
    let double = compose(&t_phi, &fa2.inclusion).map_err(MonadError::Hom)?;
    eqs.push(Equation::of_homs(
        "φ·m^φ = m·(φ∘φ)",
        &compose(&fa1.inclusion, &m1).map_err(MonadError::Hom)?,
        &compose(&fa1.asm.mult()?, &double).map_err(MonadError::Hom)?,
    ));

    eqs.push(Equation::of_identity(
        "m^φ·e^φ(T^φ) = 1",
        &compose(&m1, &fa2.unit).map_err(MonadError::Hom)?,
    ));
    let tphi_unit = phi_functor_with(&fa1, &fa2, &fa1.unit)?;
    eqs.push(Equation::of_identity(
        "m^φ·T^φ(e^φ) = 1",
        &compose(&m1, &tphi_unit).map_err(MonadError::Hom)?,
    ));
    let tphi_m1 = phi_functor_with(&fa3, &fa2, &m1)?;
    eqs.push(Equation::of_homs(
        "m^φ·m^φ(T^φ) = m^φ·T^φ(m^φ)",
        &compose(&m1, &m2).map_err(MonadError::Hom)?,
        &compose(&m1, &tphi_m1).map_err(MonadError::Hom)?,
    ));
    Ok(eqs)
}

/// For an algebra, the split equalizer `X →e TX ⇉(T(e), e at TX) TTX`
/// retracted by `a` and `T(a)`; its verification forces the corestricted
/// unit to be an isomorphism, which is checked alongside.
pub fn fixes_algebras(
    w: &AlgebraWitness,
    budget: &Budget,
) -> Result<Vec<Equation>, MonadError> {
    let d = SplitDiagram {
        orientation: Orientation::Equalizer,
        f: w.asm.lifted_unit()?,
        g: w.asm.unit_total().clone(),
        t: w.lifted_structure.clone(),
        q: w.asm.unit().clone(),
        s: w.structure.clone(),
    };
    let mut eqs = d.equations();
    let fa = fakir_object(w.monad(), w.base().clone(), budget)?;
    eqs.push(Equation::of_bool(
        "corestricted unit is an isomorphism",
        check_unit_iso(&fa).is_some(),
        None,
    ));
    eqs.push(Equation::of_bool(
        "equalizer sub-carrier is exactly the unit image",
        fa.sub_indices.len() == w.base().size(),
        None,
    ));
    Ok(eqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::hom::all_hold;
    use crate::iso::are_isomorphic;
    use crate::tower::{build_algebra, Build};

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn downset_approximation_is_the_principal_downsets() {
        let fa = fakir_object(Monad::Downset, corpus::chain(2), &budget()).unwrap();
        // Exactly the principal downsets: the carrier is isomorphic to the
        // base, and the empty downset is excluded.
        assert_eq!(fa.sub_indices.len(), 2);
        assert!(are_isomorphic(&fa.carrier, &corpus::chain(2)).is_some());
        assert!(check_unit_iso(&fa).is_some());
        assert!(all_hold(&fa.evidence));
        let empty_index = fa.asm.tx.index_of(&crate::bitset::Bitset::empty(2)).unwrap();
        assert!(!fa.sub_indices.contains(&empty_index));
    }

    #[test]
    fn ideal_approximation_is_everything() {
        let fa = fakir_object(Monad::Ideal, corpus::diamond(), &budget()).unwrap();
        assert_eq!(fa.sub_indices.len(), fa.asm.tx.size());
        assert!(check_unit_iso(&fa).is_some());
    }

    #[test]
    fn singleton_approximation_is_the_singleton() {
        let fa = fakir_object(Monad::Downset, corpus::chain(1), &budget()).unwrap();
        assert!(are_isomorphic(&fa.carrier, &corpus::chain(1)).is_some());
    }

    #[test]
    fn lifted_unit_iso_on_small_corpus() {
        for c in [corpus::chain(3), corpus::diamond(), corpus::m3()] {
            let fa = fakir_object(Monad::Downset, c, &budget()).unwrap();
            assert!(check_lifted_unit_iso(&fa, &budget()).unwrap().is_some());
        }
    }

    #[test]
    fn unit_iso_at_free_carriers() {
        // The corestricted unit is an isomorphism at free carriers even
        // when the base is not an algebra.
        for base in [corpus::m3(), corpus::n5()] {
            let free = Monad::Downset.apply_object(base, &budget()).unwrap().total;
            let fa = fakir_object(Monad::Downset, free, &budget()).unwrap();
            assert!(check_unit_iso(&fa).is_some());
        }
    }

    #[test]
    fn approximation_monad_laws_hold() {
        for c in [corpus::chain(3), corpus::m3()] {
            let eqs = fakir_monad_laws(Monad::Downset, c, &budget()).unwrap();
            assert!(all_hold(&eqs), "{eqs:?}");
        }
        let eqs = fakir_monad_laws(Monad::Ideal, corpus::diamond(), &budget()).unwrap();
        assert!(all_hold(&eqs));
    }

    #[test]
    fn phi_preserves_identity_and_composition() {
        let c2 = corpus::chain(2);
        let c3 = corpus::chain(3);
        let id = Hom::identity(c3.clone(), Monad::Downset.base_tag());
        assert!(phi_functor(Monad::Downset, &id, &budget()).unwrap().is_identity());
        let f = Hom::new(c2.clone(), c3.clone(), vec![0, 2], Monad::Downset.base_tag()).unwrap();
        let g = Hom::new(c3.clone(), c2.clone(), vec![0, 0, 1], Monad::Downset.base_tag()).unwrap();
        let gf = compose(&g, &f).unwrap();
        let phi_f = phi_functor(Monad::Downset, &f, &budget()).unwrap();
        let phi_g = phi_functor(Monad::Downset, &g, &budget()).unwrap();
        let phi_gf = phi_functor(Monad::Downset, &gf, &budget()).unwrap();
        assert!(phi_gf.same_map(&compose(&phi_g, &phi_f).unwrap()));
    }

    #[test]
    fn phi_of_embedding_matches_the_map_under_unit_iso() {
        let c2 = corpus::chain(2);
        let c3 = corpus::chain(3);
        let f = Hom::new(c2.clone(), c3.clone(), vec![0, 2], Monad::Downset.base_tag()).unwrap();
        let src = fakir_object(Monad::Downset, c2.clone(), &budget()).unwrap();
        let tgt = fakir_object(Monad::Downset, c3.clone(), &budget()).unwrap();
        let phi_f = phi_functor_with(&src, &tgt, &f).unwrap();
        let via = compose(
            &phi_f,
            &src.unit,
        )
        .unwrap();
        let other = compose(&tgt.unit, &f).unwrap();
        assert!(via.same_map(&other));
    }

    #[test]
    fn fixes_algebras_on_algebra_carriers() {
        for c in [corpus::chain(3), corpus::diamond()] {
            let w = match build_algebra(Monad::Downset, c, &budget()).unwrap() {
                Build::Built(w) => w,
                Build::Refused(_) => unreachable!(),
            };
            let eqs = fixes_algebras(&w, &budget()).unwrap();
            assert!(all_hold(&eqs), "{eqs:?}");
        }
    }
}
