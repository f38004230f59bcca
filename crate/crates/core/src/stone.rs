//! Representation round-trips: extracting the generators (self-below
//! elements) of a free carrier recovers the base object, and applying the
//! monad to the generators recovers the free carrier.

use serde::Serialize;

use crate::below::{lattice_of, monad_below};
use crate::error::MonadError;
use crate::hom::{compose, Equation, Hom};
use crate::lattice::{sub_lattice, Carrier, CarrierRc};
use crate::monad::{Budget, Monad, MonadAssembly};

pub struct StoneRoundtrip {
    pub total: MonadAssembly,
    /// Indices of the generators inside the total carrier.
    pub generators: Vec<usize>,
    pub generator_carrier: CarrierRc,
    /// Unit corestricted to the generators, an isomorphism.
    pub unit_iso: Hom,
    pub equations: Vec<Equation>,
}

impl StoneRoundtrip {
    pub fn holds(&self) -> bool {
        crate::hom::all_hold(&self.equations)
    }
}

/// Extracts the generators of the applied object (elements self-related
/// under the monad's below relation), verifies that they recover the base
/// via the unit, and that applying the monad to them recovers the total.
pub fn stone_roundtrip(monad: Monad, base: CarrierRc, budget: &Budget) -> Result<StoneRoundtrip, MonadError> {
    let total = monad.apply_object(base.clone(), budget)?;
    let lat = lattice_of(&total.total)?;
    let rel = monad_below(monad, lat, budget.max_subsets)?;
    let generators = rel.self_related();
    // Generators carry the base structure: closed under meets and top
    // (plus joins and bottom for ideals).
    for &i in &generators {
        for &j in &generators {
            if generators.binary_search(&lat.meet(i, j)).is_err() {
                return Err(MonadError::Invariant(
                    "generators of a free carrier are not meet-closed".to_string(),
                ));
            }
            if monad == Monad::Ideal && generators.binary_search(&lat.join(i, j)).is_err() {
                return Err(MonadError::Invariant(
                    "generators of a free carrier are not join-closed".to_string(),
                ));
            }
        }
    }
    if generators.binary_search(&lat.top()).is_err() {
        return Err(MonadError::Invariant(
            "generators of a free carrier lack the top".to_string(),
        ));
    }
    let generator_carrier =
        Carrier::Lattice(sub_lattice(lat, &generators).map_err(MonadError::Order)?).rc();

    let mut unit_map = Vec::with_capacity(base.size());
    for x in 0..base.size() {
        let pos = generators.binary_search(&total.unit.apply(x)).map_err(|_| {
            MonadError::Invariant("unit image is not made of generators".to_string())
        })?;
        unit_map.push(pos);
    }
    let unit_iso = Hom::new(
        base.clone(),
        generator_carrier.clone(),
        unit_map,
        monad.base_tag(),
    )
    .map_err(MonadError::Hom)?;

    let mut equations = vec![
        Equation::of_bool(
            "unit corestricts to an isomorphism onto the generators",
            unit_iso.order_isomorphism().is_some(),
            None,
        ),
        Equation::of_bool(
            "generator count equals the base size",
            generators.len() == base.size(),
            None,
        ),
    ];
    // Applying the monad to the generators recovers the total carrier,
    // canonically via the lifted unit isomorphism.
    let over_generators = monad.apply_object(generator_carrier.clone(), budget)?;
    let lifted = monad.apply_hom(&unit_iso, &total, &over_generators)?;
    equations.push(Equation::of_bool(
        "monad applied to the generators recovers the total carrier",
        lifted.order_isomorphism().is_some(),
        None,
    ));
    Ok(StoneRoundtrip { total, generators, generator_carrier, unit_iso, equations })
}

/// Naturality of the round-trip in the base object: for a hom `f : X → Y`,
/// the restricted lift of `f` commutes with the unit isomorphisms.
pub fn stone_naturality(monad: Monad, f: &Hom, budget: &Budget) -> Result<Equation, MonadError> {
    let src = stone_roundtrip(monad, f.source().clone(), budget)?;
    let tgt = stone_roundtrip(monad, f.target().clone(), budget)?;
    let tf = monad.apply_hom(f, &src.total, &tgt.total)?;
    // Lifted homs preserve generators.
    let mut restricted = Vec::with_capacity(src.generators.len());
    for &g in &src.generators {
        let v = tf.apply(g);
        let pos = tgt.generators.binary_search(&v).map_err(|_| {
            MonadError::Invariant("lifted hom does not preserve generators".to_string())
        })?;
        restricted.push(pos);
    }
    let g_of_tf = Hom::new(
        src.generator_carrier.clone(),
        tgt.generator_carrier.clone(),
        restricted,
        monad.base_tag(),
    )
    .map_err(MonadError::Hom)?;
    Ok(Equation::of_homs(
        "G(T f)·u = u·f",
        &compose(&g_of_tf, &src.unit_iso).map_err(MonadError::Hom)?,
        &compose(&tgt.unit_iso, f).map_err(MonadError::Hom)?,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct SupercoherenceReport {
    pub coherent: bool,
    pub reason: Option<String>,
    pub generator_count: usize,
}

/// Decides whether a frame is presented by its own generators: the
/// self-below elements must form a sub-carrier whose application recovers
/// the frame. Reports the first failure otherwise.
pub fn supercoherence(monad: Monad, frame: CarrierRc, budget: &Budget) -> Result<SupercoherenceReport, MonadError> {
    let lat = lattice_of(&frame)?;
    if !lat.is_distributive() {
        return Ok(SupercoherenceReport {
            coherent: false,
            reason: Some("carrier is not a frame".to_string()),
            generator_count: 0,
        });
    }
    let rel = monad_below(monad, lat, budget.max_subsets)?;
    let generators = rel.self_related();
    for &i in &generators {
        for &j in &generators {
            if generators.binary_search(&lat.meet(i, j)).is_err() {
                return Ok(SupercoherenceReport {
                    coherent: false,
                    reason: Some(format!(
                        "generators are not meet-closed: {} ∧ {} escapes",
                        frame.label(i),
                        frame.label(j)
                    )),
                    generator_count: generators.len(),
                });
            }
            if monad == Monad::Ideal && generators.binary_search(&lat.join(i, j)).is_err() {
                return Ok(SupercoherenceReport {
                    coherent: false,
                    reason: Some("generators are not join-closed".to_string()),
                    generator_count: generators.len(),
                });
            }
        }
    }
    if generators.binary_search(&lat.top()).is_err() {
        return Ok(SupercoherenceReport {
            coherent: false,
            reason: Some("the top is not a generator".to_string()),
            generator_count: generators.len(),
        });
    }
    let generator_carrier =
        Carrier::Lattice(sub_lattice(lat, &generators).map_err(MonadError::Order)?).rc();
    let over = monad.apply_object(generator_carrier, budget)?;
    // Evaluation: a subset of generators maps to its join in the frame.
    let mut eval = Vec::with_capacity(over.size());
    for s in &over.subsets {
        let mut ambient = crate::bitset::Bitset::empty(frame.size());
        for g in s.iter() {
            ambient.insert(generators[g]);
        }
        eval.push(lat.join_of(&ambient));
    }
    let eval = Hom::new(over.total.clone(), frame.clone(), eval, monad.base_tag())
        .map_err(MonadError::Hom)?;
    let coherent = eval.order_isomorphism().is_some();
    Ok(SupercoherenceReport {
        coherent,
        reason: if coherent {
            None
        } else {
            Some("evaluation from the generator application is not an isomorphism".to_string())
        },
        generator_count: generators.len(),
    })
}
