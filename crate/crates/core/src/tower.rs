//! The algebra/coalgebra tower over a monad: structure maps as adjoint
//! sections of the unit, costructures as adjoint sections of the structure,
//! second-round structures as adjoint sections of the costructure, each
//! presented by the split (co)equalizer it generates, and the equivalence
//! pipeline that recovers a base object from a completed tower.
//!
//! Candidates are always validated as homomorphisms of the base category
//! and against every defining identity; a failed candidate is a refusal
//! (a correct negative, e.g. a non-distributive lattice carries no algebra),
//! while an identity failing on an already-validated witness is a genuine
//! violation.

use serde::Serialize;

use crate::below::{lattice_of, monad_below};
use crate::error::MonadError;
use crate::hom::{
    compose, validate_hom_as, CategoryTag, Equation, Hom, Violation,
};
use crate::lattice::{sub_lattice, Carrier, CarrierRc};
use crate::monad::{Assemblies, Budget, Monad, MonadAssembly};
use crate::search::HomSearch;

/// A stage that correctly declined to produce a witness, with the first
/// failing law and witness element in canonical order.
#[derive(Clone, Debug, Serialize)]
pub struct Refusal {
    pub stage: &'static str,
    pub law: String,
    pub synopsis: String,
}

#[derive(Clone)]
pub enum Build<W> {
    Built(W),
    Refused(Refusal),
}

impl<W> Build<W> {
    pub fn built(self) -> Option<W> {
        match self {
            Build::Built(w) => Some(w),
            Build::Refused(_) => None,
        }
    }

    pub fn as_refusal(&self) -> Option<&Refusal> {
        match self {
            Build::Built(_) => None,
            Build::Refused(r) => Some(r),
        }
    }
}

fn violation_refusal(stage: &'static str, v: &Violation, src: &Carrier, synopsis: &str) -> Refusal {
    Refusal {
        stage,
        law: format!("candidate is not a homomorphism: {}", v.describe(src)),
        synopsis: synopsis.to_string(),
    }
}

/// An Eilenberg-Moore algebra `(X, a)` with its verified evidence and the
/// lifted homs every later stage needs.
#[derive(Clone)]
pub struct AlgebraWitness {
    pub asm: Assemblies,
    /// `a : TX → X`, the join of the denoted subset.
    pub structure: Hom,
    /// `m : TTX → TX`.
    pub mult: Hom,
    /// `T(a) : TTX → TX`.
    pub lifted_structure: Hom,
    pub evidence: Vec<Equation>,
}

impl AlgebraWitness {
    pub fn base(&self) -> &CarrierRc {
        &self.asm.base
    }

    pub fn monad(&self) -> Monad {
        self.asm.monad
    }

    pub fn unit(&self) -> &Hom {
        self.asm.unit()
    }
}

/// Builds the algebra on a carrier if its join map satisfies every law:
/// hom of the base category, section of the unit, and compatible with
/// multiplication. Returns the first failing law otherwise.
pub fn build_algebra(
    monad: Monad,
    base: CarrierRc,
    budget: &Budget,
) -> Result<Build<AlgebraWitness>, MonadError> {
    let asm = Assemblies::new(monad, base.clone(), budget)?;
    let mult = asm.mult()?;
    let lat = lattice_of(&base)?;
    let map: Vec<usize> = asm.tx.subsets.iter().map(|s| lat.join_of(s)).collect();
    let a = Hom::new(asm.tx.total.clone(), base.clone(), map, monad.base_tag())
        .map_err(MonadError::Hom)?;

    let report = validate_hom_as(&a, monad.base_tag()).map_err(MonadError::Hom)?;
    if let Some(v) = report.first() {
        return Ok(Build::Refused(violation_refusal(
            "algebra",
            v,
            &asm.tx.total,
            "join map is not a homomorphism of the base category, so the carrier is not a frame",
        )));
    }
    let unit_law = Equation::of_identity(
        "a·e = 1",
        &compose(&a, asm.unit()).map_err(MonadError::Hom)?,
    );
    if !unit_law.holds {
        return Ok(Build::Refused(Refusal {
            stage: "algebra",
            law: format!("a·e = 1 fails at {:?}", unit_law.witness),
            synopsis: "join map does not retract the unit".to_string(),
        }));
    }
    let ta = asm.lift_structure(&a)?;
    let assoc_law = Equation::of_homs(
        "a·T(a) = a·m",
        &compose(&a, &ta).map_err(MonadError::Hom)?,
        &compose(&a, &mult).map_err(MonadError::Hom)?,
    );
    if !assoc_law.holds {
        return Ok(Build::Refused(Refusal {
            stage: "algebra",
            law: format!("a·T(a) = a·m fails at {:?}", assoc_law.witness),
            synopsis: "join map is not compatible with multiplication".to_string(),
        }));
    }
    Ok(Build::Built(AlgebraWitness {
        asm,
        structure: a,
        mult,
        lifted_structure: ta,
        evidence: vec![unit_law, assoc_law],
    }))
}

/// A coalgebra `(X, a, c)` of the induced comonad.
#[derive(Clone)]
pub struct CoalgebraWitness {
    pub algebra: AlgebraWitness,
    /// `c : X → TX`, the totally-below (resp. way-below) set map.
    pub costructure: Hom,
    /// `T(c) : TX → TTX`.
    pub lifted_costructure: Hom,
    pub evidence: Vec<Equation>,
    /// Number of alternative valid costructures found by exhaustive section
    /// search (run on carriers of at most five elements); the candidate is
    /// forced, so this is 1 when built and 0 when refused.
    pub alternatives: Option<usize>,
}

/// Limit below which costructure uniqueness is confirmed exhaustively.
pub const UNIQUENESS_SEARCH_LIMIT: usize = 5;

/// Builds the coalgebra on a verified algebra. The candidate sends an
/// element to the set of elements totally below (way below, for ideals) it;
/// it is accepted iff it is a hom of the base category, a section of the
/// structure, and an algebra morphism, which together with coassociativity
/// make the split-equalizer presentation verify.
pub fn build_coalgebra(
    algebra: &AlgebraWitness,
    budget: &Budget,
) -> Result<Build<CoalgebraWitness>, MonadError> {
    let monad = algebra.monad();
    let base = algebra.base().clone();
    let lat = lattice_of(&base)?;
    let rel = monad_below(monad, lat, budget.max_subsets)?;
    let map: Result<Vec<usize>, MonadError> = (0..base.size())
        .map(|x| {
            algebra.asm.tx.index_of(&rel.below[x]).ok_or_else(|| {
                MonadError::Invariant("below-set is not an admissible subset".to_string())
            })
        })
        .collect();
    let c = Hom::new(base.clone(), algebra.asm.tx.total.clone(), map?, monad.base_tag())
        .map_err(MonadError::Hom)?;

    let alternatives = if base.size() <= UNIQUENESS_SEARCH_LIMIT {
        Some(count_valid_costructures(algebra, budget)?)
    } else {
        None
    };

    let report = validate_hom_as(&c, monad.base_tag()).map_err(MonadError::Hom)?;
    if let Some(v) = report.first() {
        if let Some(n) = alternatives {
            if n != 0 {
                return Err(MonadError::Invariant(
                    "costructure candidate refused but an alternative exists".to_string(),
                ));
            }
        }
        return Ok(Build::Refused(violation_refusal(
            "coalgebra",
            v,
            &base,
            "below-set map is not a homomorphism, so the frame is not stably (super)continuous",
        )));
    }
    let tc = monad.apply_hom(&c, &algebra.asm.tx, &algebra.asm.ttx)?;
    let mut evidence = vec![
        Equation::of_identity(
            "a·c = 1",
            &compose(&algebra.structure, &c).map_err(MonadError::Hom)?,
        ),
        Equation::of_homs(
            "c·a = m·T(c)",
            &compose(&c, &algebra.structure).map_err(MonadError::Hom)?,
            &compose(&algebra.mult, &tc).map_err(MonadError::Hom)?,
        ),
        Equation::of_homs(
            "T(e)·c = T(c)·c",
            &compose(&algebra.asm.lifted_unit()?, &c).map_err(MonadError::Hom)?,
            &compose(&tc, &c).map_err(MonadError::Hom)?,
        ),
    ];
    if let Some(bad) = evidence.iter().find(|e| !e.holds) {
        if let Some(n) = alternatives {
            if n != 0 {
                return Err(MonadError::Invariant(
                    "costructure candidate refused but an alternative exists".to_string(),
                ));
            }
        }
        let law = format!("{} fails at {:?}", bad.name, bad.witness);
        return Ok(Build::Refused(Refusal {
            stage: "coalgebra",
            law,
            synopsis: "below-set map does not satisfy the coalgebra identities".to_string(),
        }));
    }
    evidence.push(Equation::of_bool(
        "costructure is forced (exhaustive section search)",
        alternatives.is_none_or(|n| n == 1),
        None,
    ));
    Ok(Build::Built(CoalgebraWitness {
        algebra: algebra.clone(),
        costructure: c,
        lifted_costructure: tc,
        evidence,
        alternatives,
    }))
}

/// Counts base-category sections of the structure map that satisfy all
/// coalgebra identities, by exhaustive enumeration.
fn count_valid_costructures(
    algebra: &AlgebraWitness,
    _budget: &Budget,
) -> Result<usize, MonadError> {
    let monad = algebra.monad();
    let base = algebra.base().clone();
    let n = base.size();
    let mut search = HomSearch::new(base.clone(), algebra.asm.tx.total.clone(), monad.base_tag());
    for x in 0..n {
        let fiber: Vec<usize> = (0..algebra.asm.tx.size())
            .filter(|&t| algebra.structure.apply(t) == x)
            .collect();
        search = search.restrict(x, fiber);
    }
    let mut valid = 0;
    for cand in search.collect_all() {
        let tc = monad.apply_hom(&cand, &algebra.asm.tx, &algebra.asm.ttx)?;
        let morphism = compose(&cand, &algebra.structure)
            .map_err(MonadError::Hom)?
            .same_map(&compose(&algebra.mult, &tc).map_err(MonadError::Hom)?);
        let coassoc = compose(&algebra.asm.lifted_unit()?, &cand)
            .map_err(MonadError::Hom)?
            .same_map(&compose(&tc, &cand).map_err(MonadError::Hom)?);
        if morphism && coassoc {
            valid += 1;
        }
    }
    Ok(valid)
}

/// An algebra of the second-round monad on coalgebras: `(X, a, c, b)`.
#[derive(Clone)]
pub struct TowerAlgebraWitness {
    pub coalgebra: CoalgebraWitness,
    /// `b : TX → X`, the left adjoint of the costructure.
    pub structure: Hom,
    /// `T(b) : TTX → TX`.
    pub lifted_structure: Hom,
    pub evidence: Vec<Equation>,
}

impl TowerAlgebraWitness {
    pub fn algebra(&self) -> &AlgebraWitness {
        &self.coalgebra.algebra
    }
}

/// Builds the second-round structure on a verified coalgebra: the left
/// adjoint `b ⊣ c` with `b·c = 1`, validated as a hom, an algebra morphism,
/// a coalgebra morphism, and against the split-coequalizer identities.
pub fn build_tower_algebra(
    coalgebra: &CoalgebraWitness,
    _budget: &Budget,
) -> Result<Build<TowerAlgebraWitness>, MonadError> {
    let monad = coalgebra.algebra.monad();
    let b = match crate::hom::left_adjoint(&coalgebra.costructure) {
        Some(b) => b.with_tag(monad.base_tag()),
        None => {
            return Ok(Build::Refused(Refusal {
                stage: "tower-algebra",
                law: "costructure has no left adjoint".to_string(),
                synopsis: "no second-round structure exists on this coalgebra".to_string(),
            }))
        }
    };
    let report = validate_hom_as(&b, monad.base_tag()).map_err(MonadError::Hom)?;
    if let Some(v) = report.first() {
        return Ok(Build::Refused(violation_refusal(
            "tower-algebra",
            v,
            &coalgebra.algebra.asm.tx.total,
            "left adjoint of the costructure is not a homomorphism",
        )));
    }
    let alg = &coalgebra.algebra;
    let tb = monad.apply_hom(&b, &alg.asm.ttx, &alg.asm.tx)?;
    let te = alg.asm.lifted_unit()?;
    let evidence = vec![
        Equation::of_identity("b·c = 1", &compose(&b, &coalgebra.costructure).map_err(MonadError::Hom)?),
        Equation::of_homs(
            "b·m = a·T(b)",
            &compose(&b, &alg.mult).map_err(MonadError::Hom)?,
            &compose(&alg.structure, &tb).map_err(MonadError::Hom)?,
        ),
        Equation::of_homs(
            "c·b = T(b)·T(e)",
            &compose(&coalgebra.costructure, &b).map_err(MonadError::Hom)?,
            &compose(&tb, &te).map_err(MonadError::Hom)?,
        ),
        Equation::of_homs(
            "b·T(a) = b·T(b)",
            &compose(&b, &alg.lifted_structure).map_err(MonadError::Hom)?,
            &compose(&b, &tb).map_err(MonadError::Hom)?,
        ),
    ];
    if let Some(bad) = evidence.iter().find(|e| !e.holds) {
        let law = format!("{} fails at {:?}", bad.name, bad.witness);
        return Ok(Build::Refused(Refusal {
            stage: "tower-algebra",
            law,
            synopsis: "left adjoint of the costructure violates the second-round identities"
                .to_string(),
        }));
    }
    Ok(Build::Built(TowerAlgebraWitness {
        coalgebra: coalgebra.clone(),
        structure: b,
        lifted_structure: tb,
        evidence,
    }))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Orientation {
    Coequalizer,
    Equalizer,
}

/// The six-object data of a split (co)equalizer: the parallel pair `f, g`,
/// the section `t` of `f`, the (co)limit arrow `q`, and its section `s`,
/// subject to four identities.
#[derive(Clone)]
pub struct SplitDiagram {
    pub orientation: Orientation,
    pub f: Hom,
    pub g: Hom,
    pub t: Hom,
    pub q: Hom,
    pub s: Hom,
}

impl SplitDiagram {
    pub fn equations(&self) -> Vec<Equation> {
        let c = |g: &Hom, f: &Hom| compose(g, f).expect("diagram shapes agree");
        match self.orientation {
            Orientation::Coequalizer => vec![
                Equation::of_homs("q·f = q·g", &c(&self.q, &self.f), &c(&self.q, &self.g)),
                Equation::of_identity("q·s = 1", &c(&self.q, &self.s)),
                Equation::of_identity("f·t = 1", &c(&self.f, &self.t)),
                Equation::of_homs("s·q = g·t", &c(&self.s, &self.q), &c(&self.g, &self.t)),
            ],
            Orientation::Equalizer => vec![
                Equation::of_homs("f·q = g·q", &c(&self.f, &self.q), &c(&self.g, &self.q)),
                Equation::of_identity("s·q = 1", &c(&self.s, &self.q)),
                Equation::of_identity("t·f = 1", &c(&self.t, &self.f)),
                Equation::of_homs("q·s = t·g", &c(&self.q, &self.s), &c(&self.t, &self.g)),
            ],
        }
    }

    pub fn verify(&self) -> Result<Vec<Equation>, crate::error::TowerError> {
        let eqs = self.equations();
        if let Some(bad) = eqs.iter().find(|e| !e.holds) {
            return Err(crate::error::TowerError::IdentityViolated {
                identity: bad.name.clone(),
                witness: bad.witness.clone().unwrap_or_default(),
            });
        }
        Ok(eqs)
    }
}

/// The split coequalizer presenting an algebra:
/// `TTX ⇉(T(a), m) TX →a X` with sections `e at TX` and `e`.
pub fn present_algebra(w: &AlgebraWitness) -> SplitDiagram {
    SplitDiagram {
        orientation: Orientation::Coequalizer,
        f: w.mult.clone(),
        g: w.lifted_structure.clone(),
        t: w.asm.unit_total().clone(),
        q: w.structure.clone(),
        s: w.asm.unit().clone(),
    }
}

/// The split equalizer presenting a coalgebra:
/// `X →c TX ⇉(T(e), T(c)) TTX` with retractions `a` and `m`.
pub fn present_coalgebra(w: &CoalgebraWitness) -> Result<SplitDiagram, MonadError> {
    Ok(SplitDiagram {
        orientation: Orientation::Equalizer,
        f: w.algebra.asm.lifted_unit()?,
        g: w.lifted_costructure.clone(),
        t: w.algebra.mult.clone(),
        q: w.costructure.clone(),
        s: w.algebra.structure.clone(),
    })
}

/// The split coequalizer presenting a second-round algebra:
/// `TTX ⇉(T(a), T(b)) TX →b X` with sections `T(e)` and `c`.
pub fn present_tower_algebra(w: &TowerAlgebraWitness) -> Result<SplitDiagram, MonadError> {
    Ok(SplitDiagram {
        orientation: Orientation::Coequalizer,
        f: w.coalgebra.algebra.lifted_structure.clone(),
        g: w.lifted_structure.clone(),
        t: w.coalgebra.algebra.asm.lifted_unit()?,
        q: w.structure.clone(),
        s: w.coalgebra.costructure.clone(),
    })
}

/// Applies the monad to every hom of a diagram. Split diagrams are absolute,
/// so the image must verify again; callers assert that.
pub fn lift_diagram(
    monad: Monad,
    d: &SplitDiagram,
    budget: &Budget,
) -> Result<SplitDiagram, MonadError> {
    let mut cache: Vec<(CarrierRc, MonadAssembly)> = Vec::new();
    let asm_for = |c: &CarrierRc, cache: &mut Vec<(CarrierRc, MonadAssembly)>| -> Result<usize, MonadError> {
        for (i, (k, _)) in cache.iter().enumerate() {
            if std::sync::Arc::ptr_eq(k, c) || **k == **c {
                return Ok(i);
            }
        }
        let asm = monad.apply_object(c.clone(), budget)?;
        cache.push((c.clone(), asm));
        Ok(cache.len() - 1)
    };
    let lift = |h: &Hom, cache: &mut Vec<(CarrierRc, MonadAssembly)>| -> Result<Hom, MonadError> {
        let si = asm_for(h.source(), cache)?;
        let ti = asm_for(h.target(), cache)?;
        let (src, tgt) = (cache[si].1.clone(), cache[ti].1.clone());
        monad.apply_hom(h, &src, &tgt)
    };
    Ok(SplitDiagram {
        orientation: d.orientation,
        f: lift(&d.f, &mut cache)?,
        g: lift(&d.g, &mut cache)?,
        t: lift(&d.t, &mut cache)?,
        q: lift(&d.q, &mut cache)?,
        s: lift(&d.s, &mut cache)?,
    })
}

#[derive(Clone)]
pub enum FactorOutcome {
    Factored { retraction: Hom, evidence: Vec<Equation> },
    NotFactorable { witness: String },
}

/// Given `b : TTX → TX`, computes the unique `r : TX → X` with
/// `e·r = b·(e at TX)`, using that the unit is the equalizer of the pair
/// `(e at TX, T(e))` — which is verified elementwise first.
pub fn factor_through_unit(
    monad: Monad,
    base: CarrierRc,
    b: &Hom,
    budget: &Budget,
) -> Result<FactorOutcome, MonadError> {
    let asm = Assemblies::new(monad, base.clone(), budget)?;
    let te = asm.lifted_unit()?;
    let e_tx = asm.unit_total();
    let equalizer: Vec<usize> = (0..asm.tx.size())
        .filter(|&t| te.apply(t) == e_tx.apply(t))
        .collect();
    let image: Vec<usize> = (0..base.size()).map(|x| asm.unit().apply(x)).collect();
    let mut sorted_image = image.clone();
    sorted_image.sort_unstable();
    if equalizer != sorted_image {
        return Err(MonadError::Invariant(
            "unit is not the equalizer of (e at TX, T(e))".to_string(),
        ));
    }
    let h = compose(b, e_tx).map_err(MonadError::Hom)?;
    let mut inverse = vec![usize::MAX; asm.tx.size()];
    for (x, &ex) in image.iter().enumerate() {
        inverse[ex] = x;
    }
    let mut map = Vec::with_capacity(asm.tx.size());
    for t in 0..asm.tx.size() {
        let v = h.apply(t);
        if inverse[v] == usize::MAX {
            return Ok(FactorOutcome::NotFactorable {
                witness: asm.tx.total.label(t).to_string(),
            });
        }
        map.push(inverse[v]);
    }
    let r = Hom::new(asm.tx.total.clone(), base.clone(), map, CategoryTag::Poset)
        .map_err(MonadError::Hom)?;
    let evidence = vec![
        Equation::of_homs(
            "e·r = b·(e at TX)",
            &compose(asm.unit(), &r).map_err(MonadError::Hom)?,
            &h,
        ),
        Equation::of_identity("r·e = 1", &compose(&r, asm.unit()).map_err(MonadError::Hom)?),
    ];
    Ok(FactorOutcome::Factored { retraction: r, evidence })
}

/// Everything the equivalence pipeline produced for one tower algebra.
#[derive(Clone)]
pub struct PipelineWitness {
    /// The agreement sub-carrier `{ x | c(x) = e(x) }`.
    pub core: CarrierRc,
    pub core_indices: Vec<usize>,
    /// `κ : core → X` (inclusion) and `r : X → core`.
    pub inclusion: Hom,
    pub retraction: Hom,
    /// Assemblies over the core (used to transport morphisms).
    pub core_asm: Assemblies,
    /// `h : X → T(core)` and its inverse.
    pub iso_forward: Hom,
    pub iso_backward: Hom,
    /// Structure on the core from its own algebra build.
    pub core_structure: Hom,
    pub equations: Vec<Equation>,
}

impl PipelineWitness {
    pub fn holds(&self) -> bool {
        crate::hom::all_hold(&self.equations)
    }
}

/// Runs the equivalence pipeline on a completed tower: computes the
/// agreement sub-carrier, the split coequalizer/equalizer pair it generates
/// (eight identities), and the isomorphism between the monad applied to the
/// core and the original carrier, with the transported structure matching
/// the canonical one.
pub fn main_equivalence_pipeline(
    w: &TowerAlgebraWitness,
    budget: &Budget,
) -> Result<PipelineWitness, MonadError> {
    let monad = w.algebra().monad();
    let base = w.algebra().base().clone();
    let alg = w.algebra();
    let c = &w.coalgebra.costructure;
    let e = alg.unit();
    let a = &alg.structure;
    let b = &w.structure;

    let core_indices: Vec<usize> =
        (0..base.size()).filter(|&x| c.apply(x) == e.apply(x)).collect();
    if core_indices.is_empty() {
        return Err(MonadError::Invariant("agreement sub-carrier is empty".to_string()));
    }
    let parent = lattice_of(&base)?;
    // Closure of the agreement set under the base operations is forced by
    // c and e both being homs; check it anyway.
    for &i in &core_indices {
        for &j in &core_indices {
            if !core_indices.contains(&parent.meet(i, j)) {
                return Err(MonadError::Invariant(
                    "agreement sub-carrier is not meet-closed".to_string(),
                ));
            }
        }
    }
    if !core_indices.contains(&parent.top()) {
        return Err(MonadError::Invariant(
            "agreement sub-carrier lacks the top".to_string(),
        ));
    }
    let core = Carrier::Lattice(sub_lattice(parent, &core_indices).map_err(MonadError::Order)?).rc();
    let inclusion = Hom::new(
        core.clone(),
        base.clone(),
        core_indices.clone(),
        monad.base_tag(),
    )
    .map_err(MonadError::Hom)?;

    let be = compose(b, e).map_err(MonadError::Hom)?;
    let mut r_map = Vec::with_capacity(base.size());
    for x in 0..base.size() {
        let v = be.apply(x);
        let pos = core_indices.binary_search(&v).map_err(|_| {
            MonadError::Invariant(format!(
                "b·e lands outside the agreement sub-carrier at {}",
                base.label(x)
            ))
        })?;
        r_map.push(pos);
    }
    let retraction = Hom::new(base.clone(), core.clone(), r_map, monad.base_tag())
        .map_err(MonadError::Hom)?;

    let left = SplitDiagram {
        orientation: Orientation::Coequalizer,
        f: a.clone(),
        g: b.clone(),
        t: e.clone(),
        q: retraction.clone(),
        s: inclusion.clone(),
    };
    let right = SplitDiagram {
        orientation: Orientation::Equalizer,
        f: c.clone(),
        g: e.clone(),
        t: b.clone(),
        q: inclusion.clone(),
        s: retraction.clone(),
    };
    let mut equations = Vec::new();
    for (side, d) in [("left", &left), ("right", &right)] {
        for mut eq in d.equations() {
            eq.name = format!("{side} {}", eq.name);
            equations.push(eq);
        }
    }

    // Apply the monad to the core and exhibit the isomorphism with X.
    let core_asm = Assemblies::new(monad, core.clone(), budget)?;
    let t_r = monad.apply_hom(&retraction, &alg.asm.tx, &core_asm.tx)?;
    let t_kappa = monad.apply_hom(&inclusion, &core_asm.tx, &alg.asm.tx)?;
    let iso_forward = compose(&t_r, c).map_err(MonadError::Hom)?;
    let iso_backward = compose(b, &t_kappa).map_err(MonadError::Hom)?;
    equations.push(Equation::of_identity(
        "(b·Tκ)·(Tr·c) = 1",
        &compose(&iso_backward, &iso_forward).map_err(MonadError::Hom)?,
    ));
    equations.push(Equation::of_identity(
        "(Tr·c)·(b·Tκ) = 1",
        &compose(&iso_forward, &iso_backward).map_err(MonadError::Hom)?,
    ));
    equations.push(Equation::of_bool(
        "Tr·c is an order isomorphism",
        iso_forward.order_isomorphism().is_some(),
        None,
    ));
    equations.push(Equation::of_homs(
        "(Tr·c)·b = Tr",
        &compose(&iso_forward, b).map_err(MonadError::Hom)?,
        &t_r,
    ));
    equations.push(Equation::of_homs(
        "r·a = r·b",
        &compose(&retraction, a).map_err(MonadError::Hom)?,
        &compose(&retraction, b).map_err(MonadError::Hom)?,
    ));

    // The core is itself an algebra; its structure matches the retraction
    // under the isomorphism, and its lift is the transported structure.
    let core_alg = match build_algebra(monad, core.clone(), budget)? {
        Build::Built(wit) => wit,
        Build::Refused(r) => {
            return Err(MonadError::Invariant(format!(
                "core of a completed tower failed to be an algebra: {}",
                r.law
            )))
        }
    };
    equations.push(Equation::of_homs(
        "a_core·(Tr·c) = r",
        &compose(&core_alg.structure, &iso_forward).map_err(MonadError::Hom)?,
        &retraction,
    ));
    let t_iso_backward = monad.apply_hom(&iso_backward, &core_asm.ttx, &alg.asm.tx)?;
    let transported = compose(
        &iso_forward,
        &compose(b, &t_iso_backward).map_err(MonadError::Hom)?,
    )
    .map_err(MonadError::Hom)?;
    let canonical = monad.apply_hom(&core_alg.structure, &core_asm.ttx, &core_asm.tx)?;
    equations.push(Equation::of_homs(
        "transported structure = T(a_core)",
        &transported,
        &canonical,
    ));
    // Tr is a morphism of second-round algebras.
    let t_t_r = monad.apply_hom(&t_r, &alg.asm.ttx, &core_asm.ttx)?;
    equations.push(Equation::of_homs(
        "Tr·m = m_core·T(Tr)",
        &compose(&t_r, &alg.mult).map_err(MonadError::Hom)?,
        &compose(&core_asm.mult()?, &t_t_r).map_err(MonadError::Hom)?,
    ));
    equations.push(Equation::of_homs(
        "T(e_core)·Tr = T(Tr)·T(e)",
        &compose(&core_asm.lifted_unit()?, &t_r).map_err(MonadError::Hom)?,
        &compose(&t_t_r, &alg.asm.lifted_unit()?).map_err(MonadError::Hom)?,
    ));
    equations.push(Equation::of_homs(
        "Tr·T(a) = γ·T(Tr)",
        &compose(&t_r, &alg.lifted_structure).map_err(MonadError::Hom)?,
        &compose(&transported, &t_t_r).map_err(MonadError::Hom)?,
    ));

    Ok(PipelineWitness {
        core,
        core_indices,
        inclusion,
        retraction,
        core_asm,
        iso_forward,
        iso_backward,
        core_structure: core_alg.structure,
        equations,
    })
}

#[derive(Clone)]
pub struct TransportReport {
    pub restricted: Hom,
    pub equations: Vec<Equation>,
}

/// Transports a morphism of completed towers to a morphism of cores:
/// the restriction `f_core` with `f_core·r = r'·f` and `f·κ = κ'·f_core`,
/// itself an algebra morphism.
pub fn morphism_transport(
    f: &Hom,
    src: (&TowerAlgebraWitness, &PipelineWitness),
    dst: (&TowerAlgebraWitness, &PipelineWitness),
) -> Result<TransportReport, MonadError> {
    let monad = src.0.algebra().monad();
    // f must be a morphism of towers.
    let tf = monad.apply_hom(f, &src.0.algebra().asm.tx, &dst.0.algebra().asm.tx)?;
    let squares = [
        (
            "f·a = a'·T(f)",
            compose(f, &src.0.algebra().structure).map_err(MonadError::Hom)?,
            compose(&dst.0.algebra().structure, &tf).map_err(MonadError::Hom)?,
        ),
        (
            "T(f)·c = c'·f",
            compose(&tf, &src.0.coalgebra.costructure).map_err(MonadError::Hom)?,
            compose(&dst.0.coalgebra.costructure, f).map_err(MonadError::Hom)?,
        ),
        (
            "f·b = b'·T(f)",
            compose(f, &src.0.structure).map_err(MonadError::Hom)?,
            compose(&dst.0.structure, &tf).map_err(MonadError::Hom)?,
        ),
    ];
    for (name, lhs, rhs) in &squares {
        if !lhs.same_map(rhs) {
            return Err(MonadError::InvalidHom(format!(
                "not a morphism of towers: {name} fails"
            )));
        }
    }
    let mut map = Vec::with_capacity(src.1.core_indices.len());
    for &i in &src.1.core_indices {
        let v = f.apply(i);
        let pos = dst.1.core_indices.binary_search(&v).map_err(|_| {
            MonadError::Invariant("tower morphism does not preserve the core".to_string())
        })?;
        map.push(pos);
    }
    let restricted = Hom::new(
        src.1.core.clone(),
        dst.1.core.clone(),
        map,
        monad.base_tag(),
    )
    .map_err(MonadError::Hom)?;
    let t_restricted = monad.apply_hom(&restricted, &src.1.core_asm.tx, &dst.1.core_asm.tx)?;
    let src_core_structure = &src.1.core_structure;
    let dst_core_structure = &dst.1.core_structure;
    let equations = vec![
        Equation::of_homs(
            "f_core·r = r'·f",
            &compose(&restricted, &src.1.retraction).map_err(MonadError::Hom)?,
            &compose(&dst.1.retraction, f).map_err(MonadError::Hom)?,
        ),
        Equation::of_homs(
            "f·κ = κ'·f_core",
            &compose(f, &src.1.inclusion).map_err(MonadError::Hom)?,
            &compose(&dst.1.inclusion, &restricted).map_err(MonadError::Hom)?,
        ),
        Equation::of_homs(
            "f_core·a_core = a'_core·T(f_core)",
            &compose(&restricted, src_core_structure).map_err(MonadError::Hom)?,
            &compose(dst_core_structure, &t_restricted).map_err(MonadError::Hom)?,
        ),
    ];
    Ok(TransportReport { restricted, equations })
}

/// The outcome of running the whole chain on one carrier.
#[derive(Clone)]
pub enum TowerOutcome {
    RefusedAtAlgebra(Refusal),
    RefusedAtCoalgebra {
        algebra: Box<AlgebraWitness>,
        refusal: Refusal,
    },
    RefusedAtTower {
        coalgebra: Box<CoalgebraWitness>,
        refusal: Refusal,
    },
    Completed {
        tower: Box<TowerAlgebraWitness>,
        pipeline: Box<PipelineWitness>,
    },
}

impl TowerOutcome {
    pub fn refusal(&self) -> Option<&Refusal> {
        match self {
            TowerOutcome::RefusedAtAlgebra(r) => Some(r),
            TowerOutcome::RefusedAtCoalgebra { refusal, .. } => Some(refusal),
            TowerOutcome::RefusedAtTower { refusal, .. } => Some(refusal),
            TowerOutcome::Completed { .. } => None,
        }
    }

    pub fn completed(&self) -> Option<(&TowerAlgebraWitness, &PipelineWitness)> {
        match self {
            TowerOutcome::Completed { tower, pipeline } => Some((tower, pipeline)),
            _ => None,
        }
    }
}

/// Runs algebra → coalgebra → second-round algebra → pipeline, stopping at
/// the first stage that correctly refuses.
pub fn run_tower(monad: Monad, base: CarrierRc, budget: &Budget) -> Result<TowerOutcome, MonadError> {
    let algebra = match build_algebra(monad, base, budget)? {
        Build::Built(w) => w,
        Build::Refused(r) => return Ok(TowerOutcome::RefusedAtAlgebra(r)),
    };
    let coalgebra = match build_coalgebra(&algebra, budget)? {
        Build::Built(w) => w,
        Build::Refused(refusal) => {
            return Ok(TowerOutcome::RefusedAtCoalgebra {
                algebra: Box::new(algebra),
                refusal,
            });
        }
    };
    let tower = match build_tower_algebra(&coalgebra, budget)? {
        Build::Built(w) => w,
        Build::Refused(refusal) => {
            return Ok(TowerOutcome::RefusedAtTower {
                coalgebra: Box::new(coalgebra),
                refusal,
            });
        }
    };
    let pipeline = main_equivalence_pipeline(&tower, budget)?;
    Ok(TowerOutcome::Completed {
        tower: Box::new(tower),
        pipeline: Box::new(pipeline),
    })
}
