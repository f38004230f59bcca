mod dot;
mod lat;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use latmon_core::corpus;
use latmon_core::error::MonadError;
use latmon_core::fakir;
use latmon_core::hom::{all_hold, Equation};
use latmon_core::lattice::CarrierRc;
use latmon_core::monad::{
    check_lax_idempotent, check_adjoint_chain, check_monad_laws, iterate_sizes, Budget,
    Monad,
};
use latmon_core::projective;
use latmon_core::stone;
use latmon_core::tower::{self, TowerOutcome};

#[derive(Parser)]
#[command(name = "latmon", version, about = "Finite lattice and monad laboratory")]
struct Cli {
    /// Emit machine-readable JSON (schema 1, byte-identical across runs).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MonadArg {
    Downset,
    Ideal,
}

impl From<MonadArg> for Monad {
    fn from(m: MonadArg) -> Monad {
        match m {
            MonadArg::Downset => Monad::Downset,
            MonadArg::Ideal => Monad::Ideal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Order,
    TotallyBelow,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a .lat file and validate the declared kind.
    Validate { file: PathBuf },
    /// Apply a monad to the carrier, printing sizes (and tables when small).
    Apply {
        #[arg(long)]
        monad: MonadArg,
        /// How many times to apply the functor.
        #[arg(long, default_value_t = 1)]
        iterate: usize,
        #[arg(long)]
        budget: Option<usize>,
        file: PathBuf,
    },
    /// Check the monad laws (unit laws in full, associativity up to budget).
    Laws {
        #[arg(long)]
        monad: MonadArg,
        #[arg(long)]
        budget: Option<usize>,
        file: PathBuf,
    },
    /// Check lax idempotency and the three equivalent adjoint conditions.
    Lax {
        #[arg(long)]
        monad: MonadArg,
        #[arg(long)]
        budget: Option<usize>,
        file: PathBuf,
    },
    /// Run algebra → coalgebra → second-round algebra → equivalence pipeline.
    Tower {
        #[arg(long)]
        monad: MonadArg,
        #[arg(long)]
        budget: Option<usize>,
        file: PathBuf,
    },
    /// Idempotent-approximation checks: equalizer carrier, units, laws.
    Fakir {
        #[arg(long)]
        monad: MonadArg,
        #[arg(long)]
        budget: Option<usize>,
        file: PathBuf,
    },
    /// Generator-extraction round-trip and coherence of the input itself.
    Stone {
        #[arg(long)]
        monad: MonadArg,
        #[arg(long)]
        budget: Option<usize>,
        file: PathBuf,
    },
    /// Projectivity: coalgebra structure, retract of free, lifting property.
    Projective {
        #[arg(long)]
        monad: MonadArg,
        #[arg(long)]
        budget: Option<usize>,
        /// Largest member size of the lifting family.
        #[arg(long, default_value_t = 5)]
        family_max: usize,
        file: PathBuf,
    },
    /// List corpus objects, optionally writing them out as .lat files.
    Corpus {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Emit a DOT digraph of the order (Hasse) or totally-below relation.
    Dot {
        #[arg(long, value_enum, default_value_t = RelationArg::Order)]
        relation: RelationArg,
        file: PathBuf,
    },
}

enum CmdError {
    Usage(String),
    Violation(String),
}

impl From<lat::LatError> for CmdError {
    fn from(e: lat::LatError) -> Self {
        CmdError::Usage(e.to_string())
    }
}

/// Invariant failures signal a broken identity (exit 1); everything else is
/// a usage/validation problem (exit 2).
fn lift<T>(r: Result<T, MonadError>) -> Result<T, CmdError> {
    r.map_err(|e| match e {
        MonadError::Invariant(m) => CmdError::Violation(m),
        other => CmdError::Usage(other.to_string()),
    })
}

fn main() -> ExitCode {
    // Die quietly on closed pipes instead of panicking mid-report.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(CmdError::Violation(m)) => {
            eprintln!("violation: {m}");
            ExitCode::from(1)
        }
        Err(CmdError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn load(file: &Path) -> Result<(lat::LatFile, CarrierRc), CmdError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CmdError::Usage(format!("{}: {e}", file.display())))?;
    let parsed = lat::parse_lat(&text)?;
    let carrier = lat::to_carrier(&parsed)?;
    Ok((parsed, carrier))
}

fn budget_of(arg: Option<usize>) -> Budget {
    match arg {
        Some(max) => Budget::with_max(max),
        None => Budget::default(),
    }
}

fn envelope(command: &str, file: &Path, object: &str) -> Value {
    json!({
        "schema": 1,
        "command": command,
        "input": file.display().to_string(),
        "object": object,
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        for (k, v) in e {
            b.insert(k, v);
        }
    }
    base
}

fn eqs_json(eqs: &[Equation]) -> Value {
    serde_json::to_value(eqs).expect("equations serialize")
}

fn print_eqs(eqs: &[Equation]) {
    for e in eqs {
        let mark = if e.holds { "ok" } else { "FAIL" };
        match &e.witness {
            Some(w) if !e.holds => println!("  {}: {mark} (witness {w})", e.name),
            _ => println!("  {}: {mark}", e.name),
        }
    }
}

fn verdict_code(pass: bool) -> u8 {
    if pass {
        0
    } else {
        1
    }
}

fn run(cli: &Cli) -> Result<u8, CmdError> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(cli, file),
        Command::Apply { monad, iterate, budget, file } => {
            cmd_apply(cli, (*monad).into(), *iterate, budget_of(*budget), file)
        }
        Command::Laws { monad, budget, file } => {
            cmd_laws(cli, (*monad).into(), budget_of(*budget), file)
        }
        Command::Lax { monad, budget, file } => {
            cmd_lax(cli, (*monad).into(), budget_of(*budget), file)
        }
        Command::Tower { monad, budget, file } => {
            cmd_tower(cli, (*monad).into(), budget_of(*budget), file)
        }
        Command::Fakir { monad, budget, file } => {
            cmd_fakir(cli, (*monad).into(), budget_of(*budget), file)
        }
        Command::Stone { monad, budget, file } => {
            cmd_stone(cli, (*monad).into(), budget_of(*budget), file)
        }
        Command::Projective { monad, budget, family_max, file } => {
            cmd_projective(cli, (*monad).into(), budget_of(*budget), *family_max, file)
        }
        Command::Corpus { max_size, emit } => cmd_corpus(cli, *max_size, emit.as_deref()),
        Command::Dot { relation, file } => cmd_dot(cli, *relation, file),
    }
}

fn cmd_validate(cli: &Cli, file: &Path) -> Result<u8, CmdError> {
    let (parsed, carrier) = load(file)?;
    let (distributive, frame) = match carrier.lattice() {
        Some(l) => {
            let frame = l
                .frame_witness(Budget::default().max_subsets)
                .map_err(|e| CmdError::Usage(e.to_string()))?
                .is_none();
            (Some(l.is_distributive()), Some(frame))
        }
        None => (None, None),
    };
    if cli.json {
        let v = merge(
            envelope("validate", file, &parsed.name),
            json!({
                "kind": parsed.kind.name(),
                "size": carrier.size(),
                "elements": carrier.poset().labels(),
                "distributive": distributive,
                "frame": frame,
                "verdict": "pass",
            }),
        );
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!(
            "{}: valid {} with {} elements",
            parsed.name,
            parsed.kind.name(),
            carrier.size()
        );
        if let Some(d) = distributive {
            println!("  distributive: {d}");
            println!("  frame: {}", frame.unwrap());
        }
    }
    Ok(0)
}

fn cmd_apply(
    cli: &Cli,
    monad: Monad,
    iterate: usize,
    budget: Budget,
    file: &Path,
) -> Result<u8, CmdError> {
    let (parsed, carrier) = load(file)?;
    let steps = iterate.max(1);
    let sizes = lift(iterate_sizes(monad, &carrier, steps, &budget))?;
    let asm = lift(monad.apply_object(carrier, &budget))?;
    let lat = asm.total.lattice().expect("total is a lattice");
    let tables = if asm.size() <= 24 {
        let n = asm.size();
        let meet: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|j| lat.meet(i, j)).collect()).collect();
        let join: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|j| lat.join(i, j)).collect()).collect();
        Some((meet, join))
    } else {
        None
    };
    if cli.json {
        let v = merge(
            envelope("apply", file, &parsed.name),
            json!({
                "monad": monad.name(),
                "sizes": sizes,
                "elements": asm.total.poset().labels(),
                "unit": asm.unit.map(),
                "tables": tables.as_ref().map(|(m, j)| json!({"meet": m, "join": j})),
                "verdict": "pass",
            }),
        );
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("{} applied to {}:", monad.name(), parsed.name);
        for (k, s) in sizes.iter().enumerate() {
            println!("  |T^{} X| = {}", k + 1, s);
        }
        println!("elements of T X:");
        for i in 0..asm.size() {
            println!("  {}: {}", i, asm.total.label(i));
        }
        if let Some((meet, join)) = &tables {
            println!("meet table: {meet:?}");
            println!("join table: {join:?}");
        } else {
            println!("tables suppressed ({} elements)", asm.size());
        }
    }
    Ok(0)
}

fn cmd_laws(cli: &Cli, monad: Monad, budget: Budget, file: &Path) -> Result<u8, CmdError> {
    let (parsed, carrier) = load(file)?;
    let report = lift(check_monad_laws(monad, carrier, &budget))?;
    let pass = report.all_pass();
    if cli.json {
        let v = merge(
            envelope("laws", file, &parsed.name),
            merge(
                serde_json::to_value(&report).unwrap(),
                json!({"verdict": if pass { "pass" } else { "violation" }}),
            ),
        );
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("monad laws ({}) on {}:", monad.name(), parsed.name);
        println!("  |TX| = {}, |TTX| = {}", report.sizes[0], report.sizes[1]);
        print_eqs(&[report.unit_section.clone(), report.unit_lifted.clone()]);
        let mode = if report.assoc_truncated {
            format!("{} enumerated, {} sampled", report.assoc_enumerated, report.assoc_sampled)
        } else {
            format!("{} elements (complete)", report.assoc_enumerated)
        };
        println!(
            "  associativity over the third level: {mode}: {}",
            if report.violations.is_empty() { "ok" } else { "FAIL" }
        );
        println!("verdict: {}", if pass { "pass" } else { "violation" });
    }
    Ok(verdict_code(pass))
}

fn cmd_lax(cli: &Cli, monad: Monad, budget: Budget, file: &Path) -> Result<u8, CmdError> {
    let (parsed, carrier) = load(file)?;
    let lax = lift(check_lax_idempotent(monad, carrier.clone(), &budget))?;
    let chain = lift(check_adjoint_chain(monad, carrier, &budget))?;
    let pass = lax.holds && chain.all_pass();
    if cli.json {
        let v = merge(
            envelope("lax", file, &parsed.name),
            json!({
                "monad": monad.name(),
                "lax": serde_json::to_value(&lax).unwrap(),
                "adjoint_chain": serde_json::to_value(&chain).unwrap(),
                "verdict": if pass { "pass" } else { "violation" },
            }),
        );
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("lax idempotency ({}) on {}:", monad.name(), parsed.name);
        println!("  T(e) below e at TX: {}", if lax.holds { "ok" } else { "FAIL" });
        println!("  pointwise equal: {}", lax.pointwise_equal);
        println!("  T(e) left adjoint to m: {}", chain.lifted_unit_adjoint_mult);
        println!("  m left adjoint to e at TX: {}", chain.mult_adjoint_unit);
        println!("  conditions agree: {}", chain.conditions_agree);
        if chain.sections.is_empty() {
            println!("  sections of the unit: none found (nothing to check)");
        } else {
            println!(
                "  sections of the unit: {} found, all adjoint and algebraic: {}",
                chain.sections.len(),
                chain.sections.iter().all(|s| s.adjoint_to_unit && s.satisfies_algebra_laws)
            );
        }
        println!("verdict: {}", if pass { "pass" } else { "violation" });
    }
    Ok(verdict_code(pass))
}

fn refusal_json(r: &tower::Refusal) -> Value {
    json!({"stage": r.stage, "law": r.law, "synopsis": r.synopsis})
}

fn cmd_tower(cli: &Cli, monad: Monad, budget: Budget, file: &Path) -> Result<u8, CmdError> {
    let (parsed, carrier) = load(file)?;
    let outcome = lift(tower::run_tower(monad, carrier, &budget))?;
    let mut stages = serde_json::Map::new();
    let mut text_lines: Vec<String> = Vec::new();
    let mut pass = true;
    let verdict;
    let mut pipeline_json = Value::Null;
    match &outcome {
        TowerOutcome::RefusedAtAlgebra(r) => {
            stages.insert("algebra".into(), json!({"built": false, "refusal": refusal_json(r)}));
            verdict = format!("negative: {}; tower stops", r.synopsis);
            text_lines.push(format!("algebra: refused ({})", r.law));
        }
        TowerOutcome::RefusedAtCoalgebra { algebra, refusal } => {
            stages.insert(
                "algebra".into(),
                json!({"built": true, "evidence": eqs_json(&algebra.evidence),
                       "presentation": eqs_json(&tower::present_algebra(algebra).equations())}),
            );
            stages
                .insert("coalgebra".into(), json!({"built": false, "refusal": refusal_json(refusal)}));
            verdict = format!("negative: {}; tower stops", refusal.synopsis);
            text_lines.push("algebra: built".to_string());
            text_lines.push(format!("coalgebra: refused ({})", refusal.law));
        }
        TowerOutcome::RefusedAtTower { coalgebra, refusal } => {
            let alg = &coalgebra.algebra;
            stages.insert(
                "algebra".into(),
                json!({"built": true, "evidence": eqs_json(&alg.evidence),
                       "presentation": eqs_json(&tower::present_algebra(alg).equations())}),
            );
            let cp = lift(tower::present_coalgebra(coalgebra))?;
            stages.insert(
                "coalgebra".into(),
                json!({"built": true, "evidence": eqs_json(&coalgebra.evidence),
                       "presentation": eqs_json(&cp.equations())}),
            );
            stages.insert(
                "tower_algebra".into(),
                json!({"built": false, "refusal": refusal_json(refusal)}),
            );
            verdict = format!("negative: {}; tower stops", refusal.synopsis);
            text_lines.push("algebra: built".to_string());
            text_lines.push("coalgebra: built".to_string());
            text_lines.push(format!("second-round algebra: refused ({})", refusal.law));
        }
        TowerOutcome::Completed { tower: tw, pipeline } => {
            let alg = tw.algebra();
            let alg_pres = tower::present_algebra(alg).equations();
            let co_pres = lift(tower::present_coalgebra(&tw.coalgebra))?.equations();
            let tw_pres = lift(tower::present_tower_algebra(tw))?.equations();
            pass = all_hold(&alg_pres)
                && all_hold(&co_pres)
                && all_hold(&tw_pres)
                && pipeline.holds();
            stages.insert(
                "algebra".into(),
                json!({"built": true, "evidence": eqs_json(&alg.evidence),
                       "presentation": eqs_json(&alg_pres)}),
            );
            stages.insert(
                "coalgebra".into(),
                json!({"built": true, "evidence": eqs_json(&tw.coalgebra.evidence),
                       "presentation": eqs_json(&co_pres)}),
            );
            stages.insert(
                "tower_algebra".into(),
                json!({"built": true, "evidence": eqs_json(&tw.evidence),
                       "presentation": eqs_json(&tw_pres)}),
            );
            let core_labels: Vec<String> = (0..pipeline.core.size())
                .map(|i| pipeline.core.label(i).to_string())
                .collect();
            pipeline_json = json!({
                "core_size": pipeline.core.size(),
                "core_elements": core_labels,
                "recovered_size": pipeline.core_asm.tx.size(),
                "equations": eqs_json(&pipeline.equations),
                "holds": pipeline.holds(),
            });
            verdict = if pass { "pass".to_string() } else { "violation".to_string() };
            text_lines.push("algebra: built".to_string());
            text_lines.push("coalgebra: built".to_string());
            text_lines.push("second-round algebra: built".to_string());
            text_lines.push(format!(
                "pipeline core: {{{}}} ({} elements); applying the monad recovers {} elements",
                core_labels.join(", "),
                pipeline.core.size(),
                pipeline.core_asm.tx.size()
            ));
        }
    }
    if cli.json {
        let v = merge(
            envelope("tower", file, &parsed.name),
            json!({
                "monad": monad.name(),
                "stages": Value::Object(stages),
                "pipeline": pipeline_json,
                "verdict": verdict,
            }),
        );
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("tower ({}) on {}:", monad.name(), parsed.name);
        for l in &text_lines {
            println!("  {l}");
        }
        if let TowerOutcome::Completed { pipeline, .. } = &outcome {
            print_eqs(&pipeline.equations);
        }
        println!("verdict: {verdict}");
    }
    Ok(verdict_code(pass))
}

fn cmd_fakir(cli: &Cli, monad: Monad, budget: Budget, file: &Path) -> Result<u8, CmdError> {
    let (parsed, carrier) = load(file)?;
    let fa = lift(fakir::fakir_object(monad, carrier.clone(), &budget))?;
    let mut eqs = lift(fakir::fakir_monad_laws(monad, carrier.clone(), &budget))?;
    eqs.push(Equation::of_bool(
        "corestricted unit is an isomorphism",
        fakir::check_unit_iso(&fa).is_some(),
        None,
    ));
    eqs.push(Equation::of_bool(
        "lifted corestricted unit is an isomorphism",
        lift(fakir::check_lifted_unit_iso(&fa, &budget))?.is_some(),
        None,
    ));
    let has_algebra = match lift(tower::build_algebra(monad, carrier, &budget))? {
        tower::Build::Built(w) => {
            eqs.extend(lift(fakir::fixes_algebras(&w, &budget))?);
            true
        }
        tower::Build::Refused(_) => false,
    };
    let pass = all_hold(&eqs);
    if cli.json {
        let v = merge(
            envelope("fakir", file, &parsed.name),
            json!({
                "monad": monad.name(),
                "approximation_size": fa.sub_indices.len(),
                "equations": eqs_json(&eqs),
                "algebra_carrier": has_algebra,
                "verdict": if pass { "pass" } else { "violation" },
            }),
        );
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("idempotent approximation ({}) on {}:", monad.name(), parsed.name);
        println!(
            "  approximation carrier: {} of {} elements",
            fa.sub_indices.len(),
            fa.asm.tx.size()
        );
        print_eqs(&eqs);
        println!("verdict: {}", if pass { "pass" } else { "violation" });
    }
    Ok(verdict_code(pass))
}

fn cmd_stone(cli: &Cli, monad: Monad, budget: Budget, file: &Path) -> Result<u8, CmdError> {
    let (parsed, carrier) = load(file)?;
    let r = lift(stone::stone_roundtrip(monad, carrier.clone(), &budget))?;
    let coherence = match carrier.lattice() {
        Some(l) if l.is_distributive() => {
            Some(lift(stone::supercoherence(monad, carrier.clone(), &budget))?)
        }
        _ => None,
    };
    let pass = r.holds();
    if cli.json {
        let v = merge(
            envelope("stone", file, &parsed.name),
            json!({
                "monad": monad.name(),
                "generators": r.generators.len(),
                "total_size": r.total.size(),
                "equations": eqs_json(&r.equations),
                "input_supercoherent": coherence.as_ref().map(|c| serde_json::to_value(c).unwrap()),
                "verdict": if pass { "pass" } else { "violation" },
            }),
        );
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("representation round-trip ({}) on {}:", monad.name(), parsed.name);
        println!("  |T X| = {}, generators = {}", r.total.size(), r.generators.len());
        print_eqs(&r.equations);
        match &coherence {
            Some(c) if c.coherent => println!("  input itself: coherent presentation"),
            Some(c) => println!(
                "  input itself: not supercoherent as presented ({})",
                c.reason.clone().unwrap_or_default()
            ),
            None => println!("  input itself: not a frame, coherence not applicable"),
        }
        println!("verdict: {}", if pass { "pass" } else { "violation" });
    }
    Ok(verdict_code(pass))
}

fn cmd_projective(
    cli: &Cli,
    monad: Monad,
    budget: Budget,
    family_max: usize,
    file: &Path,
) -> Result<u8, CmdError> {
    let (parsed, carrier) = load(file)?;
    let w = match lift(tower::build_algebra(monad, carrier, &budget))? {
        tower::Build::Built(w) => w,
        tower::Build::Refused(r) => {
            let verdict = format!("negative: {}; not an algebra", r.synopsis);
            if cli.json {
                let v = merge(
                    envelope("projective", file, &parsed.name),
                    json!({
                        "monad": monad.name(),
                        "algebra": false,
                        "refusal": refusal_json(&r),
                        "verdict": verdict,
                    }),
                );
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("projectivity ({}) on {}: {}", monad.name(), parsed.name, verdict);
            }
            return Ok(0);
        }
    };
    let coalg = lift(projective::has_coalgebra_structure(&w, &budget))?;
    let retraction = lift(projective::find_retraction(&w, &budget, 1_000_000))?;
    let family: Vec<(String, tower::AlgebraWitness)> =
        corpus::distributive_lattices_up_to(family_max.min(5))
            .into_iter()
            .filter_map(|e| {
                tower::build_algebra(monad, e.carrier.clone(), &budget)
                    .ok()
                    .and_then(|b| b.built())
                    .map(|w| (e.name, w))
            })
            .collect();
    let lifting = lift(projective::lifting_property(&w, &family, &budget))?;
    let has_retraction = retraction.is_some();
    let agree = coalg.has == has_retraction && coalg.has == lifting.all_lift();
    let verdict = if !agree {
        "violation: the three characterisations disagree".to_string()
    } else if coalg.has {
        "projective (relative to family)".to_string()
    } else {
        "negative: not projective (relative to family)".to_string()
    };
    if cli.json {
        let v = merge(
            envelope("projective", file, &parsed.name),
            json!({
                "monad": monad.name(),
                "algebra": true,
                "coalgebra_structure": coalg.has,
                "alternatives_searched": coalg.alternatives,
                "retract_of_free": has_retraction,
                "retraction_canonical": retraction.as_ref().map(|r| r.canonical),
                "lifting": serde_json::to_value(&lifting).unwrap(),
                "family_size": family.len(),
                "agree": agree,
                "verdict": verdict,
            }),
        );
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("projectivity ({}) on {}:", monad.name(), parsed.name);
        println!("  coalgebra structure: {}", coalg.has);
        println!("  retract of a free algebra: {has_retraction}");
        println!(
            "  lifting property vs family of {}: {}/{} lifted",
            family.len(),
            lifting.lifted,
            lifting.morphisms_checked
        );
        println!("  three-way agreement: {agree}");
        println!("verdict: {verdict}");
    }
    Ok(verdict_code(agree))
}

fn cmd_corpus(cli: &Cli, max_size: usize, emit: Option<&Path>) -> Result<u8, CmdError> {
    let mut entries = Vec::new();
    for e in corpus::named_instances() {
        if e.carrier.size() <= max_size {
            entries.push(e);
        }
    }
    entries.extend(corpus::enumerate_posets_up_to(max_size.min(5)));
    entries.extend(corpus::distributive_lattices_up_to(max_size.min(6)));
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir)
            .map_err(|e| CmdError::Usage(format!("{}: {e}", dir.display())))?;
        for e in &entries {
            let kind = lat::kind_of(&e.carrier);
            let text = lat::emit_lat(&e.name, kind, &e.carrier);
            let path = dir.join(format!("{}.lat", e.name));
            std::fs::write(&path, text)
                .map_err(|err| CmdError::Usage(format!("{}: {err}", path.display())))?;
        }
    }
    if cli.json {
        let list: Vec<Value> = entries
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "size": e.carrier.size(),
                    "kind": lat::kind_of(&e.carrier).name(),
                    "provenance": serde_json::to_value(e.provenance).unwrap(),
                })
            })
            .collect();
        let v = json!({
            "schema": 1,
            "command": "corpus",
            "count": entries.len(),
            "entries": list,
            "verdict": "pass",
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("{} corpus entries (max size {max_size}):", entries.len());
        for e in &entries {
            println!(
                "  {} ({} elements, {})",
                e.name,
                e.carrier.size(),
                lat::kind_of(&e.carrier).name()
            );
        }
        if let Some(dir) = emit {
            println!("written to {}", dir.display());
        }
    }
    Ok(0)
}

fn cmd_dot(cli: &Cli, relation: RelationArg, file: &Path) -> Result<u8, CmdError> {
    let (parsed, carrier) = load(file)?;
    let rel = match relation {
        RelationArg::Order => dot::DotRelation::Order,
        RelationArg::TotallyBelow => dot::DotRelation::TotallyBelow,
    };
    let text = dot::emit_dot(&parsed.name, &carrier, rel).map_err(CmdError::Usage)?;
    if cli.json {
        let v = merge(envelope("dot", file, &parsed.name), json!({"dot": text, "verdict": "pass"}));
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        print!("{text}");
    }
    Ok(0)
}
