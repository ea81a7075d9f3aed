//! `ctl`: batch front end for the contingency logic workbench.
//!
//! Exit codes: 0 success (valid, accepted, equal), 1 a countermodel,
//! rejection or difference was found, 2 usage or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use contingency::formula::{parse, pretty, Formula, Mode};
use contingency::lambda::{close_universe, compare_lambdas, Universe};
use contingency::model::{enumerate_models, random_model, ModelSpace, NeighborhoodModel, Property};
use contingency::proofs::{check_derivation, fixtures, AxiomName, CheckOutcome, Derivation, Schema, SystemId};
use contingency::search::{
    almost_monotonicity_experiment, cube_strictness, default_pool, find_first_failure, first_failures,
    lambda_sweep, schema_validity_experiment, trial_seed, verdict_json, CubeConfig, Escalation, MonotonicityOutcome,
    SearchConfig, SearchMode, SearchVerdict, Witness,
};
use contingency::FrameClassSpec;

/// Seed used when `--seed` is not given, so default runs are reproducible.
const DEFAULT_SEED: u64 = 1729;

#[derive(Parser)]
#[command(name = "ctl", version, about = "Contingency logic under neighborhood semantics")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at a state of a model.
    Check(CheckArgs),
    /// Search a frame class for a countermodel.
    Validity(ValidityArgs),
    /// Report the frame properties of a model.
    Props(ModelArgs),
    /// Print the supplementation of a model, or check its properties on
    /// generated models when no model is given.
    Supplement(SupplementArgs),
    /// Check a derivation file in a system.
    Prove(ProveArgs),
    /// Check axiom instances on frame classes.
    Soundness(SoundnessArgs),
    /// Find semantic witnesses for the 12 edges of the system cube.
    Cube(CubeArgs),
    /// Compare the Kuhn and Humberstone λ functions.
    LambdaEq(LambdaArgs),
    /// Evaluate the almost-definability schema (evidence only).
    SchemaExp(SchemaExpArgs),
    /// Look for failures of almost-monotonicity of the selection N′.
    MonotoneExp(MonotoneArgs),
    /// Count (or list) the in-class models of a given size.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    model: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    formula: String,
    #[arg(long, default_value_t = 0)]
    state: usize,
    /// Allow the box operator `[]`.
    #[arg(long)]
    extended: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Exhaustive search over 1..=N states (0 skips it).
    #[arg(long, default_value_t = 2)]
    max_states: usize,
    /// Random models tried after the exhaustive stage.
    #[arg(long, default_value_t = 0)]
    trials: u64,
    /// State count of random models.
    #[arg(long, default_value_t = 3)]
    random_states: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Comma-separated atoms valued by generated models.
    #[arg(long)]
    atoms: Option<String>,
}

#[derive(Args)]
struct ValidityArgs {
    #[arg(long)]
    formula: String,
    #[arg(long, default_value = "all")]
    class: String,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    extended: bool,
}

#[derive(Args)]
struct SupplementArgs {
    #[arg(long)]
    model: Option<PathBuf>,
    /// Without --model: every model with this many states is checked.
    #[arg(long, default_value_t = 2)]
    states: usize,
    /// Without --model: random models per size in --random-states.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value = "3,4")]
    random_states: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct ProveArgs {
    #[arg(long, required_unless_present = "fixtures")]
    system: Option<String>,
    /// Derivation file, one `N. <formula> ; <justification>` per line.
    #[arg(long, required_unless_present = "fixtures")]
    derivation: Option<PathBuf>,
    /// Check the built-in fixture derivations instead, each in its own system.
    #[arg(long, conflicts_with_all = ["system", "derivation"])]
    fixtures: bool,
}

#[derive(Args)]
struct SoundnessArgs {
    /// System to check; all eight when omitted.
    #[arg(long)]
    system: Option<String>,
    /// A single schema instead: EQU, M, C, N, M-alt or C-alt (needs --class).
    #[arg(long, requires = "class")]
    schema: Option<String>,
    #[arg(long)]
    class: Option<String>,
    /// Instance pool, `;`-separated. Default: p; q; !p; !q; p & q; p | q
    #[arg(long)]
    pool: Option<String>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct CubeArgs {
    #[arg(long, default_value_t = 2)]
    max_states: usize,
    /// Continue with larger exhaustive sizes and then random models when needed.
    #[arg(long)]
    escalate: bool,
    /// Largest model space searched exhaustively above --max-states.
    #[arg(long, default_value_t = 2_000_000)]
    exhaustive_budget: u64,
    #[arg(long, default_value_t = 20_000)]
    trials: u64,
    #[arg(long, default_value_t = 4)]
    random_states: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    pool: Option<String>,
}

#[derive(Args)]
struct LambdaArgs {
    /// Compare on this model only; otherwise sweep generated models.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Closure depth for the exhaustive stage (and for --model).
    #[arg(long, default_value_t = 1)]
    depth: usize,
    /// Closure depth for the random stage; defaults to --depth.
    #[arg(long)]
    random_depth: Option<usize>,
    #[arg(long, default_value = "all")]
    class: String,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct SchemaExpArgs {
    #[arg(long, default_value = "all")]
    class: String,
    /// Pool for φ and χ, `;`-separated.
    #[arg(long, default_value = "p; q")]
    pool: String,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct MonotoneArgs {
    /// Universe members, `;`-separated.
    #[arg(long, default_value = "p; q; p | q")]
    universe: String,
    /// Close the universe under ∨ to this depth first.
    #[arg(long, default_value_t = 0)]
    depth: usize,
    #[arg(long, default_value = "all")]
    class: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 3)]
    states: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    states: usize,
    #[arg(long, default_value = "")]
    atoms: String,
    #[arg(long, default_value = "all")]
    class: String,
    /// Print every model (JSON, one per line) instead of the count.
    #[arg(long)]
    list: bool,
}

/// What a subcommand produced: text, the JSON equivalent and the exit code.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

type Fallible<T> = Result<T, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Fallible<Report> {
    match command {
        Command::Check(a) => check(a),
        Command::Validity(a) => validity(a),
        Command::Props(a) => props(a),
        Command::Supplement(a) => supplement(a),
        Command::Prove(a) => prove(a),
        Command::Soundness(a) => soundness(a),
        Command::Cube(a) => cube(a),
        Command::LambdaEq(a) => lambda_eq(a),
        Command::SchemaExp(a) => schema_exp(a),
        Command::MonotoneExp(a) => monotone_exp(a),
        Command::Enumerate(a) => enumerate(a),
    }
}

fn load_model(path: &PathBuf) -> Fallible<NeighborhoodModel> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    NeighborhoodModel::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn formula(text: &str, mode: Mode) -> Fallible<Formula> {
    parse(text, mode).map_err(|e| format!("formula `{text}`: {e}"))
}

fn formula_list(text: &str) -> Fallible<Vec<Formula>> {
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| formula(t, Mode::Core))
        .collect()
}

fn class(text: &str) -> Fallible<FrameClassSpec> {
    text.parse().map_err(|e| format!("frame class `{text}`: {e}"))
}

fn system(text: &str) -> Fallible<SystemId> {
    text.parse().map_err(|e| format!("system `{text}`: {e}"))
}

fn atom_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|a| !a.is_empty())
        .map(str::to_string)
        .collect()
}

/// Atoms of `fs`, unless overridden on the command line.
fn atoms_for(fs: &[Formula], explicit: &Option<String>) -> Vec<String> {
    match explicit {
        Some(text) => atom_list(text),
        None => {
            let mut all = std::collections::BTreeSet::new();
            for f in fs {
                all.extend(f.user_atoms());
            }
            all.into_iter().collect()
        }
    }
}

/// The exhaustive stage, then the random stage, each only when requested.
fn stages(s: &SearchArgs, atoms: Vec<String>, mode: Mode) -> Vec<SearchConfig> {
    let mut out = Vec::new();
    if s.max_states > 0 {
        out.push(SearchConfig {
            mode: SearchMode::Exhaustive {
                min_states: 1,
                max_states: s.max_states,
            },
            atoms: atoms.clone(),
            formula_mode: mode,
        });
    }
    if s.trials > 0 {
        out.push(SearchConfig {
            mode: SearchMode::Random {
                trials: s.trials,
                states: s.random_states,
                seed: s.seed,
            },
            atoms,
            formula_mode: mode,
        });
    }
    out
}

fn model_text(model: &NeighborhoodModel) -> String {
    model.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn witness_json(w: &Witness) -> Value {
    json!({
        "instance": w.formula.to_string(),
        "model": w.model.to_json_value(),
        "state": w.state,
    })
}

fn check(a: CheckArgs) -> Fallible<Report> {
    let mode = if a.extended { Mode::Extended } else { Mode::Core };
    let model = load_model(&a.model)?;
    let f = formula(&a.formula, mode)?;
    let holds = contingency::semantics::holds_at_in(&model, a.state, &f, mode).map_err(|e| e.to_string())?;
    let truth = contingency::semantics::truth_set_in(&model, &f, mode).map_err(|e| e.to_string())?;
    Ok(Report {
        text: format!("{holds}\n"),
        json: json!({
            "formula": f.to_string(),
            "state": a.state,
            "holds": holds,
            "truth_set": truth.to_vec(),
        }),
        code: 0,
    })
}

fn validity(a: ValidityArgs) -> Fallible<Report> {
    let mode = if a.extended { Mode::Extended } else { Mode::Core };
    let f = formula(&a.formula, mode)?;
    let spec = class(&a.class)?;
    let atoms = atoms_for(std::slice::from_ref(&f), &a.search.atoms);
    let configs = stages(&a.search, atoms, mode);
    if configs.is_empty() {
        return Err("nothing to search: give --max-states or --trials".into());
    }
    let mut scopes = Vec::new();
    let mut verdict = None;
    for cfg in configs {
        let (w, scope) = find_first_failure(std::slice::from_ref(&f), spec, &cfg).map_err(|e| e.to_string())?;
        scopes.push(scope.to_string());
        verdict = Some(SearchVerdict::Valid(scope));
        if let Some(w) = w {
            verdict = Some(SearchVerdict::Countermodel {
                model: w.model,
                state: w.state,
            });
            break;
        }
    }
    let scope = scopes.join(" + ");
    let verdict = verdict.expect("at least one stage ran");
    let (text, code) = match verdict.countermodel() {
        Some((model, state)) => (
            format!(
                "countermodel on class {spec} at state {state}, re-verified [{scope}]\n{}",
                model_text(model)
            ),
            1,
        ),
        None => (format!("valid on class {spec} within {scope}\n"), 0),
    };
    Ok(Report {
        text,
        json: verdict_json(&f, spec, &verdict, &scope),
        code,
    })
}

fn props(a: ModelArgs) -> Fallible<Report> {
    let model = load_model(&a.model)?;
    let mut text = String::new();
    let mut obj = serde_json::Map::new();
    for p in [Property::N, Property::I, Property::S, Property::C] {
        let has = model.has_property(p);
        text.push_str(&format!("({p}) {has}\n"));
        obj.insert(p.to_string(), json!(has));
    }
    for (name, spec) in [("quasi-filter", FrameClassSpec::quasi_filter()), ("filter", FrameClassSpec::filter())] {
        let member = model.satisfies_class(spec);
        text.push_str(&format!("{name} {member}\n"));
        obj.insert(name.into(), json!(member));
    }
    Ok(Report {
        text,
        json: Value::Object(obj),
        code: 0,
    })
}

fn supplement(a: SupplementArgs) -> Fallible<Report> {
    if let Some(path) = &a.model {
        let plus = load_model(path)?.supplementation();
        return Ok(Report {
            text: format!("{}\n", plus.to_json()),
            json: plus.to_json_value(),
            code: 0,
        });
    }
    let sizes: Vec<usize> = a
        .random_states
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("state count `{t}`")))
        .collect::<Fallible<_>>()?;
    let mut checked = 0u64;
    let mut failures: Vec<Value> = Vec::new();
    let mut record = |m: NeighborhoodModel| {
        checked += 1;
        let bad = m.supplementation_failures();
        if !bad.is_empty() && failures.len() < 10 {
            failures.push(json!({"model": m.to_json_value(), "failed": bad}));
        }
    };
    let exhaustive = if a.states > 0 {
        let models = enumerate_models(a.states, &[], FrameClassSpec::ALL).map_err(|e| e.to_string())?;
        models.for_each(&mut record);
        format!("all models at |S|={}", a.states)
    } else {
        "no exhaustive stage".into()
    };
    for &n in &sizes {
        for i in 0..a.trials {
            record(random_model(n, &[], FrameClassSpec::ALL, trial_seed(a.seed, i)).map_err(|e| e.to_string())?);
        }
    }
    let scope = format!("{exhaustive}; {} random at |S| in {:?} (seed {})", a.trials, sizes, a.seed);
    let code = if failures.is_empty() { 0 } else { 1 };
    Ok(Report {
        text: format!(
            "{checked} models checked ({scope}): {}\n",
            if failures.is_empty() { "(s), N ⊆ N+, idempotence, (i) and (n) preservation hold" } else { "violations found" }
        ),
        json: json!({"checked": checked, "scope": scope, "violations": failures}),
        code,
    })
}

fn prove(a: ProveArgs) -> Fallible<Report> {
    if a.fixtures {
        return prove_fixtures();
    }
    let (Some(name), Some(path)) = (&a.system, &a.derivation) else {
        return Err("--system and --derivation are required".into());
    };
    let sys = system(name)?;
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let d = Derivation::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(match check_derivation(sys, &d) {
        CheckOutcome::Accepted => Report {
            text: format!("accepted in {sys} ({} lines)\n", d.lines.len()),
            json: json!({"system": sys.to_string(), "outcome": "accepted", "line": null, "reason": null}),
            code: 0,
        },
        CheckOutcome::Rejected { line, reason } => Report {
            text: format!("rejected in {sys} at line {line}: {reason}\n"),
            json: json!({
                "system": sys.to_string(),
                "outcome": "rejected",
                "line": line,
                "reason": reason.to_string(),
            }),
            code: 1,
        },
    })
}

fn prove_fixtures() -> Fallible<Report> {
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut code = 0;
    for fx in fixtures::all() {
        let outcome = check_derivation(fx.system, &fx.derivation());
        let verdict = match &outcome {
            CheckOutcome::Accepted => "accepted".to_string(),
            CheckOutcome::Rejected { line, reason } => {
                code = 1;
                format!("rejected at line {line}: {reason}")
            }
        };
        text.push_str(&format!("{:<24} {:<4} {verdict}\n", fx.name, fx.system.to_string()));
        entries.push(json!({
            "fixture": fx.name,
            "system": fx.system.to_string(),
            "accepted": outcome.is_accepted(),
            "line": outcome.rejected_line(),
        }));
    }
    Ok(Report {
        text,
        json: Value::Array(entries),
        code,
    })
}

fn named_schema(name: &str) -> Fallible<Schema> {
    match name {
        "M-alt" => Ok(Schema::monotone_alternative()),
        "C-alt" => Ok(Schema::conjunction_alternative()),
        other => other.parse::<AxiomName>().map(Schema::axiom),
    }
}

/// Runs a schema over a pool through every stage, keeping the first
/// countermodel of each instance.
fn schema_entry(label: &str, schema: &Schema, pool: &[Formula], spec: FrameClassSpec, s: &SearchArgs) -> Fallible<(String, Value, bool)> {
    let instances = schema.instances(pool);
    let atoms = atoms_for(pool, &s.atoms);
    let mut found: Vec<Option<Witness>> = vec![None; instances.len()];
    let mut scopes = Vec::new();
    for cfg in stages(s, atoms, Mode::Core) {
        let (ws, scope) = first_failures(&instances, spec, &cfg).map_err(|e| e.to_string())?;
        scopes.push(scope.to_string());
        for (slot, w) in found.iter_mut().zip(ws) {
            if slot.is_none() {
                *slot = w;
            }
        }
    }
    let failures: Vec<&Witness> = found.iter().flatten().collect();
    let scope = scopes.join(" + ");
    let mut text = format!(
        "{label} on class {spec}: {} instances, {} countermodels [{scope}]\n",
        instances.len(),
        failures.len()
    );
    for w in &failures {
        text.push_str(&format!("  fails: {} at state {}\n{}", pretty(&w.formula), w.state, model_text(&w.model)));
    }
    let json = json!({
        "schema": label,
        "class": spec.to_string(),
        "instances": instances.len(),
        "countermodels": failures.iter().map(|w| witness_json(w)).collect::<Vec<_>>(),
        "scope": scope,
    });
    Ok((text, json, failures.is_empty()))
}

fn soundness(a: SoundnessArgs) -> Fallible<Report> {
    let pool = match &a.pool {
        Some(text) => formula_list(text)?,
        None => default_pool(),
    };
    if pool.is_empty() {
        return Err("instance pool is empty".into());
    }
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut all_ok = true;
    if let Some(name) = &a.schema {
        let spec = class(a.class.as_deref().unwrap_or("all"))?;
        let (t, j, ok) = schema_entry(name, &named_schema(name)?, &pool, spec, &a.search)?;
        text.push_str(&t);
        entries.push(j);
        all_ok &= ok;
    } else {
        let systems = match &a.system {
            Some(s) => vec![system(s)?],
            None => SystemId::ALL.to_vec(),
        };
        for sys in systems {
            let spec = match &a.class {
                Some(c) => class(c)?,
                None => sys.frame_class(),
            };
            for axiom in sys.axioms() {
                let label = format!("{sys}/{axiom}");
                let (t, j, ok) = schema_entry(&label, &Schema::axiom(axiom), &pool, spec, &a.search)?;
                text.push_str(&t);
                entries.push(j);
                all_ok &= ok;
            }
        }
    }
    text.push_str(if all_ok { "no countermodels\n" } else { "countermodels found\n" });
    Ok(Report {
        text,
        json: json!({ "checks": entries, "sound": all_ok }),
        code: u8::from(!all_ok),
    })
}

fn cube(a: CubeArgs) -> Fallible<Report> {
    let pool = match &a.pool {
        Some(text) => formula_list(text)?,
        None => default_pool(),
    };
    let cfg = CubeConfig {
        max_states: a.max_states,
        pool,
        escalation: a.escalate.then_some(Escalation {
            exhaustive_budget: a.exhaustive_budget,
            random_states: a.random_states,
            trials: a.trials,
            seed: a.seed,
        }),
    };
    let report = cube_strictness(&cfg).map_err(|e| e.to_string())?;
    let mut text = String::new();
    let mut seps = Vec::new();
    for s in &report.separations {
        text.push_str(&format!(
            "{}: falsified {} at state {} with |S|={} [{}]\n{}",
            s.arrow,
            pretty(&s.instance),
            s.state,
            s.model.states(),
            s.scope,
            model_text(&s.model)
        ));
        seps.push(json!({
            "from": s.arrow.from.to_string(),
            "to": s.arrow.to.to_string(),
            "axiom": s.arrow.axiom.to_string(),
            "syntactic_inclusion": s.syntactic_inclusion,
            "instance": s.instance.to_string(),
            "witness": s.model.to_json_value(),
            "state": s.state,
            "scope": s.scope.to_string(),
        }));
    }
    for arrow in &report.missing {
        text.push_str(&format!("{arrow}: no witness within the search bounds\n"));
    }
    text.push_str(&format!(
        "{} of 12 arrows separated\n",
        report.separations.len()
    ));
    let missing: Vec<String> = report.missing.iter().map(|a| a.to_string()).collect();
    Ok(Report {
        text,
        json: json!({ "separations": seps, "missing": missing }),
        code: u8::from(!report.complete()),
    })
}

fn lambda_eq(a: LambdaArgs) -> Fallible<Report> {
    let base_atoms = a
        .search
        .atoms
        .as_deref()
        .map(atom_list)
        .unwrap_or_else(|| vec!["p".into(), "q".into()]);
    let base: Vec<Formula> = base_atoms.iter().map(|x| Formula::atom(x.as_str())).collect();
    if let Some(path) = &a.model {
        let model = load_model(path)?;
        let report = compare_lambdas(&model, &base, a.depth).map_err(|e| e.to_string())?;
        let mut text = String::new();
        for s in &report.states {
            text.push_str(&format!(
                "state {}: |λ_K|={} |λ_H|={} equal={}\n",
                s.state,
                s.lambda_k.len(),
                s.lambda_h.len(),
                s.equal()
            ));
            for d in &s.differences {
                let witness = d.witness.as_ref().map(pretty).unwrap_or_default();
                text.push_str(&format!(
                    "  {}: kuhn={} humberstone={} simplified={} witness {witness}\n",
                    pretty(&d.phi),
                    d.in_kuhn, d.in_humberstone, d.in_simplified
                ));
            }
        }
        return Ok(Report {
            text,
            json: Value::Array(report.to_json()),
            code: u8::from(!report.equal()),
        });
    }
    let spec = class(&a.class)?;
    let mut text = String::new();
    let mut runs = Vec::new();
    let mut equal = true;
    for cfg in stages(&a.search, base_atoms.clone(), Mode::Core) {
        let depth = match cfg.mode {
            SearchMode::Exhaustive { .. } => a.depth,
            SearchMode::Random { .. } => a.random_depth.unwrap_or(a.depth),
        };
        let universe = close_universe(&base, depth).map_err(|e| e.to_string())?;
        let sweep = lambda_sweep(&universe, spec, &cfg).map_err(|e| e.to_string())?;
        text.push_str(&format!(
            "depth {depth} (|U|={}): {} models, {} states, {} with differences [{}]\n",
            sweep.universe_size, sweep.models, sweep.states, sweep.differing_models, sweep.scope
        ));
        equal &= sweep.equal();
        runs.push(json!({
            "depth": depth,
            "universe_size": sweep.universe_size,
            "models": sweep.models,
            "states": sweep.states,
            "differing_models": sweep.differing_models,
            "first_difference": sweep.first_difference.map(|r| Value::Array(r.to_json())),
            "scope": sweep.scope.to_string(),
        }));
    }
    text.push_str(if equal { "λ_K = λ_H everywhere\n" } else { "differences found\n" });
    Ok(Report {
        text,
        json: json!({ "runs": runs, "equal": equal }),
        code: u8::from(!equal),
    })
}

fn schema_exp(a: SchemaExpArgs) -> Fallible<Report> {
    let spec = class(&a.class)?;
    let pool = formula_list(&a.pool)?;
    let atoms = atoms_for(&pool, &a.search.atoms);
    let mut text = String::from("almost-definability schema: evidence only, no expected verdict\n");
    let mut runs = Vec::new();
    for cfg in stages(&a.search, atoms, Mode::Extended) {
        let exp = schema_validity_experiment(spec, &pool, &cfg).map_err(|e| e.to_string())?;
        let mut entries = Vec::new();
        for (inst, verdict) in &exp.entries {
            match verdict.countermodel() {
                None => text.push_str(&format!("  valid        {}\n", pretty(inst))),
                Some((_, state)) => text.push_str(&format!("  countermodel {} (state {state})\n", pretty(inst))),
            }
            entries.push(json!({
                "instance": inst.to_string(),
                "verdict": if verdict.is_valid() { "valid" } else { "countermodel" },
                "witness": verdict.countermodel().map(|(m, _)| m.to_json_value()),
                "state": verdict.countermodel().map(|(_, s)| s),
            }));
        }
        text.push_str(&format!("  [class {spec}, {}]\n", exp.scope));
        runs.push(json!({ "class": spec.to_string(), "scope": exp.scope.to_string(), "entries": entries }));
    }
    Ok(Report {
        text,
        json: json!({ "note": contingency::search::SchemaExperiment::NOTE, "runs": runs }),
        code: 0,
    })
}

fn monotone_exp(a: MonotoneArgs) -> Fallible<Report> {
    let members = formula_list(&a.universe)?;
    let universe = if a.depth == 0 {
        Universe::from_members(members)
    } else {
        close_universe(&members, a.depth)
    }
    .map_err(|e| e.to_string())?;
    let spec = class(&a.class)?;
    let atoms = atoms_for(universe.members(), &None);
    let cfg = SearchConfig {
        mode: SearchMode::Random {
            trials: a.trials,
            states: a.states,
            seed: a.seed,
        },
        atoms,
        formula_mode: Mode::Core,
    };
    let report = almost_monotonicity_experiment(&universe, spec, &cfg).map_err(|e| e.to_string())?;
    let outcome = match report.outcome {
        MonotonicityOutcome::ViolationFound => "violation found",
        MonotonicityOutcome::Inconclusive => "inconclusive",
    };
    let mut text = format!(
        "{outcome}: {} of {} models violate almost-monotonicity of N′ [{}]\n",
        report.models_with_violation, report.models_examined, report.scope
    );
    if let Some(v) = &report.first_violation {
        text.push_str(&format!(
            "  state {}: |{}| ∈ N′ via {} with ∇χ, χ = {}; |{}| ⊆ |{}| but |{}| ∉ N′ (re-verified)\n{}",
            v.state,
            pretty(&v.phi),
            pretty(&v.selected),
            pretty(&v.chi),
            pretty(&v.phi),
            pretty(&v.psi),
            pretty(&v.psi),
            model_text(&v.model)
        ));
    }
    Ok(Report {
        text,
        json: json!({
            "outcome": outcome,
            "models_examined": report.models_examined,
            "models_with_violation": report.models_with_violation,
            "scope": report.scope.to_string(),
            "first_violation": report.first_violation.as_ref().map(|v| json!({
                "model": v.model.to_json_value(),
                "state": v.state,
                "phi": v.phi.to_string(),
                "psi": v.psi.to_string(),
                "selected": v.selected.to_string(),
                "chi": v.chi.to_string(),
            })),
        }),
        code: 0,
    })
}

fn enumerate(a: EnumerateArgs) -> Fallible<Report> {
    let spec = class(&a.class)?;
    let atoms = atom_list(&a.atoms);
    let space = ModelSpace::new(a.states, &atoms, spec).map_err(|e| e.to_string())?;
    if a.list {
        let models: Vec<Value> = space.iter().map(|m| m.to_json_value()).collect();
        let text = space.iter().map(|m| m.to_json() + "\n").collect();
        return Ok(Report {
            text,
            json: Value::Array(models),
            code: 0,
        });
    }
    Ok(Report {
        text: format!("{}\n", space.len()),
        json: json!({
            "states": a.states,
            "atoms": atoms,
            "class": spec.to_string(),
            "count": space.len(),
        }),
        code: 0,
    })
}
