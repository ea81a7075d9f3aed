//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p contingency-core --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{formula_strategy, mutants, naive_holds, naive_tautology};
use contingency::formula::{is_tautology, pretty, render, skeleton};
use contingency::lambda::{
    close_universe, lambda_humberstone_indices, lambda_kuhn_indices, HumberstoneVariant, ModelTheory, Universe,
};
use contingency::model::{enumerate_models, random_model};
use contingency::proofs::{check_derivation, fixtures, Schema, SystemId};
use contingency::search::{
    almost_monotonicity_experiment, axiom_soundness_report, check_validity, cube_strictness, default_pool,
    lambda_sweep, schema_check, trial_seed, CubeConfig, MonotonicityOutcome, SearchConfig, SearchVerdict,
};
use contingency::{parse, Formula, FrameClassSpec, Mode, NeighborhoodModel, Property};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const SEED: u64 = 1729;
const RANDOM_TRIALS: u64 = 10_000;
const RANDOM_STATES: usize = 3;
const SOUNDNESS_BUDGET: Duration = Duration::from_secs(300);
const SUPPLEMENT_TRIALS: u64 = 1_000;
const LAMBDA_TRIALS: u64 = 1_000;
const INCLUSION_UNIVERSES: u64 = 200;
const MONOTONE_TRIALS: u64 = 1_000;
const MIN_FIXTURES: usize = 5;
const MIN_MUTANTS: usize = 100;
const ROUND_TRIPS: u32 = 10_000;
const SKELETONS: u32 = 1_000;

fn f(text: &str) -> Formula {
    parse(text, Mode::Core).unwrap()
}

fn pq() -> Vec<String> {
    vec!["p".into(), "q".into()]
}

/// The two stretches every validity criterion uses.
fn stages() -> [SearchConfig; 2] {
    [
        SearchConfig::exhaustive(2, &["p", "q"]),
        SearchConfig::random(RANDOM_TRIALS, RANDOM_STATES, SEED, &["p", "q"]),
    ]
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Runs `schema` on `spec` at both stages; returns (countermodels, instances checked).
fn schema_stages(label: &str, schema: &Schema, spec: FrameClassSpec) -> (usize, usize) {
    let mut bad = 0;
    let mut checked = 0;
    for cfg in stages() {
        let check = schema_check(label, schema, &default_pool(), spec, &cfg).unwrap();
        bad += check.countermodels.len();
        checked += check.instances;
    }
    (bad, checked)
}

fn c1_soundness() -> Outcome {
    let start = Instant::now();
    let mut bad = 0;
    let mut instances = 0;
    for sys in SystemId::ALL {
        for cfg in stages() {
            let report = axiom_soundness_report(sys, &default_pool(), &cfg).unwrap();
            for check in &report.checks {
                bad += check.countermodels.len();
                instances += check.instances;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad == 0 && elapsed < SOUNDNESS_BUDGET,
        format!(
            "8 systems, {instances} instance checks (|S|<=2 exhaustive + {RANDOM_TRIALS} random at |S|={RANDOM_STATES}), {bad} countermodels, {:.1}s (budget {}s)",
            elapsed.as_secs_f64(),
            SOUNDNESS_BUDGET.as_secs()
        ),
    )
}

fn c2_monotone_and_quasi_filter() -> Outcome {
    let (bm, nm) = schema_stages("M", &Schema::axiom(contingency::proofs::AxiomName::M), FrameClassSpec::from_props([Property::S]));
    let (bc, nc) = schema_stages("C", &Schema::axiom(contingency::proofs::AxiomName::C), FrameClassSpec::quasi_filter());
    outcome(
        bm == 0 && bc == 0,
        format!("M on (s): {nm} instance checks, {bm} countermodels; C on quasi-filters: {nc} instance checks, {bc} countermodels"),
    )
}

fn c3_conjunction_invalid_on_i() -> Outcome {
    let q = f("D p & D q -> D (p & q)");
    let spec = FrameClassSpec::from_props([Property::I]);
    match check_validity(&q, spec, &SearchConfig::exhaustive(2, &["p", "q"])).unwrap() {
        SearchVerdict::Countermodel { model, state } => {
            let ok = model.states() <= 2 && model.satisfies_class(spec) && !naive_holds(&model, state, &q);
            outcome(ok, format!("countermodel at state {state}: {}", model.to_json()))
        }
        SearchVerdict::Valid(scope) => outcome(false, format!("no countermodel ({scope})")),
    }
}

fn c4_cube() -> Outcome {
    let cfg = CubeConfig {
        escalation: None,
        ..CubeConfig::default()
    };
    let report = cube_strictness(&cfg).unwrap();
    let verified = report.separations.iter().all(|s| {
        s.syntactic_inclusion
            && s.model.states() <= 2
            && s.model.satisfies_class(s.arrow.from.frame_class())
            && !naive_holds(&s.model, s.state, &s.instance)
    });
    let rk = report
        .separations
        .iter()
        .find(|s| s.arrow.from == SystemId::R && s.arrow.to == SystemId::K)
        .is_some_and(|s| s.model.states() == 1 && s.model.neighborhood(0).is_empty() && s.instance == f("D top"));
    let missing: Vec<String> = report.missing.iter().map(|a| a.to_string()).collect();
    let mut detail = format!(
        "{}/12 witnesses with |S|<=2, all re-verified: {verified}; R->K empty-neighborhood witness: {rk}",
        report.separations.len()
    );
    if !missing.is_empty() {
        detail.push_str(&format!("; missing at |S|<=2: {}", missing.join(", ")));
        let escalated = cube_strictness(&CubeConfig::default()).unwrap();
        let sizes: Vec<String> = escalated
            .separations
            .iter()
            .filter(|s| report.missing.contains(&s.arrow))
            .map(|s| format!("{} at |S|={}", s.arrow, s.model.states()))
            .collect();
        detail.push_str(&format!(
            "; with larger models {}/12 ({})",
            escalated.separations.len(),
            sizes.join(", ")
        ));
    }
    outcome(report.complete() && verified && rk, detail)
}

fn supplementation_violation(m: &NeighborhoodModel) -> Option<&'static str> {
    let plus = m.supplementation();
    if !plus.has_property(Property::S) {
        return Some("(s)");
    }
    for s in 0..m.states() {
        let (n, np) = (m.neighborhood(s), plus.neighborhood(s));
        if !n.iter().all(|x| np.contains(x)) {
            return Some("N ⊆ N+");
        }
        // N⁺ is exactly the superset closure.
        let expected = (0..1u32 << m.states())
            .filter(|&y| n.iter().any(|x| x.bits() & !y == 0))
            .count();
        if np.len() != expected {
            return Some("superset closure");
        }
    }
    if plus.supplementation() != plus {
        return Some("idempotence");
    }
    for p in [Property::I, Property::N] {
        if m.has_property(p) && !plus.has_property(p) {
            return Some(if p == Property::I { "(i) preserved" } else { "(n) preserved" });
        }
    }
    None
}

fn c5_supplementation() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for m in enumerate_models(2, &[], FrameClassSpec::ALL).unwrap() {
        checked += 1;
        bad.extend(supplementation_violation(&m));
    }
    for states in [3, 4] {
        for i in 0..SUPPLEMENT_TRIALS {
            let m = random_model(states, &[], FrameClassSpec::ALL, trial_seed(SEED, i)).unwrap();
            checked += 1;
            bad.extend(supplementation_violation(&m));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} models (all at |S|=2, {SUPPLEMENT_TRIALS} random at |S|=3 and 4), {} violations {bad:?}", bad.len()),
    )
}

fn c6_lambda() -> Outcome {
    let u1 = close_universe(&[f("p"), f("q")], 1).unwrap();
    let exhaustive = lambda_sweep(&u1, FrameClassSpec::ALL, &SearchConfig::exhaustive(2, &["p", "q"])).unwrap();
    let u2 = close_universe(&[f("p"), f("q")], 2).unwrap();
    let random = lambda_sweep(
        &u2,
        FrameClassSpec::ALL,
        &SearchConfig::random(LAMBDA_TRIALS, 3, SEED, &["p", "q"]),
    )
    .unwrap();
    // K ⊆ H on universes that are random subsets of the depth-2 closure.
    let mut inclusion_failures = 0;
    for i in 0..INCLUSION_UNIVERSES {
        let seed = trial_seed(SEED ^ 0x5eed, i);
        let members: Vec<Formula> = u2
            .members()
            .iter()
            .enumerate()
            .filter(|(k, _)| (seed >> (k % 64)) & 1 == 1)
            .map(|(_, g)| g.clone())
            .collect();
        let Ok(u) = Universe::from_members(members) else { continue };
        let m = random_model(3, &pq(), FrameClassSpec::ALL, seed).unwrap();
        let theory = ModelTheory::new(&m, &u).unwrap();
        for s in 0..3 {
            let x = theory.at(s);
            let h = lambda_humberstone_indices(&x, HumberstoneVariant::Original);
            inclusion_failures += lambda_kuhn_indices(&x).iter().filter(|k| !h.contains(k)).count();
        }
    }
    outcome(
        exhaustive.equal() && random.equal() && inclusion_failures == 0,
        format!(
            "{} models at |S|<=2 (depth 1, |U|={}): {} differing; {} random at |S|=3 (depth 2, |U|={}): {} differing; K⊆H failures on {INCLUSION_UNIVERSES} unclosed universes: {inclusion_failures}",
            exhaustive.models, exhaustive.universe_size, exhaustive.differing_models, random.models, random.universe_size, random.differing_models
        ),
    )
}

fn c7_replacements() -> Outcome {
    let fx = fixtures::MONOTONE_ALTERNATIVE;
    let d = fx.derivation();
    let accepted = check_derivation(SystemId::M, &d).is_accepted();
    let s_class = FrameClassSpec::from_props([Property::S]);
    let lines_valid = d.lines.iter().all(|l| {
        let atoms: Vec<String> = l.formula.user_atoms().into_iter().collect();
        let cfg = SearchConfig::exhaustive(2, &[]).with_atoms(atoms);
        check_validity(&l.formula, s_class, &cfg).unwrap().is_valid()
    });
    let (bm, nm) = schema_stages("M-alt", &Schema::monotone_alternative(), s_class);
    let (bc, nc) = schema_stages("C-alt", &Schema::conjunction_alternative(), FrameClassSpec::quasi_filter());
    outcome(
        accepted && lines_valid && bm == 0 && bc == 0,
        format!(
            "fixture accepted in M: {accepted}, {} lines valid on (s) at |S|<=2: {lines_valid}; M' on (s): {nm} checks, {bm} countermodels; C' on quasi-filters: {nc} checks, {bc} countermodels",
            d.lines.len()
        ),
    )
}

fn c8_almost_monotonicity() -> Outcome {
    let u = close_universe(&[f("p"), f("q")], 1).unwrap();
    let mut instances = 0;
    let mut failures = 0;
    for i in 0..MONOTONE_TRIALS {
        let m = random_model(3, &pq(), FrameClassSpec::ALL, trial_seed(SEED, i)).unwrap();
        let sets: Vec<Vec<bool>> = u
            .members()
            .iter()
            .map(|g| (0..3).map(|t| naive_holds(&m, t, g)).collect())
            .collect();
        let closed_for = |b: usize| {
            sets.iter().all(|c| {
                let union: Vec<bool> = sets[b].iter().zip(c).map(|(x, y)| *x || *y).collect();
                sets.contains(&union)
            })
        };
        let theory = ModelTheory::new(&m, &u).unwrap();
        for s in 0..3 {
            let lk = lambda_kuhn_indices(&theory.at(s));
            for &a in &lk {
                for b in 0..u.len() {
                    let sub = sets[a].iter().zip(&sets[b]).all(|(x, y)| !x || *y);
                    if sub && closed_for(b) {
                        instances += 1;
                        failures += usize::from(!lk.contains(&b));
                    }
                }
            }
        }
    }
    let universe = Universe::from_members(vec![f("p"), f("q"), f("p | q")]).unwrap();
    let report = almost_monotonicity_experiment(
        &universe,
        FrameClassSpec::ALL,
        &SearchConfig::random(MONOTONE_TRIALS, 3, SEED, &["p", "q"]),
    )
    .unwrap();
    let witness = match &report.first_violation {
        Some(v) => format!(
            "first at state {} with phi={}, psi={} via {}/{}",
            v.state,
            pretty(&v.phi),
            pretty(&v.psi),
            pretty(&v.selected),
            pretty(&v.chi)
        ),
        None => "none".into(),
    };
    let verdict = match report.outcome {
        MonotonicityOutcome::ViolationFound => "violation found",
        MonotonicityOutcome::Inconclusive => "inconclusive",
    };
    outcome(
        failures == 0 && instances > 0,
        format!(
            "lambda_K: {instances} instances, {failures} failures; N' experiment: {verdict} ({} of {} models; {witness})",
            report.models_with_violation, report.models_examined
        ),
    )
}

fn c9_proof_checker() -> Outcome {
    let all = fixtures::all();
    let accepted = all
        .iter()
        .filter(|fx| check_derivation(fx.system, &fx.derivation()).is_accepted())
        .count();
    let mut total = 0;
    let mut wrong = Vec::new();
    for fx in &all {
        for m in mutants(fx.name, fx.system, &fx.derivation()) {
            total += 1;
            if check_derivation(m.system, &m.derivation).rejected_line() != Some(m.first_bad_line) {
                wrong.push(m.label);
            }
        }
    }
    outcome(
        accepted == all.len() && accepted >= MIN_FIXTURES && total >= MIN_MUTANTS && wrong.is_empty(),
        format!(
            "{accepted}/{} fixtures accepted; {total} mutants, {} not rejected at the expected line {wrong:?}",
            all.len(),
            wrong.len()
        ),
    )
}

fn c10_parser() -> Outcome {
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let formulas = formula_strategy(&["p", "q", "r", "s"], 6, false);
    let mut round_trip_failures = 0;
    let mut depths = BTreeSet::new();
    for _ in 0..ROUND_TRIPS {
        let g = formulas.new_tree(&mut runner).unwrap().current();
        depths.insert(common::depth(&g));
        if parse(&render(&g), Mode::Core).as_ref() != Ok(&g) {
            round_trip_failures += 1;
        }
    }
    let skeletons = formula_strategy(&["p", "q", "r"], 5, false);
    let mut disagreements = 0;
    let mut tautologies = 0;
    for i in 0..SKELETONS {
        let g = skeletons.new_tree(&mut runner).unwrap().current();
        // Every other sample is forced into a tautology shape.
        let g = if i % 2 == 0 { g } else { Formula::or(g.clone(), Formula::not(g)) };
        let expected = naive_tautology(&g);
        tautologies += u32::from(expected);
        if is_tautology(&g) != Ok(expected) || skeleton(&g).restore() != g {
            disagreements += 1;
        }
    }
    let max_depth = depths.iter().max().copied().unwrap_or(0);
    outcome(
        round_trip_failures == 0 && disagreements == 0 && max_depth <= 6,
        format!(
            "{ROUND_TRIPS} round trips (max depth {max_depth}), {round_trip_failures} failures; {SKELETONS} skeletons ({tautologies} tautologies), {disagreements} disagreements"
        ),
    )
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C1", "axiom soundness for all eight systems", c1_soundness),
        ("C2", "M valid on (s), C valid on quasi-filters", c2_monotone_and_quasi_filter),
        ("C3", "C invalid on (i) frames", c3_conjunction_invalid_on_i),
        ("C4", "cube separations within two states", c4_cube),
        ("C5", "supplementation properties", c5_supplementation),
        ("C6", "Kuhn and Humberstone lambdas agree", c6_lambda),
        ("C7", "M' and C' replacements", c7_replacements),
        ("C8", "almost-monotonicity contrast", c8_almost_monotonicity),
        ("C9", "proof checker fixtures and mutants", c9_proof_checker),
        ("C10", "parser round trip and tautology oracle", c10_parser),
    ];
    let mut failed = Vec::new();
    for (id, title, run) in criteria {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id} {title}: {} ({:.1}s)", o.detail, start.elapsed().as_secs_f64());
        if !o.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
