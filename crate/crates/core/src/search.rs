//! Validity checking and countermodel search over frame classes.
//!
//! Models are scanned in a fixed order: ascending state count, then the
//! enumeration order of [`ModelSpace`] (or trial order in random mode).
//! Scans run in parallel but always report the first witness in that order.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::formula::{Formula, Mode};
use crate::lambda::{compare_in_universe, LambdaReport, Universe};
use crate::model::{random_model, FrameClassSpec, ModelError, ModelSpace, NeighborhoodModel, StateSet};
use crate::proofs::{AxiomName, Schema, SystemId};
use crate::semantics::{first_failure, holds_at_in, truth_set, EvalError};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("state count {states} exceeds the exhaustive bound {limit}")]
    BoundExceeded { states: usize, limit: usize },
    #[error("atom `{0}` is not among the search atoms")]
    AtomsNotCovered(String),
    #[error("box operator is not allowed in core mode")]
    BoxNotAllowed,
    #[error("instance pool is empty")]
    EmptyPool,
    #[error("no separation witness found for {0}")]
    WitnessNotFound(Arrow),
    #[error("witness failed re-verification")]
    VerificationFailed,
    #[error(transparent)]
    Model(ModelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl From<ModelError> for SearchError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::BoundExceeded { states, limit } => SearchError::BoundExceeded { states, limit },
            other => SearchError::Model(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Every in-class model with `min_states..=max_states` states.
    Exhaustive { min_states: usize, max_states: usize },
    /// `trials` seeded random in-class models with exactly `states` states.
    Random { trials: u64, states: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Atoms every generated model values.
    pub atoms: Vec<String>,
    pub formula_mode: Mode,
}

impl SearchConfig {
    pub fn exhaustive(max_states: usize, atoms: &[&str]) -> SearchConfig {
        SearchConfig {
            mode: SearchMode::Exhaustive {
                min_states: 1,
                max_states,
            },
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
            formula_mode: Mode::Core,
        }
    }

    pub fn random(trials: u64, states: usize, seed: u64, atoms: &[&str]) -> SearchConfig {
        SearchConfig {
            mode: SearchMode::Random { trials, states, seed },
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
            formula_mode: Mode::Core,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> SearchConfig {
        self.formula_mode = mode;
        self
    }

    pub fn with_atoms(mut self, atoms: Vec<String>) -> SearchConfig {
        self.atoms = atoms;
        self
    }
}

/// What a `Valid` verdict actually covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    Exhaustive {
        min_states: usize,
        max_states: usize,
        models: u64,
    },
    Random {
        trials: u64,
        states: usize,
        seed: u64,
    },
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Exhaustive {
                min_states,
                max_states,
                models,
            } => write!(f, "exhaustive {min_states}<=|S|<={max_states} ({models} models)"),
            Scope::Random { trials, states, seed } => {
                write!(f, "random {trials} models at |S|={states} (seed {seed})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchVerdict {
    Valid(Scope),
    Countermodel { model: NeighborhoodModel, state: usize },
}

impl SearchVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, SearchVerdict::Valid(_))
    }

    pub fn countermodel(&self) -> Option<(&NeighborhoodModel, usize)> {
        match self {
            SearchVerdict::Valid(_) => None,
            SearchVerdict::Countermodel { model, state } => Some((model, *state)),
        }
    }
}

/// A model and state falsifying one of the queried formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub model: NeighborhoodModel,
    pub state: usize,
    pub formula: Formula,
}

/// One contiguous stretch of the search order.
enum Segment {
    Space(ModelSpace),
    Random {
        states: usize,
        trials: u64,
        seed: u64,
        atoms: Vec<String>,
        spec: FrameClassSpec,
    },
}

impl Segment {
    fn len(&self) -> u64 {
        match self {
            Segment::Space(space) => space.len(),
            Segment::Random { trials, .. } => *trials,
        }
    }

    fn get(&self, i: u64) -> NeighborhoodModel {
        match self {
            Segment::Space(space) => space.get(i),
            Segment::Random {
                states,
                seed,
                atoms,
                spec,
                ..
            } => random_model(*states, atoms, *spec, trial_seed(*seed, i))
                .expect("segment bounds are validated up front"),
        }
    }
}

/// Seed of the `i`-th random trial (splitmix64 of the pair).
pub fn trial_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed
        .wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn segments(spec: FrameClassSpec, cfg: &SearchConfig) -> Result<(Vec<Segment>, Scope), SearchError> {
    match cfg.mode {
        SearchMode::Exhaustive {
            min_states,
            max_states,
        } => {
            let segs = (min_states.max(1)..=max_states)
                .map(|n| ModelSpace::new(n, &cfg.atoms, spec).map(Segment::Space))
                .collect::<Result<Vec<_>, _>>()?;
            let models = segs.iter().map(Segment::len).sum();
            Ok((
                segs,
                Scope::Exhaustive {
                    min_states: min_states.max(1),
                    max_states,
                    models,
                },
            ))
        }
        SearchMode::Random { trials, states, seed } => {
            // Validates the bound once so `Segment::get` cannot fail.
            random_model(states, &cfg.atoms, spec, seed)?;
            Ok((
                vec![Segment::Random {
                    states,
                    trials,
                    seed,
                    atoms: cfg.atoms.clone(),
                    spec,
                }],
                Scope::Random { trials, states, seed },
            ))
        }
    }
}

fn validate_queries(queries: &[Formula], cfg: &SearchConfig) -> Result<(), SearchError> {
    for q in queries {
        if cfg.formula_mode == Mode::Core && q.contains_box() {
            return Err(SearchError::BoxNotAllowed);
        }
        if let Some(a) = q.user_atoms().into_iter().find(|a| !cfg.atoms.contains(a)) {
            return Err(SearchError::AtomsNotCovered(a));
        }
    }
    Ok(())
}

fn verify(w: &Witness, mode: Mode) -> Result<(), SearchError> {
    if holds_at_in(&w.model, w.state, &w.formula, mode)? {
        return Err(SearchError::VerificationFailed);
    }
    Ok(())
}

fn failing(model: &NeighborhoodModel, q: &Formula, mode: Mode) -> Option<usize> {
    first_failure(model, q, mode).expect("queries are validated before scanning")
}

/// The first model in search order where some query fails, checking the
/// queries in the given order at each model.
pub fn find_first_failure(
    queries: &[Formula],
    spec: FrameClassSpec,
    cfg: &SearchConfig,
) -> Result<(Option<Witness>, Scope), SearchError> {
    validate_queries(queries, cfg)?;
    let (segs, scope) = segments(spec, cfg)?;
    let mode = cfg.formula_mode;
    for seg in &segs {
        let found = (0..seg.len()).into_par_iter().find_map_first(|i| {
            let model = seg.get(i);
            queries.iter().find_map(|q| {
                failing(&model, q, mode).map(|state| Witness {
                    model: model.clone(),
                    state,
                    formula: q.clone(),
                })
            })
        });
        if let Some(w) = found {
            verify(&w, mode)?;
            return Ok((Some(w), scope));
        }
    }
    Ok((None, scope))
}

/// For every query, its first countermodel in search order (if any).
pub fn first_failures(
    queries: &[Formula],
    spec: FrameClassSpec,
    cfg: &SearchConfig,
) -> Result<(Vec<Option<Witness>>, Scope), SearchError> {
    validate_queries(queries, cfg)?;
    let (segs, scope) = segments(spec, cfg)?;
    let mode = cfg.formula_mode;
    let mut results: Vec<Option<Witness>> = vec![None; queries.len()];
    for seg in &segs {
        let open: Vec<usize> = (0..queries.len()).filter(|&k| results[k].is_none()).collect();
        if open.is_empty() {
            break;
        }
        let merge = |mut a: Vec<Option<(u64, usize)>>, b: Vec<Option<(u64, usize)>>| {
            for (x, y) in a.iter_mut().zip(b) {
                *x = match (*x, y) {
                    (Some(p), Some(q)) => Some(if q.0 < p.0 { q } else { p }),
                    (p, q) => p.or(q),
                };
            }
            a
        };
        let firsts = (0..seg.len())
            .into_par_iter()
            .fold(
                || vec![None; open.len()],
                |mut acc: Vec<Option<(u64, usize)>>, i| {
                    let model = seg.get(i);
                    for (slot, &k) in acc.iter_mut().zip(&open) {
                        if slot.is_none() {
                            if let Some(state) = failing(&model, &queries[k], mode) {
                                *slot = Some((i, state));
                            }
                        }
                    }
                    acc
                },
            )
            .reduce(|| vec![None; open.len()], merge);
        for (hit, &k) in firsts.into_iter().zip(&open) {
            if let Some((i, state)) = hit {
                let w = Witness {
                    model: seg.get(i),
                    state,
                    formula: queries[k].clone(),
                };
                verify(&w, mode)?;
                results[k] = Some(w);
            }
        }
    }
    Ok((results, scope))
}

pub fn check_validity(f: &Formula, spec: FrameClassSpec, cfg: &SearchConfig) -> Result<SearchVerdict, SearchError> {
    let (found, scope) = find_first_failure(std::slice::from_ref(f), spec, cfg)?;
    Ok(match found {
        Some(w) => SearchVerdict::Countermodel {
            model: w.model,
            state: w.state,
        },
        None => SearchVerdict::Valid(scope),
    })
}

/// Machine-readable form of a validity verdict; `scope` describes what was
/// searched (possibly several stages).
pub fn verdict_json(query: &Formula, spec: FrameClassSpec, verdict: &SearchVerdict, scope: &str) -> serde_json::Value {
    let (name, witness, state) = match verdict {
        SearchVerdict::Valid(_) => ("valid", serde_json::Value::Null, serde_json::Value::Null),
        SearchVerdict::Countermodel { model, state } => ("countermodel", model.to_json_value(), json!(state)),
    };
    json!({
        "query": query.to_string(),
        "class": spec.to_string(),
        "verdict": name,
        "witness": witness,
        "state": state,
        "scope": scope,
    })
}

/// The scope a configuration covers, without running anything.
pub fn scope_of(spec: FrameClassSpec, cfg: &SearchConfig) -> Result<Scope, SearchError> {
    segments(spec, cfg).map(|(_, scope)| scope)
}

/// Instance-wise validity of a schema over a pool.
#[derive(Clone, Debug)]
pub struct SchemaCheck {
    pub label: String,
    pub class: FrameClassSpec,
    pub instances: usize,
    pub countermodels: Vec<Witness>,
    pub scope: Scope,
}

impl SchemaCheck {
    pub fn all_valid(&self) -> bool {
        self.countermodels.is_empty()
    }
}

impl fmt::Display for SchemaCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on class {}: {} instances, {} countermodels [{}]",
            self.label,
            self.class,
            self.instances,
            self.countermodels.len(),
            self.scope
        )
    }
}

pub fn schema_check(
    label: &str,
    schema: &Schema,
    pool: &[Formula],
    spec: FrameClassSpec,
    cfg: &SearchConfig,
) -> Result<SchemaCheck, SearchError> {
    if pool.is_empty() {
        return Err(SearchError::EmptyPool);
    }
    let instances = schema.instances(pool);
    let (found, scope) = first_failures(&instances, spec, cfg)?;
    Ok(SchemaCheck {
        label: label.to_string(),
        class: spec,
        instances: instances.len(),
        countermodels: found.into_iter().flatten().collect(),
        scope,
    })
}

/// The default instance pool `{p, q, ¬p, ¬q, p∧q, p∨q}`.
pub fn default_pool() -> Vec<Formula> {
    let p = Formula::atom("p");
    let q = Formula::atom("q");
    vec![
        p.clone(),
        q.clone(),
        Formula::not(p.clone()),
        Formula::not(q.clone()),
        Formula::and(p.clone(), q.clone()),
        Formula::or(p, q),
    ]
}

#[derive(Clone, Debug)]
pub struct SoundnessReport {
    pub system: SystemId,
    pub class: FrameClassSpec,
    pub checks: Vec<SchemaCheck>,
}

impl SoundnessReport {
    pub fn sound(&self) -> bool {
        self.checks.iter().all(SchemaCheck::all_valid)
    }
}

/// Checks every axiom schema of `sys` instance-wise on the system's frame class.
pub fn axiom_soundness_report(sys: SystemId, pool: &[Formula], cfg: &SearchConfig) -> Result<SoundnessReport, SearchError> {
    let class = sys.frame_class();
    let checks = sys
        .axioms()
        .into_iter()
        .map(|a| schema_check(a.tag(), &Schema::axiom(a), pool, class, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SoundnessReport {
        system: sys,
        class,
        checks,
    })
}

/// An edge of the cube: `to` adds `axiom` to `from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub from: SystemId,
    pub to: SystemId,
    pub axiom: AxiomName,
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} (+{})", self.from, self.to, self.axiom)
    }
}

/// The 12 edges of the lattice generated by `ΔM`, `ΔC`, `ΔN` over `E`.
pub fn cube_arrows() -> Vec<Arrow> {
    let mut arrows = Vec::new();
    for from in SystemId::ALL {
        let (m, c, n) = from.extras();
        let steps = [
            (!m, AxiomName::M, (true, c, n)),
            (!c, AxiomName::C, (m, true, n)),
            (!n, AxiomName::N, (m, c, true)),
        ];
        for (open, axiom, (m2, c2, n2)) in steps {
            if open {
                arrows.push(Arrow {
                    from,
                    to: SystemId::from_extras(m2, c2, n2),
                    axiom,
                });
            }
        }
    }
    arrows
}

/// Where to look once the exhaustive bound yields nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Escalation {
    /// Exhaustive sizes above `max_states` are only searched when their
    /// model space has at most this many models.
    pub exhaustive_budget: u64,
    pub random_states: usize,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeConfig {
    pub max_states: usize,
    pub pool: Vec<Formula>,
    /// Without escalation only `1..=max_states` is searched exhaustively.
    /// With it, the remaining exhaustive sizes up to 3 follow (those within
    /// the budget), then random models at `random_states`.
    pub escalation: Option<Escalation>,
}

impl Default for CubeConfig {
    fn default() -> Self {
        CubeConfig {
            max_states: 2,
            pool: default_pool(),
            escalation: Some(Escalation {
                exhaustive_budget: 2_000_000,
                random_states: 4,
                trials: 20_000,
                seed: 0,
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Separation {
    pub arrow: Arrow,
    /// The falsified instance of the added axiom.
    pub instance: Formula,
    pub model: NeighborhoodModel,
    pub state: usize,
    /// The search stretch in which the witness was found.
    pub scope: Scope,
    /// `from`'s axioms are all axioms of `to`.
    pub syntactic_inclusion: bool,
}

#[derive(Clone, Debug)]
pub struct CubeReport {
    pub separations: Vec<Separation>,
    pub missing: Vec<Arrow>,
}

impl CubeReport {
    pub fn complete(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn into_result(self) -> Result<Vec<Separation>, SearchError> {
        match self.missing.first() {
            Some(&arrow) => Err(SearchError::WitnessNotFound(arrow)),
            None => Ok(self.separations),
        }
    }
}

/// For each cube arrow `S1 → S2`, a model in `S1`'s frame class falsifying
/// an instance of the axiom `S2` adds. Since `S1` is sound for its class,
/// the instance is not a theorem of `S1`.
pub fn cube_strictness(cfg: &CubeConfig) -> Result<CubeReport, SearchError> {
    if cfg.pool.is_empty() {
        return Err(SearchError::EmptyPool);
    }
    let atoms: Vec<String> = {
        let mut set = std::collections::BTreeSet::new();
        for f in &cfg.pool {
            set.extend(f.user_atoms());
        }
        set.into_iter().collect()
    };
    let stage = |mode| SearchConfig {
        mode,
        atoms: atoms.clone(),
        formula_mode: Mode::Core,
    };
    let stages_for = |spec: FrameClassSpec| -> Result<Vec<SearchConfig>, SearchError> {
        let mut stages = vec![stage(SearchMode::Exhaustive {
            min_states: 1,
            max_states: cfg.max_states,
        })];
        if let Some(esc) = cfg.escalation {
            for n in cfg.max_states + 1..=crate::model::MAX_EXHAUSTIVE_STATES {
                if ModelSpace::new(n, &atoms, spec)?.len() <= esc.exhaustive_budget {
                    stages.push(stage(SearchMode::Exhaustive {
                        min_states: n,
                        max_states: n,
                    }));
                }
            }
            stages.push(stage(SearchMode::Random {
                trials: esc.trials,
                states: esc.random_states,
                seed: esc.seed,
            }));
        }
        Ok(stages)
    };
    let mut report = CubeReport {
        separations: Vec::new(),
        missing: Vec::new(),
    };
    for arrow in cube_arrows() {
        let instances = Schema::axiom(arrow.axiom).instances(&cfg.pool);
        let spec = arrow.from.frame_class();
        let mut found = None;
        for stage in &stages_for(spec)? {
            let (w, scope) = find_first_failure(&instances, spec, stage)?;
            if let Some(w) = w {
                found = Some((w, scope));
                break;
            }
        }
        match found {
            Some((w, scope)) => report.separations.push(Separation {
                arrow,
                instance: w.formula,
                model: w.model,
                state: w.state,
                scope,
                syntactic_inclusion: arrow.from.is_included_in(arrow.to),
            }),
            None => report.missing.push(arrow),
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct SchemaExperiment {
    pub class: FrameClassSpec,
    pub scope: Scope,
    pub entries: Vec<(Formula, SearchVerdict)>,
}

impl SchemaExperiment {
    /// Evidence only: no expected verdict exists for neighborhood classes,
    /// and `□φ` is read as `φ^M ∈ N(s)`.
    pub const NOTE: &'static str =
        "evidence only; box read as truth set in N(s); no expected verdict for neighborhood classes";
}

/// Checks instances of `∇χ → (□φ ↔ (Δφ ∧ Δ(χ→φ)))` over `pool`.
pub fn schema_validity_experiment(
    spec: FrameClassSpec,
    pool: &[Formula],
    cfg: &SearchConfig,
) -> Result<SchemaExperiment, SearchError> {
    if pool.is_empty() {
        return Err(SearchError::EmptyPool);
    }
    let cfg = cfg.clone().with_mode(Mode::Extended);
    let instances = Schema::almost_definability().instances(pool);
    let (found, scope) = first_failures(&instances, spec, &cfg)?;
    let entries = instances
        .into_iter()
        .zip(found)
        .map(|(f, w)| {
            let verdict = match w {
                Some(w) => SearchVerdict::Countermodel {
                    model: w.model,
                    state: w.state,
                },
                None => SearchVerdict::Valid(scope.clone()),
            };
            (f, verdict)
        })
        .collect();
    Ok(SchemaExperiment {
        class: spec,
        scope,
        entries,
    })
}

/// A state where the selection `N′(s)` is not upward closed on truth sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityViolation {
    pub model: NeighborhoodModel,
    pub state: usize,
    /// `φ^M ∈ N′(s)`.
    pub phi: Formula,
    /// `φ^M ⊆ ψ^M` but `ψ^M ∉ N′(s)`.
    pub psi: Formula,
    /// The member whose selection puts `φ^M` into `N′(s)`.
    pub selected: Formula,
    /// The `∇χ` witness for `selected`.
    pub chi: Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonotonicityOutcome {
    ViolationFound,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub scope: Scope,
    pub models_examined: u64,
    pub models_with_violation: u64,
    /// The first violation in search order, re-verified.
    pub first_violation: Option<MonotonicityViolation>,
    pub outcome: MonotonicityOutcome,
}

/// `N′(s) = {φ^M : φ ∈ U, Δφ ∧ Δ(χ→φ) ∧ ∇χ at s for some χ ∈ U}`, returned
/// with the `(selected, χ)` indices behind each truth set.
fn selected_sets(
    model: &NeighborhoodModel,
    universe: &Universe,
    implications: &[Vec<Formula>],
    state: usize,
) -> Vec<(StateSet, usize, usize)> {
    let members = universe.members();
    let delta = |f: &Formula| {
        truth_set(model, &Formula::delta(f.clone()))
            .expect("atoms are validated before scanning")
            .contains(state)
    };
    let delta_members: Vec<bool> = members.iter().map(delta).collect();
    let mut out: Vec<(StateSet, usize, usize)> = Vec::new();
    for (i, phi) in members.iter().enumerate() {
        if !delta_members[i] {
            continue;
        }
        let ts = truth_set(model, phi).expect("atoms are validated before scanning");
        if out.iter().any(|(x, _, _)| *x == ts) {
            continue;
        }
        if let Some(chi) = (0..members.len()).find(|&c| !delta_members[c] && delta(&implications[c][i])) {
            out.push((ts, i, chi));
        }
    }
    out
}

fn monotonicity_violation(
    model: &NeighborhoodModel,
    universe: &Universe,
    implications: &[Vec<Formula>],
) -> Option<MonotonicityViolation> {
    let members = universe.members();
    let truths: Vec<StateSet> = members
        .iter()
        .map(|f| truth_set(model, f).expect("atoms are validated before scanning"))
        .collect();
    for state in 0..model.states() {
        let selected = selected_sets(model, universe, implications, state);
        let in_selection = |x: StateSet| selected.iter().any(|(y, _, _)| *y == x);
        for (phi, &x) in truths.iter().enumerate() {
            let Some(&(_, sel, chi)) = selected.iter().find(|(y, _, _)| *y == x) else {
                continue;
            };
            if let Some(psi) = (0..members.len()).find(|&j| x.is_subset(truths[j]) && !in_selection(truths[j])) {
                return Some(MonotonicityViolation {
                    model: model.clone(),
                    state,
                    phi: members[phi].clone(),
                    psi: members[psi].clone(),
                    selected: members[sel].clone(),
                    chi: members[chi].clone(),
                });
            }
        }
    }
    None
}

/// Re-checks a violation by evaluating whole selection formulas
/// `Δφ ∧ Δ(χ→φ) ∧ ∇χ` directly.
pub fn verify_violation(v: &MonotonicityViolation, universe: &Universe) -> Result<bool, EvalError> {
    let m = &v.model;
    let selection = |phi: &Formula, chi: &Formula| {
        Formula::and(
            Formula::and(
                Formula::delta(phi.clone()),
                Formula::delta(Formula::implies(chi.clone(), phi.clone())),
            ),
            Formula::nabla(chi.clone()),
        )
    };
    let phi_ts = truth_set(m, &v.phi)?;
    let psi_ts = truth_set(m, &v.psi)?;
    if truth_set(m, &v.selected)? != phi_ts || !phi_ts.is_subset(psi_ts) {
        return Ok(false);
    }
    if !holds_at_in(m, v.state, &selection(&v.selected, &v.chi), Mode::Core)? {
        return Ok(false);
    }
    for cand in universe.members() {
        if truth_set(m, cand)? != psi_ts {
            continue;
        }
        for chi in universe.members() {
            if holds_at_in(m, v.state, &selection(cand, chi), Mode::Core)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Looks for states where the selection `N′` is not almost monotonic.
pub fn almost_monotonicity_experiment(
    universe: &Universe,
    spec: FrameClassSpec,
    cfg: &SearchConfig,
) -> Result<MonotonicityReport, SearchError> {
    if cfg.formula_mode != Mode::Core {
        return Err(SearchError::BoxNotAllowed);
    }
    validate_queries(universe.members(), cfg)?;
    let (segs, scope) = segments(spec, cfg)?;
    let members = universe.members();
    let implications: Vec<Vec<Formula>> = members
        .iter()
        .map(|chi| members.iter().map(|phi| Formula::implies(chi.clone(), phi.clone())).collect())
        .collect();
    let mut models_examined = 0;
    let mut models_with_violation = 0;
    let mut first = None;
    for seg in &segs {
        let hits: Vec<(u64, MonotonicityViolation)> = (0..seg.len())
            .into_par_iter()
            .filter_map(|i| monotonicity_violation(&seg.get(i), universe, &implications).map(|v| (i, v)))
            .collect();
        models_examined += seg.len();
        models_with_violation += hits.len() as u64;
        if first.is_none() {
            first = hits.into_iter().next().map(|(_, v)| v);
        }
    }
    if let Some(v) = &first {
        if !verify_violation(v, universe)? {
            return Err(SearchError::VerificationFailed);
        }
    }
    let outcome = if first.is_some() {
        MonotonicityOutcome::ViolationFound
    } else {
        MonotonicityOutcome::Inconclusive
    };
    Ok(MonotonicityReport {
        scope,
        models_examined,
        models_with_violation,
        first_violation: first,
        outcome,
    })
}

/// Distinct truth sets of the universe in a model.
pub fn truth_set_family(model: &NeighborhoodModel, universe: &Universe) -> Result<HashSet<StateSet>, EvalError> {
    universe.members().iter().map(|f| truth_set(model, f)).collect()
}

/// Outcome of comparing the λ functions over many models.
#[derive(Clone, Debug)]
pub struct LambdaSweep {
    pub scope: Scope,
    pub universe_size: usize,
    pub models: u64,
    pub states: u64,
    pub differing_models: u64,
    /// The first model in search order with a difference.
    pub first_difference: Option<LambdaReport>,
}

impl LambdaSweep {
    pub fn equal(&self) -> bool {
        self.differing_models == 0
    }
}

/// Runs [`compare_in_universe`] on every model `cfg` generates over the
/// universe's atoms.
pub fn lambda_sweep(universe: &Universe, spec: FrameClassSpec, cfg: &SearchConfig) -> Result<LambdaSweep, SearchError> {
    validate_queries(universe.members(), cfg)?;
    let (segs, scope) = segments(spec, cfg)?;
    let mut sweep = LambdaSweep {
        scope,
        universe_size: universe.len(),
        models: 0,
        states: 0,
        differing_models: 0,
        first_difference: None,
    };
    for seg in &segs {
        let compare = |i: u64| compare_in_universe(&seg.get(i), universe).expect("atoms are validated before scanning");
        let (states, differing) = (0..seg.len())
            .into_par_iter()
            .map(|i| {
                let report = compare(i);
                (report.states.len() as u64, u64::from(!report.equal()))
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        if differing > 0 && sweep.first_difference.is_none() {
            sweep.first_difference = (0..seg.len()).into_par_iter().find_map_first(|i| {
                let report = compare(i);
                (!report.equal()).then_some(report)
            });
        }
        sweep.models += seg.len();
        sweep.states += states;
        sweep.differing_models += differing;
    }
    Ok(sweep)
}
