//! Kuhn's and Humberstone's λ functions on bounded universes.
//!
//! A maximal consistent set is replaced by the theory of a model state: the
//! formulas of a finite universe true there, with `Δχ ∈ x` decided by
//! evaluating `Δχ` at the state. Derivability `⊢ φ → ψ` is approximated by
//! the propositional-skeleton tautology check.
//!
//! * Kuhn: `λ(x) = {φ : Δ(φ∨ψ) ∈ x for every ψ in the universe}`
//! * Humberstone: `λ(x) = {φ : Δφ ∈ x and Δψ ∈ x for every ψ with ⊢ φ → ψ}`;
//!   the simplified variant drops the `Δφ ∈ x` conjunct.

use serde::Serialize;
use thiserror::Error;

use crate::formula::{is_tautology, Formula, FormulaError};
use crate::model::NeighborhoodModel;
use crate::semantics::{truth_set, EvalError, TruthSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("universe base must not be empty")]
    EmptyBase,
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A finite formula set closed under pairwise disjunction up to a depth.
#[derive(Clone, Debug)]
pub struct Universe {
    base: Vec<Formula>,
    members: Vec<Formula>,
    /// `implies[i][j]` iff `⊢ members[i] → members[j]` by the skeleton oracle.
    implies: Vec<Vec<bool>>,
    /// `disjunctions[i][j] = members[i] ∨ members[j]`.
    disjunctions: Vec<Vec<Formula>>,
}

/// Closes `base` under pairwise disjunction `depth` times. Each round adds
/// `φ ∨ ψ` for every ordered pair of current members; syntactic duplicates
/// are dropped and first occurrences keep their position.
pub fn close_universe(base: &[Formula], depth: usize) -> Result<Universe, LambdaError> {
    if base.is_empty() {
        return Err(LambdaError::EmptyBase);
    }
    let mut members: Vec<Formula> = Vec::new();
    for f in base {
        if !members.contains(f) {
            members.push(f.clone());
        }
    }
    for _ in 0..depth {
        let current = members.clone();
        for a in &current {
            for b in &current {
                let d = Formula::or(a.clone(), b.clone());
                if !members.contains(&d) {
                    members.push(d);
                }
            }
        }
    }
    Universe::build(base.to_vec(), members)
}

impl Universe {
    /// A universe with exactly the given members and no closure guarantee.
    pub fn from_members(members: Vec<Formula>) -> Result<Universe, LambdaError> {
        if members.is_empty() {
            return Err(LambdaError::EmptyBase);
        }
        let mut unique: Vec<Formula> = Vec::new();
        for f in members {
            if !unique.contains(&f) {
                unique.push(f);
            }
        }
        Universe::build(unique.clone(), unique)
    }

    fn build(base: Vec<Formula>, members: Vec<Formula>) -> Result<Universe, LambdaError> {
        let implies = members
            .iter()
            .map(|a| {
                members
                    .iter()
                    .map(|b| derives(a, b))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let disjunctions = members
            .iter()
            .map(|a| members.iter().map(|b| Formula::or(a.clone(), b.clone())).collect())
            .collect();
        Ok(Universe {
            base,
            members,
            implies,
            disjunctions,
        })
    }

    pub fn base(&self) -> &[Formula] {
        &self.base
    }

    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.members.iter().position(|m| m == f)
    }

    pub fn derives(&self, i: usize, j: usize) -> bool {
        self.implies[i][j]
    }
}

/// `⊢ φ → ψ`, decided on propositional skeletons.
pub fn derives(phi: &Formula, psi: &Formula) -> Result<bool, FormulaError> {
    is_tautology(&Formula::implies(phi.clone(), psi.clone()))
}

/// Truth sets a model assigns to the universe's members and to the `Δ`
/// formulas the λ functions ask about.
pub struct ModelTheory<'a> {
    model: &'a NeighborhoodModel,
    universe: &'a Universe,
    members: Vec<TruthSet>,
    delta: Vec<TruthSet>,
    delta_disjunction: Vec<Vec<TruthSet>>,
}

impl<'a> ModelTheory<'a> {
    pub fn new(model: &'a NeighborhoodModel, universe: &'a Universe) -> Result<ModelTheory<'a>, LambdaError> {
        let members = universe
            .members
            .iter()
            .map(|f| truth_set(model, f))
            .collect::<Result<Vec<_>, _>>()?;
        let delta = universe
            .members
            .iter()
            .map(|f| truth_set(model, &Formula::delta(f.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let delta_disjunction = universe
            .disjunctions
            .iter()
            .map(|row| {
                row.iter()
                    .map(|d| truth_set(model, &Formula::delta(d.clone())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ModelTheory {
            model,
            universe,
            members,
            delta,
            delta_disjunction,
        })
    }

    pub fn at(&self, state: usize) -> TheorySet<'_> {
        assert!(state < self.model.states(), "state out of range");
        TheorySet { theory: self, state }
    }

    pub fn member_truth_set(&self, i: usize) -> TruthSet {
        self.members[i]
    }
}

/// The theory of one state, restricted to the universe.
#[derive(Clone, Copy)]
pub struct TheorySet<'a> {
    theory: &'a ModelTheory<'a>,
    state: usize,
}

impl<'a> TheorySet<'a> {
    pub fn state(&self) -> usize {
        self.state
    }

    pub fn universe(&self) -> &Universe {
        self.theory.universe
    }

    /// `members[i] ∈ x`.
    pub fn contains(&self, i: usize) -> bool {
        self.theory.members[i].contains(self.state)
    }

    /// `Δ members[i] ∈ x`.
    pub fn has_delta(&self, i: usize) -> bool {
        self.theory.delta[i].contains(self.state)
    }

    /// `Δ(members[i] ∨ members[j]) ∈ x`.
    pub fn has_delta_disjunction(&self, i: usize, j: usize) -> bool {
        self.theory.delta_disjunction[i][j].contains(self.state)
    }

    /// Members of the theory, in universe order.
    pub fn formulas(&self) -> Vec<&Formula> {
        (0..self.universe().len())
            .filter(|&i| self.contains(i))
            .map(|i| &self.universe().members[i])
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HumberstoneVariant {
    Original,
    Simplified,
}

/// Indices of universe members in Kuhn's λ.
pub fn lambda_kuhn_indices(x: &TheorySet<'_>) -> Vec<usize> {
    let n = x.universe().len();
    (0..n)
        .filter(|&i| (0..n).all(|j| x.has_delta_disjunction(i, j)))
        .collect()
}

pub fn lambda_humberstone_indices(x: &TheorySet<'_>, variant: HumberstoneVariant) -> Vec<usize> {
    let u = x.universe();
    (0..u.len())
        .filter(|&i| {
            let entry = variant == HumberstoneVariant::Simplified || x.has_delta(i);
            entry && (0..u.len()).all(|j| !u.derives(i, j) || x.has_delta(j))
        })
        .collect()
}

pub fn lambda_kuhn(x: &TheorySet<'_>) -> Vec<Formula> {
    lambda_kuhn_indices(x)
        .into_iter()
        .map(|i| x.universe().members[i].clone())
        .collect()
}

pub fn lambda_humberstone(x: &TheorySet<'_>, variant: HumberstoneVariant) -> Vec<Formula> {
    lambda_humberstone_indices(x, variant)
        .into_iter()
        .map(|i| x.universe().members[i].clone())
        .collect()
}

/// A formula on which the two λ functions disagree at a state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaDifference {
    pub phi: Formula,
    pub in_kuhn: bool,
    pub in_humberstone: bool,
    pub in_simplified: bool,
    /// A universe member refuting membership on the side that excludes `phi`.
    pub witness: Option<Formula>,
}

#[derive(Clone, Debug)]
pub struct StateComparison {
    pub state: usize,
    pub lambda_k: Vec<Formula>,
    pub lambda_h: Vec<Formula>,
    pub lambda_h_simplified: Vec<Formula>,
    pub differences: Vec<LambdaDifference>,
}

impl StateComparison {
    pub fn equal(&self) -> bool {
        self.differences.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct LambdaReport {
    pub model: NeighborhoodModel,
    pub universe_size: usize,
    pub states: Vec<StateComparison>,
}

impl LambdaReport {
    pub fn equal(&self) -> bool {
        self.states.iter().all(StateComparison::equal)
    }

    /// One JSON object per state.
    pub fn to_json(&self) -> Vec<serde_json::Value> {
        let render = |fs: &[Formula]| fs.iter().map(|f| f.to_string()).collect::<Vec<_>>();
        self.states
            .iter()
            .map(|s| {
                serde_json::json!({
                    "model": self.model.to_json_value(),
                    "state": s.state,
                    "universe_size": self.universe_size,
                    "lambda_k": render(&s.lambda_k),
                    "lambda_h": render(&s.lambda_h),
                    "equal": s.equal(),
                })
            })
            .collect()
    }
}

/// Compares the λ functions at every state of `model` over an existing universe.
pub fn compare_in_universe(model: &NeighborhoodModel, universe: &Universe) -> Result<LambdaReport, LambdaError> {
    let theory = ModelTheory::new(model, universe)?;
    let n = universe.len();
    let states = (0..model.states())
        .map(|state| {
            let x = theory.at(state);
            let k = lambda_kuhn_indices(&x);
            let h = lambda_humberstone_indices(&x, HumberstoneVariant::Original);
            let hs = lambda_humberstone_indices(&x, HumberstoneVariant::Simplified);
            let differences = (0..n)
                .filter_map(|i| {
                    let (in_k, in_h, in_s) = (k.contains(&i), h.contains(&i), hs.contains(&i));
                    if in_k == in_h && in_h == in_s {
                        return None;
                    }
                    let witness = if !in_k {
                        (0..n).find(|&j| !x.has_delta_disjunction(i, j))
                    } else if !x.has_delta(i) {
                        Some(i)
                    } else {
                        (0..n).find(|&j| universe.derives(i, j) && !x.has_delta(j))
                    };
                    Some(LambdaDifference {
                        phi: universe.members[i].clone(),
                        in_kuhn: in_k,
                        in_humberstone: in_h,
                        in_simplified: in_s,
                        witness: witness.map(|j| universe.members[j].clone()),
                    })
                })
                .collect();
            let pick = |idx: &[usize]| idx.iter().map(|&i| universe.members[i].clone()).collect();
            StateComparison {
                state,
                lambda_k: pick(&k),
                lambda_h: pick(&h),
                lambda_h_simplified: pick(&hs),
                differences,
            }
        })
        .collect();
    Ok(LambdaReport {
        model: model.clone(),
        universe_size: n,
        states,
    })
}

pub fn compare_lambdas(model: &NeighborhoodModel, base: &[Formula], depth: usize) -> Result<LambdaReport, LambdaError> {
    let universe = close_universe(base, depth)?;
    compare_in_universe(model, &universe)
}
