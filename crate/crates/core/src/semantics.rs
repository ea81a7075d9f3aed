//! Truth sets of formulas in neighborhood models.
//!
//! `Δφ` holds at `s` iff `φ^M ∈ N(s)` or `S∖φ^M ∈ N(s)`. In extended mode
//! `□φ` holds at `s` iff `φ^M ∈ N(s)`.

use thiserror::Error;

use crate::formula::{Formula, Mode, TOP_ATOM};
use crate::model::{NeighborhoodModel, StateSet};

pub type TruthSet = StateSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("atom `{0}` has no valuation in the model")]
    UnknownAtom(String),
    #[error("box operator is not allowed in core mode")]
    BoxNotAllowed,
    #[error("state {state} is outside the model's {states} states")]
    NoSuchState { state: usize, states: usize },
}

/// `φ^M` in core mode.
pub fn truth_set(model: &NeighborhoodModel, f: &Formula) -> Result<TruthSet, EvalError> {
    truth_set_in(model, f, Mode::Core)
}

pub fn truth_set_in(model: &NeighborhoodModel, f: &Formula, mode: Mode) -> Result<TruthSet, EvalError> {
    let full = model.full();
    Ok(match f {
        Formula::Atom(name) if name == TOP_ATOM => TruthSet::EMPTY,
        Formula::Atom(name) => *model
            .valuation()
            .get(name)
            .ok_or_else(|| EvalError::UnknownAtom(name.clone()))?,
        Formula::Not(inner) => truth_set_in(model, inner, mode)?.complement(model.states()),
        Formula::And(l, r) => {
            truth_set_in(model, l, mode)?.intersection(truth_set_in(model, r, mode)?)
        }
        Formula::Delta(inner) => {
            let x = truth_set_in(model, inner, mode)?;
            let y = x.complement(model.states());
            states_where(model, |s| {
                let n = model.neighborhood(s);
                n.contains(x) || n.contains(y)
            })
        }
        Formula::Nec(inner) => {
            if mode == Mode::Core {
                return Err(EvalError::BoxNotAllowed);
            }
            let x = truth_set_in(model, inner, mode)?;
            states_where(model, |s| model.neighborhood(s).contains(x))
        }
    }
    .intersection(full))
}

fn states_where(model: &NeighborhoodModel, pred: impl Fn(usize) -> bool) -> TruthSet {
    TruthSet::from_indices((0..model.states()).filter(|&s| pred(s)))
}

pub fn holds_at(model: &NeighborhoodModel, state: usize, f: &Formula) -> Result<bool, EvalError> {
    holds_at_in(model, state, f, Mode::Core)
}

pub fn holds_at_in(
    model: &NeighborhoodModel,
    state: usize,
    f: &Formula,
    mode: Mode,
) -> Result<bool, EvalError> {
    if state >= model.states() {
        return Err(EvalError::NoSuchState {
            state,
            states: model.states(),
        });
    }
    Ok(truth_set_in(model, f, mode)?.contains(state))
}

pub fn valid_in_model(model: &NeighborhoodModel, f: &Formula) -> Result<bool, EvalError> {
    valid_in_model_in(model, f, Mode::Core)
}

pub fn valid_in_model_in(model: &NeighborhoodModel, f: &Formula, mode: Mode) -> Result<bool, EvalError> {
    Ok(truth_set_in(model, f, mode)? == model.full())
}

/// First state (ascending) where `f` fails, if any.
pub fn first_failure(model: &NeighborhoodModel, f: &Formula, mode: Mode) -> Result<Option<usize>, EvalError> {
    let set = truth_set_in(model, f, mode)?;
    Ok((0..model.states()).find(|&s| !set.contains(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::model::Neighborhood;

    fn f(text: &str) -> Formula {
        parse(text, Mode::Core).unwrap()
    }

    fn sample() -> NeighborhoodModel {
        NeighborhoodModel::from_lists(2, &[&[&[0]], &[]], &[("p", &[0])]).unwrap()
    }

    #[test]
    fn delta_clause() {
        let m = sample();
        assert_eq!(truth_set(&m, &f("D p")).unwrap(), StateSet::singleton(0));
        assert_eq!(truth_set(&m, &f("D !p")).unwrap(), StateSet::singleton(0));
        assert!(holds_at(&m, 0, &f("D p")).unwrap());
        assert!(holds_at(&m, 1, &f("Nb p")).unwrap());
        assert!(holds_at(&m, 1, &f("p | !p")).unwrap());
        assert!(valid_in_model(&m, &f("D p <-> D !p")).unwrap());
    }

    #[test]
    fn delta_top_fails_on_empty_neighborhoods() {
        let m = NeighborhoodModel::from_lists(1, &[&[]], &[]).unwrap();
        assert_eq!(truth_set(&m, &f("D top")).unwrap(), StateSet::EMPTY);
        assert!(!valid_in_model(&m, &f("D top")).unwrap());
        let full = NeighborhoodModel::uniform(1, Neighborhood::powerset(1), Default::default()).unwrap();
        assert!(valid_in_model(&full, &f("D top")).unwrap());
    }

    #[test]
    fn errors() {
        let m = sample();
        assert_eq!(
            truth_set(&m, &f("q")),
            Err(EvalError::UnknownAtom("q".into()))
        );
        let boxed = parse("[] p", Mode::Extended).unwrap();
        assert_eq!(truth_set(&m, &boxed), Err(EvalError::BoxNotAllowed));
        assert_eq!(
            truth_set_in(&m, &boxed, Mode::Extended).unwrap(),
            StateSet::singleton(0)
        );
        assert!(matches!(
            holds_at(&m, 5, &f("p")),
            Err(EvalError::NoSuchState { .. })
        ));
    }

    #[test]
    fn monotone_instance_valid_on_supplemented_model() {
        let m = NeighborhoodModel::from_lists(2, &[&[&[0], &[0, 1]], &[&[1], &[0, 1]]], &[("p", &[0]), ("q", &[1]), ("r", &[])])
            .unwrap();
        assert!(valid_in_model(&m, &f("D p -> D (p | q) | D (!p | r)")).unwrap());
    }
}
