//! Formulas of the contingency language.
//!
//! The core AST has four node kinds (atoms, negation, conjunction and the
//! noncontingency operator `Δ`) plus a `□` node that only appears when
//! parsing in [`Mode::Extended`]. Every other connective is sugar and is
//! rewritten into core nodes as soon as it is built, so downstream code only
//! ever matches on [`Formula`]'s five variants.

mod parser;
mod render;
mod skeleton;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use parser::parse;
pub use skeleton::{is_tautology, skeleton, PropSkeleton, MAX_TAUTOLOGY_ATOMS};

/// Atom used to build `⊤` as `_t ∨ ¬_t`. User input cannot name it.
pub const TOP_ATOM: &str = "_t";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// The plain language: `□` is rejected.
    #[default]
    Core,
    /// Adds the `□` operator used by the almost-definability experiments.
    Extended,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Delta(Box<Formula>),
    /// `□φ`, extended mode only.
    Nec(Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("box operator at {line}:{column} is not allowed in core mode")]
    BoxNotAllowed { line: usize, column: usize },
    #[error("tautology check refused: skeleton has {count} atoms (limit {limit})")]
    TooManyAtoms { count: usize, limit: usize },
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn delta(f: Formula) -> Formula {
        Formula::Delta(Box::new(f))
    }

    pub fn nec(f: Formula) -> Formula {
        Formula::Nec(Box::new(f))
    }

    /// `φ ∨ ψ` as `¬(¬φ ∧ ¬ψ)`.
    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(l), Formula::not(r)))
    }

    /// `φ → ψ` as `¬(φ ∧ ¬ψ)`.
    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::not(Formula::and(l, Formula::not(r)))
    }

    /// `φ ↔ ψ` as `(φ → ψ) ∧ (ψ → φ)`.
    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::and(
            Formula::implies(l.clone(), r.clone()),
            Formula::implies(r, l),
        )
    }

    /// `∇φ` as `¬Δφ`.
    pub fn nabla(f: Formula) -> Formula {
        Formula::not(Formula::delta(f))
    }

    pub fn top() -> Formula {
        let t = Formula::atom(TOP_ATOM);
        Formula::or(t.clone(), Formula::not(t))
    }

    pub fn bot() -> Formula {
        Formula::not(Formula::top())
    }

    pub fn is_top(&self) -> bool {
        *self == Formula::top()
    }

    /// Views `self` as `φ → ψ`, i.e. `¬(φ ∧ ¬ψ)`.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::And(l, r) => match r.as_ref() {
                    Formula::Not(rhs) => Some((l, rhs)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Views `self` as `φ ↔ ψ`.
    pub fn as_biconditional(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => {
                let (a, b) = l.as_implication()?;
                let (b2, a2) = r.as_implication()?;
                (a == a2 && b == b2).then_some((a, b))
            }
            _ => None,
        }
    }

    /// Atom names occurring in the formula, including the reserved `⊤` atom.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Not(f) | Formula::Delta(f) | Formula::Nec(f) => f.collect_atoms(out),
            Formula::And(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Atoms excluding [`TOP_ATOM`]; these are the ones a valuation must cover.
    pub fn user_atoms(&self) -> BTreeSet<String> {
        let mut atoms = self.atoms();
        atoms.remove(TOP_ATOM);
        atoms
    }

    pub fn contains_box(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Nec(_) => true,
            Formula::Not(f) | Formula::Delta(f) => f.contains_box(),
            Formula::And(l, r) => l.contains_box() || r.contains_box(),
        }
    }

    /// Nesting depth of `Δ`/`□`.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::Delta(f) | Formula::Nec(f) => 1 + f.modal_depth(),
            Formula::And(l, r) => l.modal_depth().max(r.modal_depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::Delta(f) | Formula::Nec(f) => 1 + f.size(),
            Formula::And(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Replaces atoms by formulas according to `lookup`; atoms it returns
    /// `None` for are kept.
    pub fn substitute<F>(&self, lookup: &F) -> Formula
    where
        F: Fn(&str) -> Option<Formula>,
    {
        match self {
            Formula::Atom(name) => lookup(name).unwrap_or_else(|| self.clone()),
            Formula::Not(f) => Formula::not(f.substitute(lookup)),
            Formula::Delta(f) => Formula::delta(f.substitute(lookup)),
            Formula::Nec(f) => Formula::nec(f.substitute(lookup)),
            Formula::And(l, r) => Formula::and(l.substitute(lookup), r.substitute(lookup)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render(self))
    }
}

pub use render::{pretty, render};
