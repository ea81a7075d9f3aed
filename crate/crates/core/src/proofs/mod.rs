//! Hilbert-style derivations and their checker.
//!
//! Every system has TAUT (all substitution instances of propositional
//! tautologies), its axiom schemas, modus ponens and the congruence rule
//! `φ↔ψ / Δφ↔Δψ`. Axioms are matched as schemas per instance; there is no
//! separate substitution rule.

pub mod fixtures;
mod schema;
mod system;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use schema::{match_schema, Bindings, MetaVar, Schema};
pub use system::{system_spec, AxiomName, Rule, SystemId, SystemSpec};

use crate::formula::{is_tautology, parse, Formula, FormulaError, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    Taut,
    Axiom(AxiomName),
    /// `Mp(i, j)`: line `i` is `ψ`, line `j` is `ψ → φ`.
    Mp(usize, usize),
    /// `Re(i)`: line `i` is `φ ↔ ψ`.
    Re(usize),
}

impl Justification {
    fn cited(self) -> Vec<usize> {
        match self {
            Justification::Taut | Justification::Axiom(_) => vec![],
            Justification::Mp(i, j) => vec![i, j],
            Justification::Re(i) => vec![i],
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Taut => f.write_str("taut"),
            Justification::Axiom(a) => write!(f, "ax:{a}"),
            Justification::Mp(i, j) => write!(f, "mp {i} {j}"),
            Justification::Re(i) => write!(f, "re {i}"),
        }
    }
}

impl FromStr for Justification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |w: &str| w.parse::<usize>().map_err(|_| format!("bad line reference `{w}`"));
        match words.as_slice() {
            ["taut"] => Ok(Justification::Taut),
            [ax] if ax.starts_with("ax:") => Ok(Justification::Axiom(ax[3..].parse()?)),
            ["mp", i, j] => Ok(Justification::Mp(num(i)?, num(j)?)),
            ["re", i] => Ok(Justification::Re(num(i)?)),
            _ => Err(format!("unrecognized justification `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub number: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Derivation {
    pub lines: Vec<Line>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationParseError {
    #[error("line {line}: expected `N. <formula> ; <justification>`")]
    Shape { line: usize },
    #[error("line {line}: {message}")]
    Justification { line: usize, message: String },
    #[error("line {line}: {source}")]
    Formula {
        line: usize,
        #[source]
        source: FormulaError,
    },
}

impl Derivation {
    /// Parses the `N. <formula> ; <just>` format. `#` starts a comment.
    /// Line numbers are kept as written; the checker validates them.
    pub fn parse(text: &str) -> Result<Derivation, DerivationParseError> {
        let mut lines = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (number, rest) = content
                .split_once('.')
                .ok_or(DerivationParseError::Shape { line })?;
            let number: usize = number
                .trim()
                .parse()
                .map_err(|_| DerivationParseError::Shape { line })?;
            let (formula, just) = rest
                .rsplit_once(';')
                .ok_or(DerivationParseError::Shape { line })?;
            let formula = parse(formula.trim(), Mode::Core)
                .map_err(|source| DerivationParseError::Formula { line, source })?;
            let justification = just
                .trim()
                .parse()
                .map_err(|message| DerivationParseError::Justification { line, message })?;
            lines.push(Line {
                number,
                formula,
                justification,
            });
        }
        Ok(Derivation { lines })
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{}. {} ; {}", line.number, line.formula, line.justification)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RejectReason {
    /// Line numbering or citation order is broken.
    Malformed(String),
    AxiomNotInSystem(AxiomName),
    JustificationMismatch(String),
    TooManyAtoms,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::Malformed(m) => write!(f, "malformed derivation: {m}"),
            RejectReason::AxiomNotInSystem(a) => write!(f, "axiom {a} is not available in this system"),
            RejectReason::JustificationMismatch(m) => write!(f, "justification does not fit: {m}"),
            RejectReason::TooManyAtoms => f.write_str("tautology check refused: too many atoms"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Accepted,
    Rejected { line: usize, reason: RejectReason },
}

impl CheckOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, CheckOutcome::Accepted)
    }

    pub fn rejected_line(&self) -> Option<usize> {
        match self {
            CheckOutcome::Accepted => None,
            CheckOutcome::Rejected { line, .. } => Some(*line),
        }
    }
}

pub fn check_derivation(sys: SystemId, d: &Derivation) -> CheckOutcome {
    for (k, line) in d.lines.iter().enumerate() {
        let position = k + 1;
        if let Err(reason) = check_line(sys, d, position, line) {
            return CheckOutcome::Rejected {
                line: position,
                reason,
            };
        }
    }
    CheckOutcome::Accepted
}

fn check_line(sys: SystemId, d: &Derivation, position: usize, line: &Line) -> Result<(), RejectReason> {
    if line.number != position {
        return Err(RejectReason::Malformed(format!(
            "expected line number {position}, found {}",
            line.number
        )));
    }
    if let Some(&bad) = line
        .justification
        .cited()
        .iter()
        .find(|&&i| i == 0 || i >= position)
    {
        return Err(RejectReason::Malformed(format!(
            "line {position} cites line {bad}, which is not earlier"
        )));
    }
    let cited = |i: usize| &d.lines[i - 1].formula;
    match line.justification {
        Justification::Taut => match is_tautology(&line.formula) {
            Ok(true) => Ok(()),
            Ok(false) => Err(RejectReason::JustificationMismatch(
                "not a tautology instance".into(),
            )),
            Err(_) => Err(RejectReason::TooManyAtoms),
        },
        Justification::Axiom(axiom) => {
            if !sys.has_axiom(axiom) {
                return Err(RejectReason::AxiomNotInSystem(axiom));
            }
            match match_schema(axiom, &line.formula) {
                Some(_) => Ok(()),
                None => Err(RejectReason::JustificationMismatch(format!(
                    "not an instance of {axiom}"
                ))),
            }
        }
        Justification::Mp(i, j) => {
            let premise = cited(i);
            let ok = |imp: &Formula, prem: &Formula| {
                imp.as_implication() == Some((prem, &line.formula))
            };
            if ok(cited(j), premise) || ok(premise, cited(j)) {
                Ok(())
            } else {
                Err(RejectReason::JustificationMismatch(format!(
                    "lines {i} and {j} are not ψ and ψ → φ for this line"
                )))
            }
        }
        Justification::Re(i) => {
            let Some((a, b)) = cited(i).as_biconditional() else {
                return Err(RejectReason::JustificationMismatch(format!(
                    "line {i} is not a biconditional"
                )));
            };
            if line.formula == Formula::iff(Formula::delta(a.clone()), Formula::delta(b.clone())) {
                Ok(())
            } else {
                Err(RejectReason::JustificationMismatch(format!(
                    "expected Δ-congruence of line {i}"
                )))
            }
        }
    }
}
