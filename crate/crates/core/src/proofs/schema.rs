//! Axiom schemas as formula templates and syntactic matching against them.

use std::collections::BTreeMap;
use std::fmt;

use super::AxiomName;
use crate::formula::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetaVar {
    Phi,
    Psi,
    Chi,
}

impl MetaVar {
    fn placeholder(self) -> &'static str {
        match self {
            MetaVar::Phi => "$phi",
            MetaVar::Psi => "$psi",
            MetaVar::Chi => "$chi",
        }
    }

    fn from_placeholder(name: &str) -> Option<MetaVar> {
        match name {
            "$phi" => Some(MetaVar::Phi),
            "$psi" => Some(MetaVar::Psi),
            "$chi" => Some(MetaVar::Chi),
            _ => None,
        }
    }

    fn formula(self) -> Formula {
        Formula::atom(self.placeholder())
    }
}

impl fmt::Display for MetaVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetaVar::Phi => "φ",
            MetaVar::Psi => "ψ",
            MetaVar::Chi => "χ",
        })
    }
}

pub type Bindings = BTreeMap<MetaVar, Formula>;

/// A schema whose metavariables are placeholder atoms that cannot be written
/// in the input syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    template: Formula,
    vars: Vec<MetaVar>,
}

impl Schema {
    pub fn new(template: Formula, vars: Vec<MetaVar>) -> Schema {
        Schema { template, vars }
    }

    pub fn axiom(name: AxiomName) -> Schema {
        let phi = MetaVar::Phi.formula();
        let psi = MetaVar::Psi.formula();
        let chi = MetaVar::Chi.formula();
        let d = Formula::delta;
        match name {
            AxiomName::Equ => Schema::new(
                Formula::iff(d(phi.clone()), d(Formula::not(phi))),
                vec![MetaVar::Phi],
            ),
            AxiomName::M => Schema::new(
                Formula::implies(
                    d(phi.clone()),
                    Formula::or(
                        d(Formula::or(phi.clone(), psi)),
                        d(Formula::or(Formula::not(phi), chi)),
                    ),
                ),
                vec![MetaVar::Phi, MetaVar::Psi, MetaVar::Chi],
            ),
            AxiomName::C => Schema::new(
                Formula::implies(
                    Formula::and(d(phi.clone()), d(psi.clone())),
                    d(Formula::and(phi, psi)),
                ),
                vec![MetaVar::Phi, MetaVar::Psi],
            ),
            AxiomName::N => Schema::new(d(Formula::top()), vec![]),
        }
    }

    /// `Δφ → Δ(φ→ψ) ∨ Δ(¬φ→χ)`, an alternative to `ΔM`.
    pub fn monotone_alternative() -> Schema {
        let phi = MetaVar::Phi.formula();
        let d = Formula::delta;
        Schema::new(
            Formula::implies(
                d(phi.clone()),
                Formula::or(
                    d(Formula::implies(phi.clone(), MetaVar::Psi.formula())),
                    d(Formula::implies(Formula::not(phi), MetaVar::Chi.formula())),
                ),
            ),
            vec![MetaVar::Phi, MetaVar::Psi, MetaVar::Chi],
        )
    }

    /// `Δ(ψ→φ) ∧ Δ(¬ψ→φ) → Δφ`, an alternative to `ΔC`.
    pub fn conjunction_alternative() -> Schema {
        let phi = MetaVar::Phi.formula();
        let psi = MetaVar::Psi.formula();
        let d = Formula::delta;
        Schema::new(
            Formula::implies(
                Formula::and(
                    d(Formula::implies(psi.clone(), phi.clone())),
                    d(Formula::implies(Formula::not(psi), phi.clone())),
                ),
                d(phi),
            ),
            vec![MetaVar::Phi, MetaVar::Psi],
        )
    }

    /// The almost-definability schema `∇χ → (□φ ↔ (Δφ ∧ Δ(χ→φ)))`.
    pub fn almost_definability() -> Schema {
        let phi = MetaVar::Phi.formula();
        let chi = MetaVar::Chi.formula();
        Schema::new(
            Formula::implies(
                Formula::nabla(chi.clone()),
                Formula::iff(
                    Formula::nec(phi.clone()),
                    Formula::and(
                        Formula::delta(phi.clone()),
                        Formula::delta(Formula::implies(chi, phi)),
                    ),
                ),
            ),
            vec![MetaVar::Phi, MetaVar::Chi],
        )
    }

    pub fn vars(&self) -> &[MetaVar] {
        &self.vars
    }

    pub fn instantiate(&self, bindings: &Bindings) -> Formula {
        self.template.substitute(&|name| {
            MetaVar::from_placeholder(name).map(|v| {
                bindings
                    .get(&v)
                    .cloned()
                    .unwrap_or_else(|| panic!("metavariable {v} is unbound"))
            })
        })
    }

    /// Every instance with metavariables drawn from `pool`, in lexicographic
    /// order of the tuple of pool indices.
    pub fn instances(&self, pool: &[Formula]) -> Vec<Formula> {
        let k = self.vars.len();
        let total = pool.len().pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let mut bindings = Bindings::new();
                for &v in self.vars.iter().rev() {
                    bindings.insert(v, pool[idx % pool.len()].clone());
                    idx /= pool.len();
                }
                self.instantiate(&bindings)
            })
            .collect()
    }

    /// A substitution turning the template into `f`, if one exists.
    pub fn matches(&self, f: &Formula) -> Option<Bindings> {
        let mut bindings = Bindings::new();
        unify(&self.template, f, &mut bindings).then_some(bindings)
    }
}

fn unify(pattern: &Formula, f: &Formula, bindings: &mut Bindings) -> bool {
    match (pattern, f) {
        (Formula::Atom(name), _) => match MetaVar::from_placeholder(name) {
            Some(v) => match bindings.get(&v) {
                Some(bound) => bound == f,
                None => {
                    bindings.insert(v, f.clone());
                    true
                }
            },
            None => pattern == f,
        },
        (Formula::Not(a), Formula::Not(b))
        | (Formula::Delta(a), Formula::Delta(b))
        | (Formula::Nec(a), Formula::Nec(b)) => unify(a, b, bindings),
        (Formula::And(a1, a2), Formula::And(b1, b2)) => {
            unify(a1, b1, bindings) && unify(a2, b2, bindings)
        }
        _ => false,
    }
}

pub fn match_schema(axiom: AxiomName, f: &Formula) -> Option<Bindings> {
    Schema::axiom(axiom).matches(f)
}
