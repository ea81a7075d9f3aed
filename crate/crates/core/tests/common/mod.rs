//! Oracles shared by the integration tests. They deliberately avoid the
//! crate's own evaluation paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use contingency::proofs::{AxiomName, Derivation, Justification, SystemId};
use contingency::{Formula, NeighborhoodModel};
use proptest::prelude::*;

/// Atoms and maximal modal subformulas, in first-occurrence order.
fn opaque_parts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Atom(_) | Formula::Delta(_) | Formula::Nec(_) => {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        Formula::Not(a) => opaque_parts(a, out),
        Formula::And(a, b) => {
            opaque_parts(a, out);
            opaque_parts(b, out);
        }
    }
}

fn eval_row(f: &Formula, parts: &[Formula], row: u64) -> bool {
    match f {
        Formula::Not(a) => !eval_row(a, parts, row),
        Formula::And(a, b) => eval_row(a, parts, row) && eval_row(b, parts, row),
        _ => {
            let i = parts.iter().position(|p| p == f).expect("part collected");
            row >> i & 1 == 1
        }
    }
}

/// Truth-table check, one row at a time, treating modal subformulas as atoms.
pub fn naive_tautology(f: &Formula) -> bool {
    let mut parts = Vec::new();
    opaque_parts(f, &mut parts);
    assert!(parts.len() <= 20, "naive oracle is for small formulas");
    (0..1u64 << parts.len()).all(|row| eval_row(f, &parts, row))
}

/// Direct recursive evaluation over explicit lists of states.
pub fn naive_holds(m: &NeighborhoodModel, state: usize, f: &Formula) -> bool {
    let truth = |g: &Formula| -> BTreeSet<usize> { (0..m.states()).filter(|&s| naive_holds(m, s, g)).collect() };
    let family = |s: usize| -> Vec<BTreeSet<usize>> {
        m.neighborhood(s).to_lists().into_iter().map(|l| l.into_iter().collect()).collect()
    };
    match f {
        Formula::Atom(name) if name == contingency::formula::TOP_ATOM => false,
        Formula::Atom(name) => m.valuation().get(name).is_some_and(|x| x.contains(state)),
        Formula::Not(a) => !naive_holds(m, state, a),
        Formula::And(a, b) => naive_holds(m, state, a) && naive_holds(m, state, b),
        Formula::Delta(a) => {
            let t = truth(a);
            let c: BTreeSet<usize> = (0..m.states()).filter(|s| !t.contains(s)).collect();
            let n = family(state);
            n.contains(&t) || n.contains(&c)
        }
        Formula::Nec(a) => family(state).contains(&truth(a)),
    }
}

/// Core formulas of depth at most `depth` over `atoms`.
pub fn formula_strategy(atoms: &'static [&'static str], depth: u32, boxes: bool) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        8 => proptest::sample::select(atoms).prop_map(Formula::atom),
        1 => Just(Formula::top()),
    ];
    leaf.prop_recursive(depth, 48, 2, move |inner| {
        let mut options = vec![
            inner.clone().prop_map(Formula::not).boxed(),
            inner.clone().prop_map(Formula::delta).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
        ];
        if boxes {
            options.push(inner.prop_map(Formula::nec).boxed());
        }
        proptest::strategy::Union::new(options)
    })
    .boxed()
}

/// Nesting depth counting every node; `top` counts as a leaf.
pub fn depth(f: &Formula) -> usize {
    if f.is_top() {
        return 0;
    }
    match f {
        Formula::Atom(_) => 0,
        Formula::Not(a) | Formula::Delta(a) | Formula::Nec(a) => 1 + depth(a),
        Formula::And(a, b) => 1 + depth(a).max(depth(b)),
    }
}

/// A broken variant of an accepted derivation and the first line that must
/// be rejected.
pub struct Mutant {
    pub label: String,
    pub system: SystemId,
    pub derivation: Derivation,
    pub first_bad_line: usize,
}

fn with_justification(d: &Derivation, k: usize, j: Justification) -> Derivation {
    let mut out = d.clone();
    out.lines[k - 1].justification = j;
    out
}

/// Swaps the lines at positions `k` and `k + 1`, renumbering lines and
/// citations so that only the order changes.
fn swap_adjacent(d: &Derivation, k: usize) -> Derivation {
    let rename = |i: usize| match i {
        i if i == k => k + 1,
        i if i == k + 1 => k,
        i => i,
    };
    let mut out = d.clone();
    out.lines.swap(k - 1, k);
    for (pos, line) in out.lines.iter_mut().enumerate() {
        line.number = pos + 1;
        line.justification = match line.justification {
            Justification::Mp(i, j) => Justification::Mp(rename(i), rename(j)),
            Justification::Re(i) => Justification::Re(rename(i)),
            other => other,
        };
    }
    out
}

fn cites(j: Justification, line: usize) -> bool {
    match j {
        Justification::Mp(a, b) => a == line || b == line,
        Justification::Re(a) => a == line,
        _ => false,
    }
}

/// Mutants of an accepted derivation in `system`: justification swaps,
/// order-breaking line swaps and checks in systems lacking a used axiom.
pub fn mutants(name: &str, system: SystemId, d: &Derivation) -> Vec<Mutant> {
    let mut out = Vec::new();
    let mut push = |label: String, system: SystemId, derivation: Derivation, first_bad_line: usize| {
        out.push(Mutant {
            label: format!("{name}: {label}"),
            system,
            derivation,
            first_bad_line,
        })
    };
    let n = d.lines.len();
    for k in 1..=n {
        let line = &d.lines[k - 1];
        match line.justification {
            Justification::Taut => {
                push(format!("line {k} taut -> ax:EQU"), system, with_justification(d, k, Justification::Axiom(AxiomName::Equ)), k);
                push(format!("line {k} taut -> mp {k} {k}"), system, with_justification(d, k, Justification::Mp(k, k)), k);
            }
            Justification::Axiom(a) => {
                if !naive_tautology(&line.formula) {
                    push(format!("line {k} ax -> taut"), system, with_justification(d, k, Justification::Taut), k);
                }
                for other in AxiomName::ALL.into_iter().filter(|&o| o != a) {
                    push(format!("line {k} ax:{a} -> ax:{other}"), system, with_justification(d, k, Justification::Axiom(other)), k);
                }
            }
            Justification::Mp(i, j) => {
                if !naive_tautology(&line.formula) {
                    push(format!("line {k} mp -> taut"), system, with_justification(d, k, Justification::Taut), k);
                }
                push(format!("line {k} mp {i} {i}"), system, with_justification(d, k, Justification::Mp(i, i)), k);
                push(format!("line {k} mp {j} {k}"), system, with_justification(d, k, Justification::Mp(j, k)), k);
                if j > 1 && j - 1 != i {
                    push(format!("line {k} mp {i} {}", j - 1), system, with_justification(d, k, Justification::Mp(i, j - 1)), k);
                }
            }
            Justification::Re(i) => {
                if !naive_tautology(&line.formula) {
                    push(format!("line {k} re -> taut"), system, with_justification(d, k, Justification::Taut), k);
                }
                for other in (1..k).filter(|&o| d.lines[o - 1].formula != d.lines[i - 1].formula) {
                    push(format!("line {k} re {i} -> re {other}"), system, with_justification(d, k, Justification::Re(other)), k);
                }
                push(format!("line {k} re {k}"), system, with_justification(d, k, Justification::Re(k)), k);
            }
        }
    }
    for k in 1..n {
        if cites(d.lines[k].justification, k) {
            push(format!("swap lines {k} and {}", k + 1), system, swap_adjacent(d, k), k);
        }
    }
    for other in SystemId::ALL {
        let missing = d.lines.iter().position(|l| matches!(l.justification, Justification::Axiom(a) if !other.has_axiom(a)));
        if let Some(pos) = missing {
            push(format!("checked in {other}"), other, d.clone(), pos + 1);
        }
    }
    out
}
