//! Propositional skeletons and the truth-table tautology oracle.

use std::collections::{BTreeSet, HashMap};

use super::{Formula, FormulaError};

/// Largest number of skeleton atoms the truth-table oracle accepts.
pub const MAX_TAUTOLOGY_ATOMS: usize = 24;

/// A formula with every maximal `Δ`/`□` subformula replaced by a fresh atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropSkeleton {
    pub formula: Formula,
    /// Fresh atom name and the modal subformula it stands for, in order of
    /// first occurrence.
    pub table: Vec<(String, Formula)>,
}

impl PropSkeleton {
    /// Substitutes the modal subformulas back in.
    pub fn restore(&self) -> Formula {
        let lookup: HashMap<&str, &Formula> =
            self.table.iter().map(|(a, f)| (a.as_str(), f)).collect();
        self.formula
            .substitute(&|name| lookup.get(name).map(|f| (*f).clone()))
    }
}

/// Abstracts the maximal modal subformulas of `f` into fresh atoms.
///
/// Fresh atoms are named `a1`, `a2`, ..., skipping names already used in `f`.
/// Syntactically identical subformulas share an atom.
pub fn skeleton(f: &Formula) -> PropSkeleton {
    let used = f.atoms();
    let mut builder = SkeletonBuilder {
        used,
        next: 1,
        table: Vec::new(),
        index: HashMap::new(),
    };
    let formula = builder.walk(f);
    PropSkeleton {
        formula,
        table: builder.table,
    }
}

struct SkeletonBuilder {
    used: BTreeSet<String>,
    next: usize,
    table: Vec<(String, Formula)>,
    index: HashMap<Formula, String>,
}

impl SkeletonBuilder {
    fn fresh(&mut self) -> String {
        loop {
            let name = format!("a{}", self.next);
            self.next += 1;
            if !self.used.contains(&name) {
                return name;
            }
        }
    }

    fn walk(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Atom(_) => f.clone(),
            Formula::Not(inner) => Formula::not(self.walk(inner)),
            Formula::And(l, r) => Formula::and(self.walk(l), self.walk(r)),
            Formula::Delta(_) | Formula::Nec(_) => {
                if let Some(name) = self.index.get(f) {
                    return Formula::Atom(name.clone());
                }
                let name = self.fresh();
                self.index.insert(f.clone(), name.clone());
                self.table.push((name.clone(), f.clone()));
                Formula::Atom(name)
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Var(usize),
    Not(usize),
    And(usize, usize),
}

/// A propositional formula flattened into post-order with atoms numbered.
struct Program {
    ops: Vec<Op>,
    atoms: usize,
}

impl Program {
    fn compile(f: &Formula) -> Program {
        let mut ops = Vec::new();
        let mut atoms = HashMap::new();
        fn go(f: &Formula, ops: &mut Vec<Op>, atoms: &mut HashMap<String, usize>) -> usize {
            let op = match f {
                Formula::Atom(name) => {
                    let next = atoms.len();
                    Op::Var(*atoms.entry(name.clone()).or_insert(next))
                }
                Formula::Not(inner) => Op::Not(go(inner, ops, atoms)),
                Formula::And(l, r) => {
                    let l = go(l, ops, atoms);
                    let r = go(r, ops, atoms);
                    Op::And(l, r)
                }
                Formula::Delta(_) | Formula::Nec(_) => {
                    unreachable!("skeleton formulas contain no modal nodes")
                }
            };
            ops.push(op);
            ops.len() - 1
        }
        go(f, &mut ops, &mut atoms);
        Program {
            ops,
            atoms: atoms.len(),
        }
    }

    /// Evaluates 64 assignments at once. Atom `i < 6` follows bit `i` of the
    /// row index inside the chunk; atom `i >= 6` follows bit `i - 6` of `chunk`.
    fn eval_chunk(&self, chunk: u64, scratch: &mut Vec<u64>) -> u64 {
        const PATTERNS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        scratch.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) if i < 6 => PATTERNS[i],
                Op::Var(i) => {
                    if (chunk >> (i - 6)) & 1 == 1 {
                        u64::MAX
                    } else {
                        0
                    }
                }
                Op::Not(a) => !scratch[a],
                Op::And(a, b) => scratch[a] & scratch[b],
            };
            scratch.push(v);
        }
        *scratch.last().expect("program is never empty")
    }

    fn is_valid(&self) -> bool {
        let rows_mask = if self.atoms >= 6 {
            u64::MAX
        } else {
            (1u64 << (1u32 << self.atoms)) - 1
        };
        let chunks = 1u64 << self.atoms.saturating_sub(6);
        let mut scratch = Vec::with_capacity(self.ops.len());
        (0..chunks).all(|c| self.eval_chunk(c, &mut scratch) & rows_mask == rows_mask)
    }
}

/// True iff the propositional skeleton of `f` holds under every assignment.
pub fn is_tautology(f: &Formula) -> Result<bool, FormulaError> {
    let sk = skeleton(f);
    let count = sk.formula.atoms().len();
    if count > MAX_TAUTOLOGY_ATOMS {
        return Err(FormulaError::TooManyAtoms {
            count,
            limit: MAX_TAUTOLOGY_ATOMS,
        });
    }
    Ok(Program::compile(&sk.formula).is_valid())
}
