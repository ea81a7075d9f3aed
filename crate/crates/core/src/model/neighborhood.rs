//! A family of subsets of a finite state space, stored as a bitset indexed by
//! subset masks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::StateSet;

/// The four closure conditions a neighborhood family can satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    /// Contains the whole state space.
    N,
    /// Closed under intersections.
    I,
    /// Closed under supersets.
    S,
    /// Closed under complements.
    C,
}

impl Property {
    pub const ALL: [Property; 4] = [Property::N, Property::I, Property::S, Property::C];

    pub fn letter(self) -> char {
        match self {
            Property::N => 'n',
            Property::I => 'i',
            Property::S => 's',
            Property::C => 'c',
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "n" => Ok(Property::N),
            "i" => Ok(Property::I),
            "s" => Ok(Property::S),
            "c" => Ok(Property::C),
            other => Err(format!("unknown frame property `{other}`")),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    states: usize,
    bits: Vec<u64>,
}

impl Neighborhood {
    pub fn empty(states: usize) -> Neighborhood {
        let subsets = 1usize << states;
        Neighborhood {
            states,
            bits: vec![0; subsets.div_ceil(64)],
        }
    }

    /// The full powerset of the state space.
    pub fn powerset(states: usize) -> Neighborhood {
        let mut n = Neighborhood::empty(states);
        for x in 0..(1u32 << states) {
            n.insert(StateSet(x));
        }
        n
    }

    /// Decodes a family from the bit pattern `code`, where bit `x` stands for
    /// the subset with mask `x`. Requires `2^states <= 64`.
    pub fn from_code(states: usize, code: u64) -> Neighborhood {
        debug_assert!(states <= 6);
        Neighborhood {
            states,
            bits: vec![code],
        }
    }

    pub fn from_sets<I: IntoIterator<Item = StateSet>>(states: usize, sets: I) -> Neighborhood {
        let mut n = Neighborhood::empty(states);
        for x in sets {
            n.insert(x);
        }
        n
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn contains(&self, x: StateSet) -> bool {
        let i = x.bits() as usize;
        (self.bits[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Adds `x`; returns whether it was new.
    pub fn insert(&mut self, x: StateSet) -> bool {
        debug_assert!(x.is_subset(StateSet::full(self.states)));
        let i = x.bits() as usize;
        let word = &mut self.bits[i / 64];
        let mask = 1u64 << (i % 64);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Members in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = StateSet> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| (word >> b) & 1 == 1)
                .map(move |b| StateSet((w * 64 + b) as u32))
        })
    }

    pub fn is_subfamily(&self, other: &Neighborhood) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    fn full(&self) -> StateSet {
        StateSet::full(self.states)
    }

    pub fn has(&self, property: Property) -> bool {
        match property {
            Property::N => self.contains(self.full()),
            Property::I => self.closed_under_intersections(),
            Property::S => self.closed_under_supersets(),
            Property::C => self.iter().all(|x| self.contains(x.complement(self.states))),
        }
    }

    fn closed_under_supersets(&self) -> bool {
        // One-element extensions suffice: every superset is reached by a chain of them.
        self.iter().all(|x| {
            (0..self.states)
                .filter(|&b| !x.contains(b))
                .all(|b| self.contains(x.union(StateSet::singleton(b))))
        })
    }

    fn closed_under_intersections(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        if self.closed_under_supersets() {
            // An upward-closed family is closed under intersections iff it
            // contains the intersection of all its members.
            let meet = self.iter().fold(self.full(), StateSet::intersection);
            return self.contains(meet);
        }
        let members: Vec<StateSet> = self.iter().collect();
        members.iter().enumerate().all(|(k, &x)| {
            members[k + 1..]
                .iter()
                .all(|&y| self.contains(x.intersection(y)))
        })
    }

    /// Adds every superset of a member.
    pub fn close_supersets(&mut self) -> bool {
        let before = self.len();
        for b in 0..self.states {
            let bit = StateSet::singleton(b);
            let members: Vec<StateSet> = self.iter().filter(|x| !x.contains(b)).collect();
            for x in members {
                self.insert(x.union(bit));
            }
        }
        self.len() != before
    }

    pub fn close_intersections(&mut self) -> bool {
        let mut changed = false;
        loop {
            let members: Vec<StateSet> = self.iter().collect();
            let mut grew = false;
            for (k, &x) in members.iter().enumerate() {
                for &y in &members[k + 1..] {
                    grew |= self.insert(x.intersection(y));
                }
            }
            if !grew {
                return changed;
            }
            changed = true;
        }
    }

    pub fn close_complements(&mut self) -> bool {
        let members: Vec<StateSet> = self.iter().collect();
        let mut changed = false;
        for x in members {
            changed |= self.insert(x.complement(self.states));
        }
        changed
    }

    pub fn add_unit(&mut self) -> bool {
        let full = self.full();
        self.insert(full)
    }

    /// Applies the closures `spec` asks for, in the order (i), (s), (n), (c),
    /// repeating until nothing changes.
    pub fn repair(&mut self, spec: super::FrameClassSpec) {
        loop {
            let mut changed = false;
            if spec.contains(Property::I) {
                changed |= self.close_intersections();
            }
            if spec.contains(Property::S) {
                changed |= self.close_supersets();
            }
            if spec.contains(Property::N) {
                changed |= self.add_unit();
            }
            if spec.contains(Property::C) {
                changed |= self.close_complements();
            }
            if !changed {
                return;
            }
        }
    }

    /// Members as sorted index lists, in lexicographic order.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        let mut lists: Vec<Vec<usize>> = self.iter().map(StateSet::to_vec).collect();
        lists.sort();
        lists
    }
}

impl fmt::Debug for Neighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Neighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, x) in self.to_lists().into_iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", StateSet::from_indices(x))?;
        }
        f.write_str("}")
    }
}
