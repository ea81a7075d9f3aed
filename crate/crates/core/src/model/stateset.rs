use std::fmt;

/// A set of states, stored as a bitmask over indices `0..32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StateSet(pub u32);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn full(states: usize) -> StateSet {
        debug_assert!(states <= 32);
        if states == 32 {
            StateSet(u32::MAX)
        } else {
            StateSet((1u32 << states) - 1)
        }
    }

    pub fn singleton(state: usize) -> StateSet {
        StateSet(1 << state)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> StateSet {
        StateSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, state: usize) -> bool {
        (self.0 >> state) & 1 == 1
    }

    pub fn insert(&mut self, state: usize) {
        self.0 |= 1 << state;
    }

    pub fn union(self, other: StateSet) -> StateSet {
        StateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: StateSet) -> StateSet {
        StateSet(self.0 & other.0)
    }

    /// Complement relative to `0..states`.
    pub fn complement(self, states: usize) -> StateSet {
        StateSet(!self.0 & StateSet::full(states).0)
    }

    pub fn is_subset(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, s) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}
