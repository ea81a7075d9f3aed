//! Finite neighborhood models, frame properties and model generation.

mod neighborhood;
mod stateset;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use neighborhood::{Neighborhood, Property};
pub use stateset::StateSet;

use crate::formula::TOP_ATOM;

/// Largest state space exhaustive enumeration accepts.
pub const MAX_EXHAUSTIVE_STATES: usize = 3;
/// Largest state space [`random_model`] accepts.
pub const MAX_RANDOM_STATES: usize = 16;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("state count {states} exceeds the bound {limit}")]
    BoundExceeded { states: usize, limit: usize },
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("malformed model JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// A frame class given by the properties its frames must have.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FrameClassSpec(u8);

impl FrameClassSpec {
    pub const ALL: FrameClassSpec = FrameClassSpec(0);

    pub fn from_props<I: IntoIterator<Item = Property>>(props: I) -> FrameClassSpec {
        FrameClassSpec(props.into_iter().fold(0, |acc, p| acc | Self::bit(p)))
    }

    pub fn quasi_filter() -> FrameClassSpec {
        Self::from_props([Property::I, Property::S])
    }

    pub fn filter() -> FrameClassSpec {
        Self::from_props([Property::I, Property::S, Property::N])
    }

    fn bit(p: Property) -> u8 {
        match p {
            Property::N => 1,
            Property::I => 2,
            Property::S => 4,
            Property::C => 8,
        }
    }

    pub fn contains(self, p: Property) -> bool {
        self.0 & Self::bit(p) != 0
    }

    pub fn with(self, p: Property) -> FrameClassSpec {
        FrameClassSpec(self.0 | Self::bit(p))
    }

    pub fn props(self) -> impl Iterator<Item = Property> {
        Property::ALL.into_iter().filter(move |&p| self.contains(p))
    }

    /// Every property of `self` is required by `other` too.
    pub fn is_weaker_than(self, other: FrameClassSpec) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn admits(self, n: &Neighborhood) -> bool {
        self.props().all(|p| n.has(p))
    }
}

impl fmt::Display for FrameClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("all");
        }
        let letters: Vec<String> = [Property::I, Property::S, Property::C, Property::N]
            .into_iter()
            .filter(|&p| self.contains(p))
            .map(|p| p.to_string())
            .collect();
        f.write_str(&letters.join(","))
    }
}

impl fmt::Debug for FrameClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrameClassSpec({self})")
    }
}

impl FromStr for FrameClassSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "all" | "" => Ok(FrameClassSpec::ALL),
            "quasi-filter" | "quasi-filters" => Ok(FrameClassSpec::quasi_filter()),
            "filter" | "filters" => Ok(FrameClassSpec::filter()),
            list => list
                .split([',', '&'])
                .map(Property::from_str)
                .collect::<Result<Vec<_>, _>>()
                .map(FrameClassSpec::from_props),
        }
    }
}

/// `⟨S, N, V⟩` with `S = {0, ..., states-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodModel {
    states: usize,
    neighborhoods: Vec<Neighborhood>,
    valuation: BTreeMap<String, StateSet>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    states: usize,
    neighborhoods: Vec<Vec<Vec<usize>>>,
    valuation: BTreeMap<String, Vec<usize>>,
}

impl NeighborhoodModel {
    pub fn new(
        states: usize,
        neighborhoods: Vec<Neighborhood>,
        valuation: BTreeMap<String, StateSet>,
    ) -> Result<NeighborhoodModel, ModelError> {
        if states == 0 {
            return Err(ModelError::Invalid("a model needs at least one state".into()));
        }
        if states > MAX_RANDOM_STATES {
            return Err(ModelError::BoundExceeded {
                states,
                limit: MAX_RANDOM_STATES,
            });
        }
        if neighborhoods.len() != states {
            return Err(ModelError::Invalid(format!(
                "expected {states} neighborhood families, got {}",
                neighborhoods.len()
            )));
        }
        if let Some(n) = neighborhoods.iter().find(|n| n.states() != states) {
            return Err(ModelError::Invalid(format!(
                "neighborhood family over {} states in a {states}-state model",
                n.states()
            )));
        }
        let full = StateSet::full(states);
        for (atom, set) in &valuation {
            if atom == TOP_ATOM {
                return Err(ModelError::Invalid(format!("reserved atom `{TOP_ATOM}` in valuation")));
            }
            if !set.is_subset(full) {
                return Err(ModelError::Invalid(format!(
                    "valuation of `{atom}` mentions a state outside 0..{states}"
                )));
            }
        }
        Ok(NeighborhoodModel {
            states,
            neighborhoods,
            valuation,
        })
    }

    /// Convenience constructor from index lists.
    pub fn from_lists(
        states: usize,
        neighborhoods: &[&[&[usize]]],
        valuation: &[(&str, &[usize])],
    ) -> Result<NeighborhoodModel, ModelError> {
        let file = ModelFile {
            states,
            neighborhoods: neighborhoods
                .iter()
                .map(|fam| fam.iter().map(|x| x.to_vec()).collect())
                .collect(),
            valuation: valuation
                .iter()
                .map(|(a, xs)| (a.to_string(), xs.to_vec()))
                .collect(),
        };
        Self::from_file(file)
    }

    /// Every state gets the same neighborhood family.
    pub fn uniform(
        states: usize,
        family: Neighborhood,
        valuation: BTreeMap<String, StateSet>,
    ) -> Result<NeighborhoodModel, ModelError> {
        Self::new(states, vec![family; states], valuation)
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn full(&self) -> StateSet {
        StateSet::full(self.states)
    }

    pub fn neighborhood(&self, state: usize) -> &Neighborhood {
        &self.neighborhoods[state]
    }

    pub fn neighborhoods(&self) -> &[Neighborhood] {
        &self.neighborhoods
    }

    pub fn valuation(&self) -> &BTreeMap<String, StateSet> {
        &self.valuation
    }

    pub fn has_property(&self, property: Property) -> bool {
        self.neighborhoods.iter().all(|n| n.has(property))
    }

    pub fn satisfies_class(&self, spec: FrameClassSpec) -> bool {
        self.neighborhoods.iter().all(|n| spec.admits(n))
    }

    /// The model whose neighborhoods are the superset closures of `self`'s.
    pub fn supplementation(&self) -> NeighborhoodModel {
        let neighborhoods = self
            .neighborhoods
            .iter()
            .map(|n| {
                let mut n = n.clone();
                n.close_supersets();
                n
            })
            .collect();
        NeighborhoodModel {
            states: self.states,
            neighborhoods,
            valuation: self.valuation.clone(),
        }
    }

    /// Properties supplementation is meant to guarantee that fail for
    /// `self`: the result has (s), contains every original neighborhood, is
    /// a fixpoint, and keeps (i) and (n). Empty when all hold.
    pub fn supplementation_failures(&self) -> Vec<&'static str> {
        let plus = self.supplementation();
        let mut failures = Vec::new();
        if !plus.has_property(Property::S) {
            failures.push("(s)");
        }
        if !self.neighborhoods.iter().zip(&plus.neighborhoods).all(|(n, np)| n.is_subfamily(np)) {
            failures.push("N ⊆ N+");
        }
        if plus.supplementation() != plus {
            failures.push("idempotence");
        }
        if self.has_property(Property::I) && !plus.has_property(Property::I) {
            failures.push("(i) preserved");
        }
        if self.has_property(Property::N) && !plus.has_property(Property::N) {
            failures.push("(n) preserved");
        }
        failures
    }

    fn from_file(file: ModelFile) -> Result<NeighborhoodModel, ModelError> {
        let states = file.states;
        if states == 0 || states > MAX_RANDOM_STATES {
            return Self::new(states, Vec::new(), BTreeMap::new());
        }
        let to_set = |xs: &[usize]| -> Result<StateSet, ModelError> {
            match xs.iter().find(|&&x| x >= states) {
                Some(x) => Err(ModelError::Invalid(format!(
                    "state index {x} outside 0..{states}"
                ))),
                None => Ok(StateSet::from_indices(xs.iter().copied())),
            }
        };
        let neighborhoods = file
            .neighborhoods
            .iter()
            .map(|fam| {
                fam.iter()
                    .map(|x| to_set(x))
                    .collect::<Result<Vec<_>, _>>()
                    .map(|sets| Neighborhood::from_sets(states, sets))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let valuation = file
            .valuation
            .iter()
            .map(|(a, xs)| to_set(xs).map(|x| (a.clone(), x)))
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        Self::new(states, neighborhoods, valuation)
    }

    pub fn from_json(text: &str) -> Result<NeighborhoodModel, ModelError> {
        let file: ModelFile = serde_json::from_str(text)?;
        Self::from_file(file)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let file = ModelFile {
            states: self.states,
            neighborhoods: self.neighborhoods.iter().map(Neighborhood::to_lists).collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(a, x)| (a.clone(), x.to_vec()))
                .collect(),
        };
        serde_json::to_value(file).expect("model file is always serializable")
    }

    /// Canonical JSON: subsets as sorted index lists in lexicographic order,
    /// atoms in name order.
    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

impl fmt::Display for NeighborhoodModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "S = {}", self.full())?;
        for (s, n) in self.neighborhoods.iter().enumerate() {
            writeln!(f, "N({s}) = {n}")?;
        }
        for (a, x) in &self.valuation {
            writeln!(f, "V({a}) = {x}")?;
        }
        Ok(())
    }
}

/// Every model over a fixed state count and atom list whose frame lies in a
/// class, in a fixed order with random access by index.
///
/// Index layout: the frame part is the more significant digit, state 0 first;
/// the valuation part runs over atoms in the given order.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    states: usize,
    atoms: Vec<String>,
    candidates: Vec<u64>,
    frames: u64,
    valuations: u64,
}

impl ModelSpace {
    pub fn new(states: usize, atoms: &[String], spec: FrameClassSpec) -> Result<ModelSpace, ModelError> {
        if states == 0 {
            return Err(ModelError::Invalid("a model needs at least one state".into()));
        }
        if states > MAX_EXHAUSTIVE_STATES {
            return Err(ModelError::BoundExceeded {
                states,
                limit: MAX_EXHAUSTIVE_STATES,
            });
        }
        let codes = 1u64 << (1u32 << states);
        let candidates: Vec<u64> = (0..codes)
            .filter(|&code| spec.admits(&Neighborhood::from_code(states, code)))
            .collect();
        let too_large = || ModelError::Invalid("model space does not fit a 64-bit index".into());
        let frames = (candidates.len() as u64)
            .checked_pow(states as u32)
            .ok_or_else(too_large)?;
        let valuations = (1u64 << states)
            .checked_pow(atoms.len() as u32)
            .ok_or_else(too_large)?;
        frames.checked_mul(valuations).ok_or_else(too_large)?;
        Ok(ModelSpace {
            states,
            atoms: atoms.to_vec(),
            candidates,
            frames,
            valuations,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// Neighborhood families admitted at a single state.
    pub fn candidates_per_state(&self) -> usize {
        self.candidates.len()
    }

    pub fn len(&self) -> u64 {
        self.frames * self.valuations
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: u64) -> NeighborhoodModel {
        assert!(index < self.len(), "model index out of range");
        let mut frame = index / self.valuations;
        let mut val = index % self.valuations;
        let base = self.candidates.len() as u64;
        let mut neighborhoods = vec![Neighborhood::empty(self.states); self.states];
        for s in (0..self.states).rev() {
            neighborhoods[s] =
                Neighborhood::from_code(self.states, self.candidates[(frame % base) as usize]);
            frame /= base;
        }
        let vbase = 1u64 << self.states;
        let mut valuation = BTreeMap::new();
        for atom in self.atoms.iter().rev() {
            valuation.insert(atom.clone(), StateSet((val % vbase) as u32));
            val /= vbase;
        }
        NeighborhoodModel {
            states: self.states,
            neighborhoods,
            valuation,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = NeighborhoodModel> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

/// Every in-class model over `states` states and the given atoms, each once,
/// in a deterministic order.
pub fn enumerate_models(
    states: usize,
    atoms: &[String],
    spec: FrameClassSpec,
) -> Result<impl Iterator<Item = NeighborhoodModel>, ModelError> {
    let space = ModelSpace::new(states, atoms, spec)?;
    Ok((0..space.len()).map(move |i| space.get(i)))
}

/// A pseudo-random in-class model; the same arguments give the same model.
///
/// Each family is sampled (either densely, every subset with probability
/// 1/2, or from up to four random generators) and then repaired with
/// [`Neighborhood::repair`].
pub fn random_model(
    states: usize,
    atoms: &[String],
    spec: FrameClassSpec,
    seed: u64,
) -> Result<NeighborhoodModel, ModelError> {
    if states == 0 {
        return Err(ModelError::Invalid("a model needs at least one state".into()));
    }
    if states > MAX_RANDOM_STATES {
        return Err(ModelError::BoundExceeded {
            states,
            limit: MAX_RANDOM_STATES,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subsets = 1u32 << states;
    let mut neighborhoods = Vec::with_capacity(states);
    for _ in 0..states {
        let mut n = Neighborhood::empty(states);
        if subsets <= 16 && rng.gen_bool(0.5) {
            for x in 0..subsets {
                if rng.gen_bool(0.5) {
                    n.insert(StateSet(x));
                }
            }
        } else {
            let generators = rng.gen_range(0..=4);
            for _ in 0..generators {
                n.insert(StateSet(rng.gen_range(0..subsets)));
            }
        }
        n.repair(spec);
        neighborhoods.push(n);
    }
    let valuation = atoms
        .iter()
        .map(|a| (a.clone(), StateSet(rng.gen_range(0..subsets))))
        .collect();
    NeighborhoodModel::new(states, neighborhoods, valuation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn class_aliases() {
        assert_eq!("all".parse::<FrameClassSpec>().unwrap(), FrameClassSpec::ALL);
        assert_eq!(
            "quasi-filter".parse::<FrameClassSpec>().unwrap(),
            FrameClassSpec::from_props([Property::I, Property::S])
        );
        assert_eq!(
            "filter".parse::<FrameClassSpec>().unwrap(),
            FrameClassSpec::from_props([Property::I, Property::S, Property::N])
        );
        assert_eq!(
            "i,c,n".parse::<FrameClassSpec>().unwrap(),
            FrameClassSpec::from_props([Property::I, Property::C, Property::N])
        );
        assert!("x".parse::<FrameClassSpec>().is_err());
        assert_eq!(FrameClassSpec::filter().to_string(), "i,s,n");
    }

    #[test]
    fn empty_neighborhoods_form_a_quasi_filter_but_not_a_filter() {
        let m = NeighborhoodModel::from_lists(2, &[&[], &[]], &[]).unwrap();
        assert!(m.satisfies_class(FrameClassSpec::quasi_filter()));
        assert!(!m.satisfies_class(FrameClassSpec::filter()));
    }

    #[test]
    fn full_powerset_satisfies_every_class() {
        let m = NeighborhoodModel::uniform(2, Neighborhood::powerset(2), BTreeMap::new()).unwrap();
        for bits in 0..16u8 {
            let spec = FrameClassSpec::from_props(
                Property::ALL.into_iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, p)| p),
            );
            assert!(m.satisfies_class(spec));
        }
    }

    #[test]
    fn supplementation_examples() {
        let m = NeighborhoodModel::from_lists(2, &[&[&[0]], &[]], &[]).unwrap();
        let plus = m.supplementation();
        assert_eq!(plus.neighborhood(0).to_lists(), vec![vec![0], vec![0, 1]]);
        assert!(plus.neighborhood(1).is_empty());
        assert_eq!(plus.supplementation(), plus);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_models(1, &atoms(&["p"]), FrameClassSpec::ALL).unwrap().count(), 8);
        assert_eq!(enumerate_models(2, &[], FrameClassSpec::ALL).unwrap().count(), 256);
        let filters: Vec<_> = enumerate_models(1, &[], FrameClassSpec::filter()).unwrap().collect();
        assert!(filters
            .iter()
            .all(|m| m.neighborhood(0).contains(StateSet::singleton(0))));
        assert!(matches!(
            ModelSpace::new(4, &[], FrameClassSpec::ALL),
            Err(ModelError::BoundExceeded { states: 4, limit: 3 })
        ));
    }

    #[test]
    fn random_models_are_reproducible_and_in_class() {
        let a = atoms(&["p", "q"]);
        for seed in 0..50 {
            let m1 = random_model(3, &a, FrameClassSpec::ALL, seed).unwrap();
            let m2 = random_model(3, &a, FrameClassSpec::ALL, seed).unwrap();
            assert_eq!(m1, m2);
            let qf = random_model(3, &a, FrameClassSpec::quasi_filter(), seed).unwrap();
            assert!(qf.satisfies_class(FrameClassSpec::quasi_filter()));
            let c = random_model(4, &a, FrameClassSpec::from_props([Property::C]), seed).unwrap();
            assert!(c.has_property(Property::C));
        }
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let text = r#"{"states":2,"neighborhoods":[[[1],[0],[0,1]],[]],"valuation":{"q":[1,0],"p":[0]}}"#;
        let m = NeighborhoodModel::from_json(text).unwrap();
        let canon = m.to_json();
        assert_eq!(
            canon,
            r#"{"neighborhoods":[[[0],[0,1],[1]],[]],"states":2,"valuation":{"p":[0],"q":[0,1]}}"#
        );
        assert_eq!(NeighborhoodModel::from_json(&canon).unwrap().to_json(), canon);
    }

    #[test]
    fn invalid_models_rejected() {
        assert!(NeighborhoodModel::from_json(r#"{"states":0,"neighborhoods":[],"valuation":{}}"#).is_err());
        assert!(NeighborhoodModel::from_json(r#"{"states":1,"neighborhoods":[[[1]]],"valuation":{}}"#).is_err());
        assert!(NeighborhoodModel::from_json(r#"{"states":1,"neighborhoods":[],"valuation":{}}"#).is_err());
        assert!(NeighborhoodModel::from_json(r#"{"states":1,"neighborhoods":[[]],"valuation":{"_t":[0]}}"#).is_err());
    }
}
