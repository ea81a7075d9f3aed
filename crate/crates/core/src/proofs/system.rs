use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::model::{FrameClassSpec, Property};

/// The axiom schemas beyond TAUT.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AxiomName {
    /// `Δφ ↔ Δ¬φ`
    Equ,
    /// `Δφ → Δ(φ∨ψ) ∨ Δ(¬φ∨χ)`
    M,
    /// `Δφ ∧ Δψ → Δ(φ∧ψ)`
    C,
    /// `Δ⊤`
    N,
}

impl AxiomName {
    pub const ALL: [AxiomName; 4] = [AxiomName::Equ, AxiomName::M, AxiomName::C, AxiomName::N];

    pub fn tag(self) -> &'static str {
        match self {
            AxiomName::Equ => "EQU",
            AxiomName::M => "M",
            AxiomName::C => "C",
            AxiomName::N => "N",
        }
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for AxiomName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "EQU" => Ok(AxiomName::Equ),
            "M" => Ok(AxiomName::M),
            "C" => Ok(AxiomName::C),
            "N" => Ok(AxiomName::N),
            other => Err(format!("unknown axiom `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    Mp,
    Re,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Mp => "MP",
            Rule::Re => "RE",
        })
    }
}

/// The eight systems, each `E` plus some of `ΔM`, `ΔC`, `ΔN`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SystemId {
    E,
    EC,
    EN,
    ECN,
    M,
    R,
    EMN,
    K,
}

impl SystemId {
    pub const ALL: [SystemId; 8] = [
        SystemId::E,
        SystemId::EC,
        SystemId::EN,
        SystemId::ECN,
        SystemId::M,
        SystemId::R,
        SystemId::EMN,
        SystemId::K,
    ];

    /// Which of `ΔM`, `ΔC`, `ΔN` the system adds to `E`.
    pub fn extras(self) -> (bool, bool, bool) {
        match self {
            SystemId::E => (false, false, false),
            SystemId::EC => (false, true, false),
            SystemId::EN => (false, false, true),
            SystemId::ECN => (false, true, true),
            SystemId::M => (true, false, false),
            SystemId::R => (true, true, false),
            SystemId::EMN => (true, false, true),
            SystemId::K => (true, true, true),
        }
    }

    pub fn from_extras(m: bool, c: bool, n: bool) -> SystemId {
        *SystemId::ALL
            .iter()
            .find(|s| s.extras() == (m, c, n))
            .expect("every combination names a system")
    }

    pub fn has_axiom(self, axiom: AxiomName) -> bool {
        let (m, c, n) = self.extras();
        match axiom {
            AxiomName::Equ => true,
            AxiomName::M => m,
            AxiomName::C => c,
            AxiomName::N => n,
        }
    }

    pub fn axioms(self) -> Vec<AxiomName> {
        AxiomName::ALL
            .into_iter()
            .filter(|&a| self.has_axiom(a))
            .collect()
    }

    /// `self`'s axioms are all axioms of `other`.
    pub fn is_included_in(self, other: SystemId) -> bool {
        self.axioms().iter().all(|&a| other.has_axiom(a))
    }

    /// The frame class the system is sound and complete for.
    pub fn frame_class(self) -> FrameClassSpec {
        let (m, c, n) = self.extras();
        let mut spec = FrameClassSpec::ALL;
        match (m, c) {
            (true, true) => spec = FrameClassSpec::quasi_filter(),
            (true, false) => spec = spec.with(Property::S),
            (false, true) => spec = spec.with(Property::I).with(Property::C),
            (false, false) => {}
        }
        if n {
            spec = spec.with(Property::N);
        }
        spec
    }

    pub fn spec(self) -> SystemSpec {
        SystemSpec {
            system: self,
            axioms: self.axioms(),
            rules: vec![Rule::Mp, Rule::Re],
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for SystemId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SystemId::ALL
            .into_iter()
            .find(|sys| sys.to_string() == s.trim())
            .ok_or_else(|| format!("unknown system `{s}`"))
    }
}

/// Axioms (TAUT is always present) and rules of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemSpec {
    pub system: SystemId,
    pub axioms: Vec<AxiomName>,
    pub rules: Vec<Rule>,
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axioms: Vec<String> = std::iter::once("TAUT".to_string())
            .chain(self.axioms.iter().map(|a| a.to_string()))
            .collect();
        let rules: Vec<String> = self.rules.iter().map(|r| r.to_string()).collect();
        write!(f, "{}; {}", axioms.join(", "), rules.join(", "))
    }
}

pub fn system_spec(sys: SystemId) -> SystemSpec {
    sys.spec()
}
