//! Shipped derivations, each accepted in its home system.

use super::{Derivation, SystemId};

pub struct Fixture {
    pub name: &'static str,
    pub system: SystemId,
    pub text: &'static str,
}

impl Fixture {
    pub fn derivation(&self) -> Derivation {
        Derivation::parse(self.text).expect("fixture derivations parse")
    }
}

/// `Δ¬p → Δp` from `ΔEqu`.
pub const DELTA_NEG_TO_DELTA: Fixture = Fixture {
    name: "delta-negation",
    system: SystemId::E,
    text: "\
# Δ¬p → Δp
1. D p <-> D !p ; ax:EQU
2. (D p <-> D !p) -> (D !p -> D p) ; taut
3. D !p -> D p ; mp 1 2
",
};

pub const CONGRUENCE: Fixture = Fixture {
    name: "congruence",
    system: SystemId::E,
    text: "\
1. p | p <-> p ; taut
2. D (p | p) <-> D p ; re 1
",
};

/// The `ΔM` replacement `Δφ → Δ(φ→ψ) ∨ Δ(¬φ→χ)` derived from a `ΔM` instance.
pub const MONOTONE_ALTERNATIVE: Fixture = Fixture {
    name: "monotone-alternative",
    system: SystemId::M,
    text: "\
# Δp → Δ(p→q) ∨ Δ(¬p→r) from Δp → Δ(p∨r) ∨ Δ(¬p∨q)
1. D p -> D (p | r) | D (!p | q) ; ax:M
2. (p -> q) <-> (!p | q) ; taut
3. D (p -> q) <-> D (!p | q) ; re 2
4. (!p -> r) <-> (p | r) ; taut
5. D (!p -> r) <-> D (p | r) ; re 4
6. (D p -> D (p | r) | D (!p | q)) -> ((D (p -> q) <-> D (!p | q)) -> ((D (!p -> r) <-> D (p | r)) -> (D p -> D (p -> q) | D (!p -> r)))) ; taut
7. (D (p -> q) <-> D (!p | q)) -> ((D (!p -> r) <-> D (p | r)) -> (D p -> D (p -> q) | D (!p -> r))) ; mp 1 6
8. (D (!p -> r) <-> D (p | r)) -> (D p -> D (p -> q) | D (!p -> r)) ; mp 3 7
9. D p -> D (p -> q) | D (!p -> r) ; mp 5 8
",
};

/// `Δ(q→p) ∧ Δ(¬q→p) → Δp` from `ΔC`.
pub const CONJUNCTION_ALTERNATIVE: Fixture = Fixture {
    name: "conjunction-alternative",
    system: SystemId::EC,
    text: "\
1. D (q -> p) & D (!q -> p) -> D ((q -> p) & (!q -> p)) ; ax:C
2. (q -> p) & (!q -> p) <-> p ; taut
3. D ((q -> p) & (!q -> p)) <-> D p ; re 2
4. (D (q -> p) & D (!q -> p) -> D ((q -> p) & (!q -> p))) -> ((D ((q -> p) & (!q -> p)) <-> D p) -> (D (q -> p) & D (!q -> p) -> D p)) ; taut
5. (D ((q -> p) & (!q -> p)) <-> D p) -> (D (q -> p) & D (!q -> p) -> D p) ; mp 1 4
6. D (q -> p) & D (!q -> p) -> D p ; mp 3 5
",
};

/// `Δ⊥` from `ΔN` and `ΔEqu`.
pub const DELTA_BOT: Fixture = Fixture {
    name: "delta-bot",
    system: SystemId::EN,
    text: "\
1. D top ; ax:N
2. D top <-> D !top ; ax:EQU
3. (D top <-> D !top) -> (D top -> D bot) ; taut
4. D top -> D bot ; mp 2 3
5. D bot ; mp 1 4
",
};

pub const COMMUTED_CONJUNCTION: Fixture = Fixture {
    name: "commuted-conjunction",
    system: SystemId::R,
    text: "\
1. D p & D q -> D (p & q) ; ax:C
2. p & q <-> q & p ; taut
3. D (p & q) <-> D (q & p) ; re 2
4. (D p & D q -> D (p & q)) -> ((D (p & q) <-> D (q & p)) -> (D q & D p -> D (q & p))) ; taut
5. (D (p & q) <-> D (q & p)) -> (D q & D p -> D (q & p)) ; mp 1 4
6. D q & D p -> D (q & p) ; mp 3 5
",
};

/// `Δ(p ∨ ¬p)` from `ΔN`.
pub const EXCLUDED_MIDDLE: Fixture = Fixture {
    name: "excluded-middle",
    system: SystemId::EN,
    text: "\
1. D top ; ax:N
2. (p | !p) <-> top ; taut
3. D (p | !p) <-> D top ; re 2
4. (D (p | !p) <-> D top) -> (D top -> D (p | !p)) ; taut
5. D top -> D (p | !p) ; mp 3 4
6. D (p | !p) ; mp 1 5
",
};

pub fn all() -> Vec<Fixture> {
    vec![
        DELTA_NEG_TO_DELTA,
        CONGRUENCE,
        MONOTONE_ALTERNATIVE,
        CONJUNCTION_ALTERNATIVE,
        DELTA_BOT,
        COMMUTED_CONJUNCTION,
        EXCLUDED_MIDDLE,
    ]
}
