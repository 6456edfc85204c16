//! A small two-subsystem example used throughout the tests, the CLI
//! examples and the documentation.
//!
//! Subsystem 1 runs `a1 u` or `c u1` over `{a1, c, u, u1}`; subsystem 2 runs
//! `a2 u` or `c u2` over `{a2, c, u, u2}`. Events `u, u1, u2` are
//! uncontrollable and every event is observable. The specification is the
//! prefix-closed language `{a1 a2 u, a2 a1, c u1 u2, c u2 u1}`.

use crate::automata::{event_set, Alphabet, EventSet, Generator};

/// `{a1, a2, c, u, u1, u2}` with `u, u1, u2` uncontrollable.
pub fn alphabet() -> Alphabet {
    Alphabet::new()
        .controllable("a1")
        .controllable("a2")
        .controllable("c")
        .uncontrollable("u")
        .uncontrollable("u1")
        .uncontrollable("u2")
}

pub fn sigma1() -> EventSet {
    event_set(["a1", "c", "u", "u1"])
}

pub fn sigma2() -> EventSet {
    event_set(["a2", "c", "u", "u2"])
}

/// The smaller coordinator alphabet `{a2, c, u}`.
pub fn sigma_k() -> EventSet {
    event_set(["a2", "c", "u"])
}

/// The coordinator alphabet `{a1, a2, c, u}` that also makes the
/// projections observers and output control consistent.
pub fn sigma_k_extended() -> EventSet {
    event_set(["a1", "a2", "c", "u"])
}

fn closed(events: &EventSet, words: &[&str], name: &str) -> Generator {
    Generator::closure_of_words(&alphabet().restrict(events), words.iter().copied())
        .expect("fixture words use fixture events")
        .with_name(name)
}

pub fn g1() -> Generator {
    closed(&sigma1(), &["a1 u", "c u1"], "G1")
}

pub fn g2() -> Generator {
    closed(&sigma2(), &["a2 u", "c u2"], "G2")
}

pub fn spec() -> Generator {
    closed(&alphabet().event_set(), &["a1 a2 u", "a2 a1", "c u1 u2", "c u2 u1"], "K")
}

/// Expected outcome of coordinated synthesis for both coordinator alphabets;
/// it is also the supremal controllable sublanguage of the specification.
pub fn expected_result() -> Generator {
    closed(&alphabet().event_set(), &["a1 a2 u", "a2", "c u1 u2", "c u2 u1"], "M")
}

/// Text of the fixture files shipped in `fixtures/`.
pub const G1_GEN: &str = include_str!("../fixtures/g1.gen");
pub const G2_GEN: &str = include_str!("../fixtures/g2.gen");
pub const K_GEN: &str = include_str!("../fixtures/k.gen");
