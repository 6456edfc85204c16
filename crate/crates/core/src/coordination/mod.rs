//! Coordination control of two subsystems.
//!
//! A [`CoordinationProblem`] bundles two subsystem generators `G1`, `G2`, a
//! specification `K` over `Σ1 ∪ Σ2` and a coordinator alphabet `Σk` with
//! `Σ1 ∩ Σ2 ⊆ Σk ⊆ Σ1 ∪ Σ2`. The coordinator `Gk = Pk(G1) ∥ Pk(G2)` is
//! built from it, local supervisors are synthesized for `Gi ∥ Gk`, and a
//! supervisor for the coordinator is only added at the end when the local
//! ones do not already agree on the coordinator events.

mod conditions;
mod pipeline;
mod theorem;

use serde::{Deserialize, Serialize};

use crate::automata::{event_set, trim, Alphabet, EventSet, Generator, ProjectionSpec};
use crate::error::{Error, Result};
use crate::props::Side;

pub use conditions::{
    build_coordinator, extend_alphabet_for_cd, extend_alphabet_for_observer, is_conditionally_closed,
    is_conditionally_controllable, is_conditionally_decomposable, is_conditionally_normal, is_conditionally_observable,
};
pub use pipeline::{synthesize, SynthesisReport, TheoremApplied};
pub use theorem::{
    sufficient_condition_report, verify_existence_theorem, ExistenceCheck, SideConditions, SufficientConditions,
};

/// How the supervisors observe events.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Observation {
    /// Every event is treated as observable regardless of its flags.
    #[default]
    Full,
    /// Events flagged unobservable are hidden from the supervisors.
    Partial,
}

/// Checks `Σ1 ∩ Σ2 ⊆ Σk ⊆ Σ1 ∪ Σ2`.
pub fn check_alphabet_constraints(sigma1: &EventSet, sigma2: &EventSet, sigma_k: &EventSet) -> Result<()> {
    if let Some(e) = sigma1.intersection(sigma2).find(|e| !sigma_k.contains(*e)) {
        return Err(Error::AlphabetConstraintViolated(format!(
            "shared event `{e}` is missing from the coordinator alphabet"
        )));
    }
    if let Some(e) = sigma_k.iter().find(|e| !sigma1.contains(*e) && !sigma2.contains(*e)) {
        return Err(Error::AlphabetConstraintViolated(format!("coordinator event `{e}` belongs to neither subsystem")));
    }
    Ok(())
}

/// Two subsystems, a specification and a coordinator alphabet.
#[derive(Clone, Debug)]
pub struct CoordinationProblem {
    g1: Generator,
    g2: Generator,
    spec: Generator,
    alphabet: Alphabet,
    sigma_k: EventSet,
    observation: Observation,
    spec_trimmed: bool,
}

impl CoordinationProblem {
    /// Validates the alphabet constraints. The specification is trimmed; use
    /// [`spec_was_trimmed`](Self::spec_was_trimmed) to find out whether that
    /// changed it.
    pub fn new(
        g1: Generator,
        g2: Generator,
        spec: Generator,
        sigma_k: EventSet,
        observation: Observation,
    ) -> Result<Self> {
        let alphabet = g1.alphabet().union(g2.alphabet())?;
        check_alphabet_constraints(&g1.alphabet().event_set(), &g2.alphabet().event_set(), &sigma_k)?;
        spec.alphabet().ensure_same(&alphabet)?;
        let trimmed = trim(&spec).with_name(spec.name());
        let spec_trimmed = trimmed != spec;
        Ok(CoordinationProblem { g1, g2, spec: trimmed, alphabet, sigma_k, observation, spec_trimmed })
    }

    /// Same subsystems and coordinator alphabet with another specification.
    pub fn with_spec(&self, spec: Generator) -> Result<Self> {
        CoordinationProblem::new(self.g1.clone(), self.g2.clone(), spec, self.sigma_k.clone(), self.observation)
    }

    pub fn with_sigma_k(&self, sigma_k: EventSet) -> Result<Self> {
        CoordinationProblem::new(self.g1.clone(), self.g2.clone(), self.spec.clone(), sigma_k, self.observation)
    }

    pub fn g1(&self) -> &Generator {
        &self.g1
    }

    pub fn g2(&self) -> &Generator {
        &self.g2
    }

    pub fn plant(&self, side: Side) -> &Generator {
        match side {
            Side::First => &self.g1,
            Side::Second => &self.g2,
            Side::Coordinator => panic!("the coordinator is built, not given"),
        }
    }

    pub fn spec(&self) -> &Generator {
        &self.spec
    }

    pub fn spec_was_trimmed(&self) -> bool {
        self.spec_trimmed
    }

    /// `Σ1 ∪ Σ2` with merged attributes.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn sigma1(&self) -> EventSet {
        self.g1.alphabet().event_set()
    }

    pub fn sigma2(&self) -> EventSet {
        self.g2.alphabet().event_set()
    }

    pub fn sigma_k(&self) -> &EventSet {
        &self.sigma_k
    }

    pub fn observation(&self) -> Observation {
        self.observation
    }

    /// `Σi ∪ Σk` for a subsystem side, `Σk` for the coordinator.
    pub fn sigma_with_k(&self, side: Side) -> EventSet {
        match side {
            Side::Coordinator => self.sigma_k.clone(),
            _ => self.plant(side).alphabet().event_set().union(&self.sigma_k).cloned().collect(),
        }
    }

    /// The alphabet of [`sigma_with_k`](Self::sigma_with_k) with attributes.
    pub fn alphabet_with_k(&self, side: Side) -> Alphabet {
        self.alphabet.restrict(&self.sigma_with_k(side))
    }

    /// Observation projection `Q` on `Σi ∪ Σk` (or `Σk`): the identity under
    /// full observation.
    pub fn observation_projection(&self, side: Side) -> ProjectionSpec {
        let a = self.alphabet_with_k(side);
        match self.observation {
            Observation::Full => ProjectionSpec::identity(&a),
            Observation::Partial => ProjectionSpec::observation(&a),
        }
    }
}

/// Parses a comma-separated event list.
pub fn parse_event_set(text: &str) -> EventSet {
    event_set(text.split(',').map(str::trim).filter(|s| !s.is_empty()))
}
