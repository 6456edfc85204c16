use serde::Serialize;

use super::conditions::check_coordinator;
use super::{CoordinationProblem, Observation};
use crate::automata::{
    difference, generated, inclusion_counterexample, is_nonblocking, lift, prefix_closure, shortest_word, sync_product,
    Generator, LanguageView, ProjectionSpec,
};
use crate::error::{Error, Result};
use crate::props::{is_controllable, is_lcc, is_observable_under, is_observer, is_occ, PropertyVerdict, Side, Witness};

/// Outcome of [`verify_existence_theorem`].
#[derive(Clone, Debug)]
pub struct ExistenceCheck {
    /// `S1/[G1 ∥ Gk]`, `S2/[G2 ∥ Gk]`.
    pub closed_loops: (Generator, Generator),
    pub nonblocking: (PropertyVerdict, PropertyVerdict),
    /// Each closed loop is controllable (and observable) w.r.t. its plant,
    /// i.e. realizable by a supervisor.
    pub admissible: (PropertyVerdict, PropertyVerdict),
    /// `L_m(S1/[G1∥Gk]) ∥ L_m(S2/[G2∥Gk]) = K`.
    pub achieves_spec: PropertyVerdict,
}

impl ExistenceCheck {
    pub fn verdict(&self) -> PropertyVerdict {
        PropertyVerdict::all([
            self.nonblocking.0.clone().on(Side::First),
            self.nonblocking.1.clone().on(Side::Second),
            self.admissible.0.clone().on(Side::First),
            self.admissible.1.clone().on(Side::Second),
            self.achieves_spec.clone(),
        ])
    }
}

fn blocking_witness(g: &Generator) -> Result<PropertyVerdict> {
    if is_nonblocking(g) {
        return Ok(PropertyVerdict::pass());
    }
    let stuck = difference(&generated(g), &prefix_closure(g), LanguageView::Marked)?;
    let word = shortest_word(&stuck, LanguageView::Marked).unwrap_or_default();
    Ok(PropertyVerdict::fail(Witness::Word { word }))
}

/// Checks that supervisors `s1`, `s2` (over `Σ1+k`, `Σ2+k`) are
/// nonblocking and realizable on `Gi ∥ Gk` and that their closed loops
/// together achieve exactly `K`.
pub fn verify_existence_theorem(
    prob: &CoordinationProblem,
    gk: &Generator,
    s1: &Generator,
    s2: &Generator,
) -> Result<ExistenceCheck> {
    check_coordinator(prob, gk)?;
    let mut loops = Vec::new();
    let mut nonblocking = Vec::new();
    let mut admissible = Vec::new();
    for (side, s) in [(Side::First, s1), (Side::Second, s2)] {
        if s.alphabet().event_set() != prob.sigma_with_k(side) {
            return Err(Error::AlphabetMismatch(format!("supervisor for {side} must be over Σi ∪ Σk")));
        }
        let plant = sync_product(prob.plant(side), gk)?;
        let closed = sync_product(s, &plant)?;
        nonblocking.push(blocking_witness(&closed)?);
        let mut ok = is_controllable(&closed, &plant)?;
        if ok.holds && prob.observation() == Observation::Partial {
            ok = is_observable_under(&closed, &plant, &prob.observation_projection(side))?;
        }
        admissible.push(ok);
        loops.push(closed);
    }
    let product = sync_product(&loops[0], &loops[1])?;
    let w = match inclusion_counterexample(&product, prob.spec(), LanguageView::Marked)? {
        Some(w) => Some(w),
        None => inclusion_counterexample(prob.spec(), &product, LanguageView::Marked)?,
    };
    let l2 = loops.pop().expect("two loops");
    let l1 = loops.pop().expect("two loops");
    let n2 = nonblocking.pop().expect("two");
    let n1 = nonblocking.pop().expect("two");
    let a2 = admissible.pop().expect("two");
    let a1 = admissible.pop().expect("two");
    Ok(ExistenceCheck {
        closed_loops: (l1, l2),
        nonblocking: (n1, n2),
        admissible: (a1, a2),
        achieves_spec: PropertyVerdict::from_witness(w.map(|word| Witness::Word { word })),
    })
}

/// Sufficient conditions for one side.
#[derive(Clone, Debug, Serialize)]
pub struct SideConditions {
    /// `P_{i+k}` is an `L`-observer, `L = L(G1 ∥ G2 ∥ Gk)`.
    pub global_observer: PropertyVerdict,
    /// `P_{i+k}` is LCC for `L`.
    pub global_lcc: PropertyVerdict,
    /// `P^{i+k}_k` is an observer of the lifted `L(Gi)`.
    pub lifted_observer: PropertyVerdict,
    pub lifted_occ: PropertyVerdict,
    pub lifted_lcc: PropertyVerdict,
}

impl SideConditions {
    /// Observer together with OCC or LCC on the lifted language.
    pub fn lifted_route_holds(&self) -> bool {
        self.lifted_observer.holds && (self.lifted_occ.holds || self.lifted_lcc.holds)
    }

    pub fn global_route_holds(&self) -> bool {
        self.global_observer.holds && self.global_lcc.holds
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SufficientConditions {
    pub first: SideConditions,
    pub second: SideConditions,
}

impl SufficientConditions {
    /// When this holds the projected intersection of the local supervisors
    /// is controllable w.r.t. the coordinator, so the pipeline ends with the
    /// supremal product.
    pub fn predicts_supremal_product(&self) -> bool {
        self.first.lifted_route_holds() && self.second.lifted_route_holds()
    }
}

/// Evaluates the observer and consistency conditions that guarantee the
/// supremal branch of [`synthesize`](super::synthesize).
pub fn sufficient_condition_report(prob: &CoordinationProblem, gk: &Generator) -> Result<SufficientConditions> {
    check_coordinator(prob, gk)?;
    let whole = generated(&sync_product(&sync_product(prob.g1(), prob.g2())?, gk)?);
    let side = |side: Side| -> Result<SideConditions> {
        let global = ProjectionSpec::onto(whole.alphabet(), &prob.sigma_with_k(side));
        let lifted = lift(&generated(prob.plant(side)), &prob.alphabet_with_k(side))?;
        let to_k = ProjectionSpec::onto(lifted.alphabet(), prob.sigma_k());
        Ok(SideConditions {
            global_observer: is_observer(&global, &whole)?,
            global_lcc: is_lcc(&global, &whole)?,
            lifted_observer: is_observer(&to_k, &lifted)?,
            lifted_occ: is_occ(&to_k, &lifted)?,
            lifted_lcc: is_lcc(&to_k, &lifted)?,
        })
    };
    Ok(SufficientConditions { first: side(Side::First)?, second: side(Side::Second)? })
}
