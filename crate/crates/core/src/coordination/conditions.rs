use super::{check_alphabet_constraints, CoordinationProblem};
use crate::automata::{
    difference, generated, inclusion_counterexample, prefix_closure, project_onto, sync_product, trim, EventSet,
    Generator, LanguageView, ProjectionSpec,
};
use crate::error::{Error, Result};
use crate::props::{
    is_controllable, is_lm_closed, is_normal_under, is_observable_under, observer_violations, PropertyVerdict, Side,
    Witness,
};

fn union(a: &EventSet, b: &EventSet) -> EventSet {
    a.union(b).cloned().collect()
}

fn check_spec(spec: &Generator, sigma1: &EventSet, sigma2: &EventSet, sigma_k: &EventSet) -> Result<()> {
    check_alphabet_constraints(sigma1, sigma2, sigma_k)?;
    if spec.alphabet().event_set() != union(sigma1, sigma2) {
        return Err(Error::AlphabetConstraintViolated(
            "the specification alphabet must be the union of the subsystem alphabets".into(),
        ));
    }
    Ok(())
}

/// `P1+k(K) ∥ P2+k(K)`.
fn decomposition(spec: &Generator, sigma1: &EventSet, sigma2: &EventSet, sigma_k: &EventSet) -> Result<Generator> {
    sync_product(&project_onto(spec, &union(sigma1, sigma_k)), &project_onto(spec, &union(sigma2, sigma_k)))
}

/// Whether `L_m(spec) = P1+k(K) ∥ P2+k(K)`. Pass the prefix closure of a
/// specification to test `K̄`.
pub fn is_conditionally_decomposable(
    spec: &Generator,
    sigma1: &EventSet,
    sigma2: &EventSet,
    sigma_k: &EventSet,
) -> Result<PropertyVerdict> {
    check_spec(spec, sigma1, sigma2, sigma_k)?;
    let product = decomposition(spec, sigma1, sigma2, sigma_k)?;
    let w = inclusion_counterexample(&product, spec, LanguageView::Marked)?;
    Ok(PropertyVerdict::from_witness(w.map(|word| Witness::Word { word })))
}

/// Number of states of the trimmed mismatch between the decomposition and
/// the specification, for both `K` and `K̄`.
fn cd_mismatch(spec: &Generator, sigma1: &EventSet, sigma2: &EventSet, sigma_k: &EventSet) -> Result<usize> {
    let mut total = 0;
    for k in [spec.clone(), prefix_closure(spec)] {
        let product = decomposition(&k, sigma1, sigma2, sigma_k)?;
        total += difference(&product, &k, LanguageView::Marked)?.num_states();
    }
    Ok(total)
}

/// Adds events, one at a time, whose addition shrinks the mismatch most
/// (ties broken by event name) until `K` and `K̄` are both conditionally
/// decomposable.
pub fn extend_alphabet_for_cd(
    spec: &Generator,
    sigma1: &EventSet,
    sigma2: &EventSet,
    sigma_k: &EventSet,
) -> Result<EventSet> {
    check_spec(spec, sigma1, sigma2, sigma_k)?;
    greedy_extend(sigma_k.clone(), &union(sigma1, sigma2), |s| cd_mismatch(spec, sigma1, sigma2, s))
}

fn greedy_extend(
    mut current: EventSet,
    universe: &EventSet,
    mut score: impl FnMut(&EventSet) -> Result<usize>,
) -> Result<EventSet> {
    let mut now = score(&current)?;
    while now > 0 {
        let mut best: Option<(usize, EventSet)> = None;
        for e in universe.difference(&current) {
            let mut candidate = current.clone();
            candidate.insert(e.clone());
            let s = score(&candidate)?;
            if best.as_ref().is_none_or(|(b, _)| s < *b) {
                best = Some((s, candidate));
            }
        }
        let Some((s, next)) = best else {
            break;
        };
        current = next;
        now = s;
    }
    Ok(current)
}

fn observer_mismatch(g1: &Generator, g2: &Generator, sigma_k: &EventSet) -> Result<usize> {
    let mut total = 0;
    for g in [g1, g2] {
        let l = generated(g);
        total += observer_violations(&ProjectionSpec::onto(l.alphabet(), sigma_k), &l)?;
    }
    Ok(total)
}

/// Adds events greedily until `Pk` is an `L(Gi)`-observer for both
/// subsystems.
pub fn extend_alphabet_for_observer(g1: &Generator, g2: &Generator, sigma_k: &EventSet) -> Result<EventSet> {
    let universe = union(&g1.alphabet().event_set(), &g2.alphabet().event_set());
    greedy_extend(sigma_k.clone(), &universe, |s| observer_mismatch(g1, g2, s))
}

/// `Gk = Pk(G1) ∥ Pk(G2)`, trimmed.
pub fn build_coordinator(g1: &Generator, g2: &Generator, sigma_k: &EventSet) -> Result<Generator> {
    let (s1, s2) = (g1.alphabet().event_set(), g2.alphabet().event_set());
    check_alphabet_constraints(&s1, &s2, sigma_k)?;
    Ok(trim(&sync_product(&project_onto(g1, sigma_k), &project_onto(g2, sigma_k))?).with_name("Gk"))
}

/// Per-side data used by the conditional checks: `P_{i+k}(K)` and `Gi ∥ Gk`.
pub(super) fn local_pair(prob: &CoordinationProblem, gk: &Generator, side: Side) -> Result<(Generator, Generator)> {
    let spec = project_onto(prob.spec(), &prob.sigma_with_k(side));
    let plant = sync_product(prob.plant(side), gk)?;
    Ok((spec, plant))
}

pub(super) fn check_coordinator(prob: &CoordinationProblem, gk: &Generator) -> Result<()> {
    if gk.alphabet().event_set() != *prob.sigma_k() {
        return Err(Error::AlphabetMismatch("the coordinator must be over the coordinator alphabet".into()));
    }
    Ok(())
}

fn per_side(
    prob: &CoordinationProblem,
    gk: &Generator,
    check: impl Fn(&Generator, &Generator, Side) -> Result<PropertyVerdict>,
) -> Result<PropertyVerdict> {
    check_coordinator(prob, gk)?;
    let plant = sync_product(&sync_product(prob.g1(), prob.g2())?, gk)?;
    if let Some(w) = inclusion_counterexample(prob.spec(), &plant, LanguageView::Marked)? {
        return Err(Error::PreconditionViolated(format!(
            "the specification is not included in the marked language of the whole plant (`{}`)",
            crate::automata::format_word(&w)
        )));
    }
    let mut verdicts = Vec::new();
    for side in [Side::First, Side::Second] {
        let (spec, plant) = local_pair(prob, gk, side)?;
        verdicts.push(check(&spec, &plant, side)?.on(side));
    }
    Ok(PropertyVerdict::all(verdicts))
}

/// `P_{i+k}(K)` controllable w.r.t. `L(Gi ∥ Gk)` for `i = 1, 2`.
pub fn is_conditionally_controllable(prob: &CoordinationProblem, gk: &Generator) -> Result<PropertyVerdict> {
    per_side(prob, gk, |k, l, _| is_controllable(k, l))
}

/// `P_{i+k}(K)` observable w.r.t. `L(Gi ∥ Gk)` and `Q_{i+k}` for `i = 1, 2`.
pub fn is_conditionally_observable(prob: &CoordinationProblem, gk: &Generator) -> Result<PropertyVerdict> {
    per_side(prob, gk, |k, l, side| is_observable_under(k, l, &prob.observation_projection(side)))
}

/// `P_{i+k}(K)` normal w.r.t. `L(Gi ∥ Gk)` and `Q_{i+k}` for `i = 1, 2`.
pub fn is_conditionally_normal(prob: &CoordinationProblem, gk: &Generator) -> Result<PropertyVerdict> {
    per_side(prob, gk, |k, l, side| is_normal_under(k, l, &prob.observation_projection(side)))
}

/// `P_{i+k}(K)` is `L_m(Gi ∥ Gk)`-closed for `i = 1, 2`.
pub fn is_conditionally_closed(prob: &CoordinationProblem, gk: &Generator) -> Result<PropertyVerdict> {
    per_side(prob, gk, |k, l, _| is_lm_closed(k, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{event_set, format_word, language_equal, Alphabet};
    use crate::coordination::Observation;
    use crate::fixtures;

    fn cd(sigma_k: &EventSet) -> PropertyVerdict {
        is_conditionally_decomposable(&fixtures::spec(), &fixtures::sigma1(), &fixtures::sigma2(), sigma_k).unwrap()
    }

    #[test]
    fn fixture_decomposability() {
        assert!(cd(&fixtures::sigma_k()).holds);
        assert!(cd(&fixtures::sigma_k_extended()).holds);
        assert!(!cd(&event_set(["c", "u"])).holds);
        assert!(cd(&fixtures::alphabet().event_set()).holds);
    }

    #[test]
    fn cd_extension_adds_an_a_event() {
        let s =
            extend_alphabet_for_cd(&fixtures::spec(), &fixtures::sigma1(), &fixtures::sigma2(), &event_set(["c", "u"]))
                .unwrap();
        assert!(s.contains(&"a1".into()) || s.contains(&"a2".into()));
        assert!(cd(&s).holds);
        let same =
            extend_alphabet_for_cd(&fixtures::spec(), &fixtures::sigma1(), &fixtures::sigma2(), &fixtures::sigma_k())
                .unwrap();
        assert_eq!(same, fixtures::sigma_k());
    }

    #[test]
    fn observer_extension_on_fixture() {
        let s = extend_alphabet_for_observer(&fixtures::g1(), &fixtures::g2(), &fixtures::sigma_k()).unwrap();
        assert_eq!(s, fixtures::sigma_k_extended());
        let full = fixtures::alphabet().event_set();
        assert_eq!(extend_alphabet_for_observer(&fixtures::g1(), &fixtures::g2(), &full).unwrap(), full);
    }

    #[test]
    fn coordinator_languages() {
        let gk = build_coordinator(&fixtures::g1(), &fixtures::g2(), &fixtures::sigma_k()).unwrap();
        let a = fixtures::alphabet().restrict(&fixtures::sigma_k());
        let expected = Generator::closure_of_words(&a, ["a2 u", "c"]).unwrap();
        assert!(language_equal(&gk, &expected).unwrap().generated);
        assert!(matches!(
            build_coordinator(&fixtures::g1(), &fixtures::g2(), &event_set(["c"])),
            Err(Error::AlphabetConstraintViolated(_))
        ));
    }

    #[test]
    fn conditional_controllability_of_fixture_spec() {
        let prob = CoordinationProblem::new(
            fixtures::g1(),
            fixtures::g2(),
            fixtures::spec(),
            fixtures::sigma_k(),
            Observation::Full,
        )
        .unwrap();
        let gk = build_coordinator(prob.g1(), prob.g2(), prob.sigma_k()).unwrap();
        let v = is_conditionally_controllable(&prob, &gk).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.side(), Some(Side::First));
        let Witness::Controllability { prefix, event } = w.inner() else { panic!("{w:?}") };
        assert_eq!((format_word(prefix).as_str(), event.as_str()), ("a2 a1", "u"));

        let good = prob.with_spec(fixtures::expected_result()).unwrap();
        assert!(is_conditionally_controllable(&good, &gk).unwrap().holds);
        assert!(is_conditionally_observable(&good, &gk).unwrap().holds);
        assert!(is_conditionally_normal(&good, &gk).unwrap().holds);
        assert!(is_conditionally_closed(&good, &gk).unwrap().holds);

        let wrong = Generator::universal(Alphabet::new().controllable("a2"));
        assert!(matches!(is_conditionally_controllable(&prob, &wrong), Err(Error::AlphabetMismatch(_))));
    }
}
