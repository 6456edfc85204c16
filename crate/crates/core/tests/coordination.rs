mod common;

use common::*;
use descoord::automata::{event_set, is_nonblocking, language_equal, EventSet, GeneratorBuilder};
use descoord::coordination::{
    extend_alphabet_for_cd, extend_alphabet_for_observer, is_conditionally_controllable, is_conditionally_decomposable,
    is_conditionally_normal, sufficient_condition_report, synthesize, CoordinationProblem, Observation, TheoremApplied,
};
use descoord::fixtures;
use descoord::io::parse_generator;
use descoord::Error;

fn problem(sigma_k: EventSet) -> CoordinationProblem {
    CoordinationProblem::new(fixtures::g1(), fixtures::g2(), fixtures::spec(), sigma_k, Observation::Full).unwrap()
}

#[test]
fn fixture_files_parse_to_fixture_generators() {
    for (text, g) in
        [(fixtures::G1_GEN, fixtures::g1()), (fixtures::G2_GEN, fixtures::g2()), (fixtures::K_GEN, fixtures::spec())]
    {
        let parsed = parse_generator(text).unwrap();
        assert!(language_equal(&parsed, &g).unwrap().both());
    }
}

#[test]
fn fixture_result_is_supremal_and_nonblocking() {
    for sk in [fixtures::sigma_k(), fixtures::sigma_k_extended()] {
        let r = synthesize(&problem(sk)).unwrap();
        let m = r.final_language().unwrap();
        assert!(language_equal(m, &fixtures::expected_result()).unwrap().both());
        assert!(is_nonblocking(m));
        assert_eq!(r.theorem_applied, TheoremApplied::SupremalProduct);
    }
}

#[test]
fn coordinator_alphabet_constraints_are_enforced() {
    let err = CoordinationProblem::new(
        fixtures::g1(),
        fixtures::g2(),
        fixtures::spec(),
        event_set(["a2"]),
        Observation::Full,
    )
    .unwrap_err();
    assert!(matches!(err, Error::AlphabetConstraintViolated(_)));
    let err = problem(fixtures::sigma_k()).with_sigma_k(event_set(["c", "u", "zz"])).unwrap_err();
    assert!(matches!(err, Error::AlphabetConstraintViolated(_)));
}

#[test]
fn non_decomposable_spec_and_cd_extension() {
    let sk = event_set(["c", "u"]);
    assert!(matches!(synthesize(&problem(sk.clone())), Err(Error::NotConditionallyDecomposable { .. })));
    let (s1, s2) = (fixtures::sigma1(), fixtures::sigma2());
    let extended = extend_alphabet_for_cd(&fixtures::spec(), &s1, &s2, &sk).unwrap();
    assert!(extended.is_superset(&sk));
    assert!(is_conditionally_decomposable(&fixtures::spec(), &s1, &s2, &extended).unwrap().holds);
    assert!(synthesize(&problem(extended)).is_ok());
}

#[test]
fn observer_extension_satisfies_lifted_conditions() {
    let sk = extend_alphabet_for_observer(&fixtures::g1(), &fixtures::g2(), &fixtures::sigma_k()).unwrap();
    assert_eq!(sk, fixtures::sigma_k_extended());
    let p = problem(sk);
    let r = synthesize(&p).unwrap();
    let s = sufficient_condition_report(&p, &r.coordinator).unwrap();
    assert!(s.predicts_supremal_product());
    assert!(r.supremal);
}

#[test]
fn blocking_spec_is_trimmed_on_input() {
    let mut b = GeneratorBuilder::new(fixtures::alphabet());
    let (q0, q1, q2) = (b.state("q0"), b.state("q1"), b.state("q2"));
    b.set_initial(q0).set_marked(q1, true);
    b.add_transition(q0, "a1", q1).unwrap();
    b.add_transition(q0, "c", q2).unwrap();
    let spec = b.build().unwrap();
    let p = CoordinationProblem::new(fixtures::g1(), fixtures::g2(), spec, event_set(["c", "u"]), Observation::Full)
        .unwrap();
    assert!(p.spec_was_trimmed());
    assert_eq!(p.spec().num_states(), 2);
    assert!(synthesize(&p).unwrap().spec_trimmed);
}

#[test]
fn closed_conditionally_controllable_languages_are_union_closed() {
    let mut rng = rng(31);
    let mut trials = 0;
    while trials < 100 {
        let Some(inst) = random_instance(&mut rng, Observation::Full) else { continue };
        let cc: Vec<Lang> = closed_subsets(&inst.k).into_iter().filter(|j| oracle_cc(&inst, j)).collect();
        if cc.len() < 2 {
            continue;
        }
        trials += 1;
        for x in cc.iter().take(6) {
            for y in cc.iter().take(6) {
                let u: Lang = x.union(y).cloned().collect();
                assert!(oracle_cc(&inst, &u));
                let g = to_generator(inst.prob.alphabet(), &u);
                let v = is_conditionally_controllable(&inst.prob.with_spec(g).unwrap(), &inst.gk).unwrap();
                assert!(v.holds, "{v}");
            }
        }
    }
}

#[test]
fn sufficient_conditions_predict_supremal_product() {
    let mut rng = rng(32);
    let (mut trials, mut predicted) = (0, 0);
    while trials < 200 {
        let Some(inst) = random_instance(&mut rng, Observation::Full) else { continue };
        trials += 1;
        let r = synthesize(&inst.prob).unwrap();
        let s = sufficient_condition_report(&inst.prob, &r.coordinator).unwrap();
        if s.predicts_supremal_product() {
            predicted += 1;
            assert!(r.supremal, "sufficient conditions hold but the product is not supremal");
        }
    }
    assert!(predicted > 20, "only {predicted} instances satisfied the sufficient conditions");
}

#[test]
fn posterior_supervisor_branch_is_sound() {
    let mut rng = rng(33);
    let mut found = 0;
    for _ in 0..20_000 {
        let Some(inst) = random_instance(&mut rng, Observation::Full) else { continue };
        let r = synthesize(&inst.prob).unwrap();
        if r.theorem_applied != TheoremApplied::PosteriorSupervisor {
            continue;
        }
        found += 1;
        assert!(!r.pk_condition.as_ref().unwrap().holds);
        assert!(r.distributed_matches_monolithic.is_some());
        let m = r.final_language().unwrap();
        assert!(is_nonblocking(m));
        let got = marked(m, 16);
        assert!(got.is_subset(&inst.k));
        assert!(oracle_cc(&inst, &got));
        if found == 5 {
            return;
        }
    }
    panic!("only {found} instances took the posterior branch");
}

#[test]
fn partial_observation_pipeline_is_sound() {
    let mut rng = rng(34);
    let (mut trials, mut supremal) = (0, 0);
    while trials < 150 {
        let Some(inst) = random_instance(&mut rng, Observation::Partial) else { continue };
        assert!(inst.prob.alphabet().observable_set().len() < inst.prob.alphabet().len());
        trials += 1;
        let r = synthesize(&inst.prob).unwrap();
        let Ok(m) = r.final_language() else { continue };
        let got = marked(m, 16);
        assert!(got.is_subset(&inst.k));
        assert!(oracle_cc(&inst, &got));
        let with_m = inst.prob.with_spec(m.clone()).unwrap();
        assert!(is_conditionally_controllable(&with_m, &inst.gk).unwrap().holds);
        if r.supremal {
            supremal += 1;
            let v = is_conditionally_normal(&with_m, &inst.gk).unwrap();
            assert!(v.holds, "{v}");
        }
    }
    assert!(supremal > 50, "only {supremal} supremal results");
}
