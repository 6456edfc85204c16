mod common;

use common::*;
use descoord::automata::{
    language_equal, minimize, project_onto, sync_product, trim, Alphabet, EventSet, Generator, ProjectionSpec,
};
use descoord::props::{
    is_controllable, is_lcc, is_normal_under, is_observable_under, is_observer, is_occ, is_relatively_observable_under,
    Witness,
};
use proptest::prelude::*;
use rand::Rng;

const N: usize = 4;

fn instance(seed: u64, hidden: usize) -> (Alphabet, Lang, Lang) {
    let mut rng = rng(seed);
    let n = rng.gen_range(2..=3).max(hidden + 1);
    let a = random_alphabet(&mut rng, n, hidden);
    let l = closure(&random_words(&mut rng, &a, 5, 4));
    let k = random_subset(&mut rng, &l, 0.6);
    (a, l, k)
}

fn gens(a: &Alphabet, l: &Lang, k: &Lang) -> (Generator, Generator) {
    (to_generator(a, k), to_generator(a, l).with_all_marked())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn controllability_matches_oracle(seed in any::<u64>()) {
        let (a, l, k) = instance(seed, 0);
        let (kg, lg) = gens(&a, &l, &k);
        let v = is_controllable(&kg, &lg).unwrap();
        prop_assert_eq!(v.holds, controllable(&k, &l, &a.uncontrollable_set()));
        if let Some(Witness::Controllability { prefix, event }) = v.witness {
            let mut s = prefix.clone();
            s.push(event.clone());
            prop_assert!(closure(&k).contains(&prefix) && l.contains(&s) && !closure(&k).contains(&s));
            prop_assert!(!a.is_controllable(a.index_of(&event).unwrap()));
        }
    }

    #[test]
    fn normality_matches_oracle(seed in any::<u64>()) {
        let (a, l, k) = instance(seed, 1);
        let (kg, lg) = gens(&a, &l, &k);
        let obs = a.observable_set();
        let v = is_normal_under(&kg, &lg, &ProjectionSpec::observation(&a)).unwrap();
        prop_assert_eq!(v.holds, normal(&k, &l, &obs));
        if let Some(Witness::Word { word }) = v.witness {
            let kbar = closure(&k);
            prop_assert!(l.contains(&word) && !kbar.contains(&word));
            prop_assert!(project(&kbar, &obs).contains(&erase(&word, &obs)));
        }
    }

    #[test]
    fn observability_matches_oracle_and_witness_replays(seed in any::<u64>()) {
        let (a, l, k) = instance(seed, 1);
        let (kg, lg) = gens(&a, &l, &k);
        let obs = a.observable_set();
        let v = is_observable_under(&kg, &lg, &ProjectionSpec::observation(&a)).unwrap();
        prop_assert_eq!(v.holds, observable(&k, &l, &obs, &a.controllable_set()));
        if let Some(Witness::Observability { exiting, staying, event }) = v.witness {
            let kbar = closure(&k);
            let (mut x, mut y) = (exiting.clone(), staying.clone());
            x.push(event.clone());
            y.push(event.clone());
            prop_assert_eq!(erase(&exiting, &obs), erase(&staying, &obs));
            prop_assert!(kbar.contains(&y) && l.contains(&x) && !kbar.contains(&x));
        }
    }

    #[test]
    fn normal_implies_observable(seed in any::<u64>()) {
        let (a, l, k) = instance(seed, 1);
        let (kg, lg) = gens(&a, &l, &k);
        let p = ProjectionSpec::observation(&a);
        if is_normal_under(&kg, &lg, &p).unwrap().holds {
            prop_assert!(is_observable_under(&kg, &lg, &p).unwrap().holds);
            prop_assert!(is_relatively_observable_under(&kg, &kg, &lg, &p).unwrap().holds);
        }
    }

    #[test]
    fn relative_observability_implies_observability_for_controllable(seed in any::<u64>()) {
        let (a, l, k) = instance(seed, 1);
        let (kg, lg) = gens(&a, &l, &k);
        let p = ProjectionSpec::observation(&a);
        if is_controllable(&kg, &lg).unwrap().holds {
            let ro = is_relatively_observable_under(&kg, &kg, &lg, &p).unwrap().holds;
            prop_assert_eq!(ro, is_observable_under(&kg, &lg, &p).unwrap().holds);
        }
    }

    #[test]
    fn occ_implies_lcc(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_alphabet(&mut rng, 3, 0);
        let g = trim(&random_generator(&mut rng, &a, 5, 0.5));
        let keep: EventSet = a.events().iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let p = ProjectionSpec::onto(&a, &keep);
        if is_occ(&p, &g).unwrap().holds {
            prop_assert!(is_lcc(&p, &g).unwrap().holds);
        }
    }

    #[test]
    fn projection_and_product_match_oracle(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_alphabet(&mut rng, 4, 0);
        let ev = a.event_set();
        let s1: EventSet = ev.iter().filter(|_| rng.gen_bool(0.7)).cloned().collect();
        let s2: EventSet = ev.iter().filter(|_| rng.gen_bool(0.7)).cloned().collect();
        let g1 = random_generator(&mut rng, &a.restrict(&s1), 4, 0.5);
        let g2 = random_generator(&mut rng, &a.restrict(&s2), 4, 0.5);
        let (l1, m1) = languages(&g1, N);
        let (l2, m2) = languages(&g2, N);
        let g = sync_product(&g1, &g2).unwrap();
        let (l, m) = languages(&g, N);
        let short = |x: &Lang| -> Lang { x.iter().filter(|w| w.len() <= N).cloned().collect() };
        prop_assert_eq!(&short(&sync(&l1, &s1, &l2, &s2)), &l);
        prop_assert_eq!(&short(&sync(&m1, &s1, &m2, &s2)), &m);
        let keep: EventSet = s1.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        // with at most 3 states every observed word of length <= 2 has a preimage of length <= 8
        let h = random_generator(&mut rng, &a.restrict(&s1), 3, 0.5);
        let (pl, pm) = languages(&project_onto(&h, &keep), 2);
        let (hl, hm) = languages(&h, 8);
        let short2 = |x: Lang| -> Lang { x.into_iter().filter(|w| w.len() <= 2).collect() };
        prop_assert_eq!(pl, short2(project(&hl, &keep)));
        prop_assert_eq!(pm, short2(project(&hm, &keep)));
    }

    #[test]
    fn minimize_preserves_languages(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_alphabet(&mut rng, 3, 0);
        let g = random_generator(&mut rng, &a, 6, 0.6);
        let m = minimize(&g);
        prop_assert!(m.num_states() <= g.num_states().max(1));
        prop_assert!(language_equal(&g, &m).unwrap().both());
    }
}

#[test]
fn observer_identity_and_full_projection() {
    let mut rng = rng(11);
    for _ in 0..50 {
        let a = random_alphabet(&mut rng, 3, 0);
        let g = trim(&random_generator(&mut rng, &a, 5, 0.5));
        assert!(is_observer(&ProjectionSpec::identity(&a), &g).unwrap().holds);
        assert!(is_occ(&ProjectionSpec::identity(&a), &g).unwrap().holds);
    }
}

#[test]
fn observer_witness_replays() {
    let mut rng = rng(12);
    let mut failures = 0;
    for _ in 0..300 {
        let a = random_alphabet(&mut rng, 3, 0);
        let g = trim(&random_generator(&mut rng, &a, 5, 0.5));
        let keep: EventSet = a.events().iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let v = is_observer(&ProjectionSpec::onto(&a, &keep), &g).unwrap();
        let Some(Witness::Observer { prefix, target }) = v.witness else { continue };
        failures += 1;
        let (l, m) = languages(&g, 10);
        assert!(l.contains(&prefix));
        assert!(target.starts_with(&erase(&prefix, &keep)));
        assert!(project(&m, &keep).contains(&target), "target observation must lie in P(L_m)");
        let completions = m.iter().filter(|w| w.starts_with(&prefix)).any(|w| erase(w, &keep) == target);
        assert!(!completions, "prefix {prefix:?} should not complete {target:?}");
    }
    assert!(failures > 10, "too few failing instances: {failures}");
}
