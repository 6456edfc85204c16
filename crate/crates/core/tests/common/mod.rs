//! Finite-language oracles and random instance generators shared by the
//! integration suites.
//!
//! The oracles work on explicit word sets and only use the library to
//! enumerate generators and to build tries from word lists, so they are
//! independent of the product, projection and fixpoint code under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use descoord::automata::{
    format_word, sync_product, Alphabet, EventAttrs, EventId, EventSet, Generator, GeneratorBuilder, Word,
};
use descoord::coordination::{build_coordinator, CoordinationProblem, Observation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Lang = BTreeSet<Word>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w(text: &str) -> Word {
    text.split_whitespace().map(EventId::from).collect()
}

pub fn lang(words: &[&str]) -> Lang {
    words.iter().map(|s| w(s)).collect()
}

pub fn closure(l: &Lang) -> Lang {
    l.iter().flat_map(|w| (0..=w.len()).map(move |i| w[..i].to_vec())).collect()
}

pub fn closed(words: &[&str]) -> Lang {
    closure(&lang(words))
}

/// `(L(g), L_m(g))` up to `max_len`.
pub fn languages(g: &Generator, max_len: usize) -> (Lang, Lang) {
    let all = g.enumerate_bounded(max_len);
    let gen = all.iter().map(|(w, _)| w.clone()).collect();
    let marked = all.into_iter().filter(|(_, m)| *m).map(|(w, _)| w).collect();
    (gen, marked)
}

pub fn marked(g: &Generator, max_len: usize) -> Lang {
    languages(g, max_len).1
}

pub fn generated(g: &Generator, max_len: usize) -> Lang {
    languages(g, max_len).0
}

/// Trie generator whose marked language is `l`.
pub fn to_generator(alphabet: &Alphabet, l: &Lang) -> Generator {
    Generator::from_words(alphabet, l.iter().map(|w| if w.is_empty() { String::new() } else { format_word(w) }))
        .expect("oracle words use alphabet events")
}

pub fn erase(w: &[EventId], keep: &EventSet) -> Word {
    w.iter().filter(|e| keep.contains(*e)).cloned().collect()
}

pub fn project(l: &Lang, keep: &EventSet) -> Lang {
    l.iter().map(|w| erase(w, keep)).collect()
}

/// Words over `s1 ∪ s2` whose projections lie in `a` and `b`.
pub fn sync(a: &Lang, s1: &EventSet, b: &Lang, s2: &EventSet) -> Lang {
    fn shuffle(x: &[EventId], y: &[EventId], s1: &EventSet, s2: &EventSet, acc: &mut Word, out: &mut Lang) {
        if x.is_empty() && y.is_empty() {
            out.insert(acc.clone());
            return;
        }
        if let Some(e) = x.first() {
            if !s2.contains(e) {
                acc.push(e.clone());
                shuffle(&x[1..], y, s1, s2, acc, out);
                acc.pop();
            } else if y.first() == Some(e) {
                acc.push(e.clone());
                shuffle(&x[1..], &y[1..], s1, s2, acc, out);
                acc.pop();
            }
        }
        if let Some(e) = y.first() {
            if !s1.contains(e) {
                acc.push(e.clone());
                shuffle(x, &y[1..], s1, s2, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Lang::new();
    for x in a {
        for y in b {
            shuffle(x, y, s1, s2, &mut Vec::new(), &mut out);
        }
    }
    out
}

/// `closure(K) Σu ∩ L ⊆ closure(K)`.
pub fn controllable(k: &Lang, l: &Lang, uncontrollable: &EventSet) -> bool {
    let kbar = closure(k);
    kbar.iter().all(|s| {
        uncontrollable.iter().all(|u| {
            let mut su = s.clone();
            su.push(u.clone());
            !l.contains(&su) || kbar.contains(&su)
        })
    })
}

/// `closure(K) = P⁻¹P(closure(K)) ∩ L` for prefix-closed `L`.
pub fn normal(k: &Lang, l: &Lang, observed: &EventSet) -> bool {
    let kbar = closure(k);
    let pk = project(&kbar, observed);
    l.iter().all(|t| !pk.contains(&erase(t, observed)) || kbar.contains(t))
}

/// Observability by pairwise comparison of words of `closure(K)`.
pub fn observable(k: &Lang, l: &Lang, observed: &EventSet, controllable: &EventSet) -> bool {
    let kbar = closure(k);
    for s in &kbar {
        for s2 in &kbar {
            if erase(s, observed) != erase(s2, observed) {
                continue;
            }
            for c in controllable {
                let (mut a, mut b) = (s.clone(), s2.clone());
                a.push(c.clone());
                b.push(c.clone());
                if kbar.contains(&a) && l.contains(&b) && !kbar.contains(&b) {
                    return false;
                }
            }
        }
    }
    true
}

/// All subsets of `l` (as bitmask-selected word sets); `l` must be small.
pub fn subsets(l: &Lang) -> Vec<Lang> {
    let items: Vec<&Word> = l.iter().collect();
    assert!(items.len() <= 16, "too many words to enumerate subsets");
    (0u32..(1 << items.len()))
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, w)| (*w).clone()).collect())
        .collect()
}

/// Prefix-closed subsets of the prefix-closed `l`.
pub fn closed_subsets(l: &Lang) -> Vec<Lang> {
    let nonempty: Lang = l.iter().filter(|w| !w.is_empty()).cloned().collect();
    let mut out = vec![Lang::new()];
    for s in subsets(&nonempty) {
        let mut c = s;
        c.insert(Vec::new());
        if closure(&c) == c {
            out.push(c);
        }
    }
    out
}

pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a Lang>) -> Lang {
    sets.into_iter().flat_map(|s| s.iter().cloned()).collect()
}

/// Alphabet over `e0..e{n-1}` with random attributes.
pub fn random_alphabet(rng: &mut impl Rng, n: usize, hidden: usize) -> Alphabet {
    let mut a = Alphabet::new();
    let mut hide: Vec<usize> = (0..n).collect();
    hide.shuffle(rng);
    hide.truncate(hidden);
    for i in 0..n {
        let attrs = EventAttrs::new(rng.gen_bool(0.6), !hide.contains(&i));
        a = a.with(format!("e{i}"), attrs);
    }
    a
}

/// Random deterministic generator with up to `max_states` states.
pub fn random_generator(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize, density: f64) -> Generator {
    let n = rng.gen_range(1..=max_states);
    let mut b = GeneratorBuilder::new(alphabet.clone());
    let states: Vec<_> = (0..n).map(|i| b.state(&format!("q{i}"))).collect();
    b.set_initial(states[0]);
    for &q in &states {
        if rng.gen_bool(0.5) {
            b.set_marked(q, true);
        }
        for e in alphabet.events() {
            if rng.gen_bool(density) {
                let t = states[rng.gen_range(0..n)];
                b.add_transition(q, e.as_str(), t).expect("fresh slot");
            }
        }
    }
    descoord::automata::accessible(&b.build().expect("initial set"))
}

/// Random finite language: up to `n` words of length at most `max_len`.
pub fn random_words(rng: &mut impl Rng, alphabet: &Alphabet, n: usize, max_len: usize) -> Lang {
    let events = alphabet.events();
    (0..rng.gen_range(1..=n))
        .map(|_| (0..rng.gen_range(0..=max_len)).map(|_| events[rng.gen_range(0..events.len())].clone()).collect())
        .collect()
}

pub fn random_subset(rng: &mut impl Rng, l: &Lang, p: f64) -> Lang {
    l.iter().filter(|_| rng.gen_bool(p)).cloned().collect()
}

/// Random prefix-closed sublanguage of the prefix-closed `l`.
pub fn random_closed_subset(rng: &mut impl Rng, l: &Lang, p: f64) -> Lang {
    let mut out = Lang::new();
    for word in l {
        // l is iterated in lexicographic order, so prefixes come first
        if word.is_empty() || (out.contains(&word[..word.len() - 1]) && rng.gen_bool(p)) {
            out.insert(word.clone());
        }
    }
    out
}

/// A random prefix-closed coordination problem small enough for brute force.
pub struct Instance {
    pub prob: CoordinationProblem,
    pub gk: Generator,
    pub k: Lang,
    pub plants: [Lang; 2],
    pub sides: [EventSet; 2],
}

pub fn random_instance(rng: &mut impl Rng, observation: Observation) -> Option<Instance> {
    let n = rng.gen_range(3..=5);
    let alphabet = random_alphabet(rng, n, usize::from(observation == Observation::Partial));
    let ev: Vec<_> = alphabet.events().to_vec();
    let shared: EventSet = ev.iter().filter(|_| rng.gen_bool(0.35)).cloned().collect();
    let mut s1 = shared.clone();
    let mut s2 = shared.clone();
    for e in &ev {
        if !shared.contains(e) {
            if rng.gen_bool(0.5) {
                s1.insert(e.clone())
            } else {
                s2.insert(e.clone())
            };
        }
    }
    if s1.is_empty() || s2.is_empty() {
        return None;
    }
    let (a1, a2) = (alphabet.restrict(&s1), alphabet.restrict(&s2));
    let g1 = to_generator(&a1, &closure(&random_words(rng, &a1, 3, 3))).with_all_marked();
    let g2 = to_generator(&a2, &closure(&random_words(rng, &a2, 3, 3))).with_all_marked();
    let sk: EventSet = ev.iter().filter(|e| shared.contains(*e) || rng.gen_bool(0.3)).cloned().collect();
    let gk = build_coordinator(&g1, &g2, &sk).ok()?;
    let s1k: EventSet = s1.union(&sk).cloned().collect();
    let s2k: EventSet = s2.union(&sk).cloned().collect();
    let plant1 = generated(&sync_product(&g1, &gk).ok()?, 12);
    let plant2 = generated(&sync_product(&g2, &gk).ok()?, 12);
    let a = random_closed_subset(rng, &plant1, 0.75);
    let b = random_closed_subset(rng, &plant2, 0.75);
    let k = sync(&a, &s1k, &b, &s2k);
    if k.len() > 13 || plant1.len() > 16 || plant2.len() > 16 {
        return None;
    }
    let spec = to_generator(&alphabet, &k);
    let prob = CoordinationProblem::new(g1, g2, spec, sk, observation).ok()?;
    Some(Instance { prob, gk, k, plants: [plant1, plant2], sides: [s1k, s2k] })
}

pub fn oracle_cc(inst: &Instance, j: &Lang) -> bool {
    let unc = inst.prob.alphabet().uncontrollable_set();
    (0..2).all(|i| controllable(&project(j, &inst.sides[i]), &inst.plants[i], &unc))
}
