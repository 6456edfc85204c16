//! Regular-language algebra on generators.
//!
//! Every operation is a pure function returning a fresh, canonically ordered
//! generator. Results of `sync_product`, `project` and the boolean
//! operations are accessible; `trim` and `prefix_closure` are also
//! coaccessible.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::alphabet::{Alphabet, EventSet};
use super::generator::{Generator, StateId, Word};
use super::projection::ProjectionSpec;
use crate::error::{Error, Result};

/// Which language of a generator an operation looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LanguageView {
    Generated,
    Marked,
}

/// Result of comparing both languages of two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LanguageRelation {
    pub generated: bool,
    pub marked: bool,
}

impl LanguageRelation {
    pub fn both(&self) -> bool {
        self.generated && self.marked
    }
}

/// Explores product states breadth-first, interning each one.
struct Explorer<S> {
    index: HashMap<S, StateId>,
    states: Vec<S>,
    queue: VecDeque<StateId>,
}

impl<S: Clone + Eq + Hash> Explorer<S> {
    fn new() -> Self {
        Explorer { index: HashMap::new(), states: Vec::new(), queue: VecDeque::new() }
    }

    fn intern(&mut self, s: S) -> StateId {
        if let Some(&id) = self.index.get(&s) {
            return id;
        }
        let id = self.states.len();
        self.index.insert(s.clone(), id);
        self.states.push(s);
        self.queue.push_back(id);
        id
    }

    fn next(&mut self) -> Option<(StateId, S)> {
        let id = self.queue.pop_front()?;
        Some((id, self.states[id].clone()))
    }
}

/// Synchronous product: shared events synchronize, private events interleave.
pub fn sync_product(g1: &Generator, g2: &Generator) -> Result<Generator> {
    let alphabet = g1.alphabet().union(g2.alphabet())?;
    let (Some(i1), Some(i2)) = (g1.initial(), g2.initial()) else {
        return Ok(Generator::empty(alphabet));
    };
    let m = alphabet.len();
    let map1: Vec<Option<usize>> = alphabet.events().iter().map(|e| g1.alphabet().index_of(e)).collect();
    let map2: Vec<Option<usize>> = alphabet.events().iter().map(|e| g2.alphabet().index_of(e)).collect();

    let mut ex = Explorer::new();
    ex.intern((i1, i2));
    let mut delta = Vec::new();
    let mut marked = Vec::new();
    while let Some((id, (q1, q2))) = ex.next() {
        debug_assert_eq!(id, marked.len());
        marked.push(g1.is_marked(q1) && g2.is_marked(q2));
        for e in 0..m {
            let t1 = match map1[e] {
                Some(x) => g1.step(q1, x),
                None => Some(q1),
            };
            let t2 = match map2[e] {
                Some(x) => g2.step(q2, x),
                None => Some(q2),
            };
            delta.push(match (t1, t2) {
                (Some(a), Some(b)) => Some(ex.intern((a, b))),
                _ => None,
            });
        }
    }
    Ok(Generator::from_parts(alphabet, None, delta, Some(0), marked))
}

/// Subset construction for `P(L(G))` and `P(L_m(G))`.
///
/// The result is over `target ∩ Σ(G)` with attributes inherited from `g`.
pub fn project(g: &Generator, p: &ProjectionSpec) -> Result<Generator> {
    if !p.source().same_events(g.alphabet()) {
        return Err(Error::AlphabetMismatch("projection source differs from the generator alphabet".into()));
    }
    let target = p.target_alphabet();
    let Some(q0) = g.initial() else {
        return Ok(Generator::empty(target));
    };
    let src = g.alphabet();
    let hidden: Vec<usize> = (0..src.len()).filter(|&e| !p.keeps(e)).collect();
    let kept: Vec<usize> = target.events().iter().map(|e| src.index_of(e).expect("subset")).collect();

    let closure = |seed: Vec<StateId>| -> Vec<StateId> {
        let mut seen = vec![false; g.num_states()];
        let mut stack = Vec::new();
        for q in seed {
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
        while let Some(q) = stack.pop() {
            for &e in &hidden {
                if let Some(t) = g.step(q, e) {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        (0..g.num_states()).filter(|&q| seen[q]).collect()
    };

    let mut ex = Explorer::new();
    ex.intern(closure(vec![q0]));
    let mut delta = Vec::new();
    let mut marked = Vec::new();
    while let Some((_, set)) = ex.next() {
        marked.push(set.iter().any(|&q| g.is_marked(q)));
        for &e in &kept {
            let succ: Vec<StateId> = set.iter().filter_map(|&q| g.step(q, e)).collect();
            delta.push(if succ.is_empty() { None } else { Some(ex.intern(closure(succ))) });
        }
    }
    Ok(Generator::from_parts(target, None, delta, Some(0), marked))
}

/// Projection onto `events ∩ Σ(G)`.
pub fn project_onto(g: &Generator, events: &EventSet) -> Generator {
    project(g, &ProjectionSpec::onto(g.alphabet(), events)).expect("source is the generator alphabet")
}

/// Inverse projection: self-loops every event of `bigger` missing from `g`.
pub fn lift(g: &Generator, bigger: &Alphabet) -> Result<Generator> {
    let merged = bigger.union(g.alphabet())?;
    if merged.len() != bigger.len() {
        return Err(Error::AlphabetMismatch(format!("cannot lift {:?} into {:?}", g.alphabet(), bigger)));
    }
    if g.alphabet().same_events(bigger) {
        return Ok(g.clone());
    }
    let Some(q0) = g.initial() else {
        return Ok(Generator::empty(merged));
    };
    let map: Vec<Option<usize>> = merged.events().iter().map(|e| g.alphabet().index_of(e)).collect();
    let mut delta = Vec::with_capacity(g.num_states() * merged.len());
    for q in 0..g.num_states() {
        for &x in &map {
            delta.push(match x {
                Some(x) => g.step(q, x),
                None => Some(q),
            });
        }
    }
    let marked = g.raw_marked().to_vec();
    Ok(Generator::from_parts(merged, Some(g.labels().to_vec()), delta, Some(q0), marked).with_name(g.name()))
}

/// Keeps the states flagged in `keep`; the result is empty if the initial
/// state is dropped.
pub(crate) fn restrict_states(g: &Generator, keep: &[bool]) -> Generator {
    let Some(q0) = g.initial() else {
        return g.clone();
    };
    if !keep[q0] {
        return Generator::empty(g.alphabet().clone());
    }
    let n = g.num_states();
    let m = g.alphabet().len();
    let mut new_id = vec![usize::MAX; n];
    let mut order = Vec::new();
    for q in 0..n {
        if keep[q] {
            new_id[q] = order.len();
            order.push(q);
        }
    }
    let mut delta = Vec::with_capacity(order.len() * m);
    for &q in &order {
        for e in 0..m {
            delta.push(g.step(q, e).filter(|&t| keep[t]).map(|t| new_id[t]));
        }
    }
    let labels = order.iter().map(|&q| g.label(q).to_string()).collect();
    let marked = order.iter().map(|&q| g.is_marked(q)).collect();
    Generator::from_parts(g.alphabet().clone(), Some(labels), delta, Some(new_id[q0]), marked).with_name(g.name())
}

pub fn accessible(g: &Generator) -> Generator {
    restrict_states(g, &g.reachable())
}

pub fn coaccessible(g: &Generator) -> Generator {
    restrict_states(g, &g.coreachable())
}

pub fn trim(g: &Generator) -> Generator {
    coaccessible(&accessible(g))
}

pub fn is_trim(g: &Generator) -> bool {
    g.reachable().iter().all(|r| *r) && g.coreachable().iter().all(|c| *c)
}

/// Generator whose both languages equal the prefix closure of `L_m(g)`.
pub fn prefix_closure(g: &Generator) -> Generator {
    trim(g).with_all_marked()
}

/// Generator whose both languages equal `L(g)`.
pub fn generated(g: &Generator) -> Generator {
    accessible(g).with_all_marked()
}

/// True iff every accessible state is coaccessible.
pub fn is_nonblocking(g: &Generator) -> bool {
    let reach = g.reachable();
    let co = g.coreachable();
    reach.iter().zip(co.iter()).all(|(r, c)| !r || *c)
}

pub fn intersect(g1: &Generator, g2: &Generator) -> Result<Generator> {
    g1.alphabet().ensure_same(g2.alphabet())?;
    sync_product(g1, g2)
}

pub fn union(g1: &Generator, g2: &Generator) -> Result<Generator> {
    g1.alphabet().ensure_same(g2.alphabet())?;
    let alphabet = g1.alphabet().clone();
    if g1.initial().is_none() && g2.initial().is_none() {
        return Ok(Generator::empty(alphabet));
    }
    let m = alphabet.len();
    let mut ex = Explorer::new();
    ex.intern((g1.initial(), g2.initial()));
    let mut delta = Vec::new();
    let mut marked = Vec::new();
    while let Some((_, (a, b))) = ex.next() {
        marked.push(a.is_some_and(|q| g1.is_marked(q)) || b.is_some_and(|q| g2.is_marked(q)));
        for e in 0..m {
            let ta = a.and_then(|q| g1.step(q, e));
            let tb = b.and_then(|q| g2.step(q, e));
            delta.push(if ta.is_none() && tb.is_none() { None } else { Some(ex.intern((ta, tb))) });
        }
    }
    Ok(Generator::from_parts(alphabet, None, delta, Some(0), marked))
}

/// Trim generator whose marked language is `view(g1) ∖ view(g2)`.
pub fn difference(g1: &Generator, g2: &Generator, view: LanguageView) -> Result<Generator> {
    g1.alphabet().ensure_same(g2.alphabet())?;
    let alphabet = g1.alphabet().clone();
    let Some(i1) = g1.initial() else {
        return Ok(Generator::empty(alphabet));
    };
    let m = alphabet.len();
    let mut ex = Explorer::new();
    ex.intern((i1, g2.initial()));
    let mut delta = Vec::new();
    let mut marked = Vec::new();
    while let Some((_, (a, b))) = ex.next() {
        marked.push(match view {
            LanguageView::Generated => b.is_none(),
            LanguageView::Marked => g1.is_marked(a) && !b.is_some_and(|q| g2.is_marked(q)),
        });
        for e in 0..m {
            delta.push(g1.step(a, e).map(|ta| ex.intern((ta, b.and_then(|q| g2.step(q, e))))));
        }
    }
    Ok(trim(&Generator::from_parts(alphabet, None, delta, Some(0), marked)))
}

/// Shortest (then lexicographically least) word of `view(g1) ∖ view(g2)`.
pub fn inclusion_counterexample(g1: &Generator, g2: &Generator, view: LanguageView) -> Result<Option<Word>> {
    if !g1.alphabet().same_events(g2.alphabet()) {
        return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", g1.alphabet(), g2.alphabet())));
    }
    let Some(i1) = g1.initial() else {
        return Ok(None);
    };
    let m = g1.alphabet().len();
    let bad = |a: StateId, b: Option<StateId>| match view {
        LanguageView::Generated => b.is_none(),
        LanguageView::Marked => g1.is_marked(a) && !b.is_some_and(|q| g2.is_marked(q)),
    };
    let mut ex = Explorer::new();
    let mut parent: Vec<Option<(StateId, usize)>> = vec![None];
    ex.intern((i1, g2.initial()));
    while let Some((id, (a, b))) = ex.next() {
        if bad(a, b) {
            return Ok(Some(trace(&parent, id, g1.alphabet())));
        }
        for e in 0..m {
            if let Some(ta) = g1.step(a, e) {
                let before = ex.states.len();
                let t = ex.intern((ta, b.and_then(|q| g2.step(q, e))));
                if t == before {
                    parent.push(Some((id, e)));
                }
            }
        }
    }
    Ok(None)
}

/// Rebuilds the word leading to `id` from a BFS parent table.
pub(crate) fn trace(parent: &[Option<(StateId, usize)>], mut id: StateId, alphabet: &Alphabet) -> Word {
    let mut w = Vec::new();
    while let Some((p, e)) = parent[id] {
        w.push(alphabet.event(e).clone());
        id = p;
    }
    w.reverse();
    w
}

pub fn language_subset(g1: &Generator, g2: &Generator) -> Result<LanguageRelation> {
    Ok(LanguageRelation {
        generated: inclusion_counterexample(g1, g2, LanguageView::Generated)?.is_none(),
        marked: inclusion_counterexample(g1, g2, LanguageView::Marked)?.is_none(),
    })
}

pub fn language_equal(g1: &Generator, g2: &Generator) -> Result<LanguageRelation> {
    let a = language_subset(g1, g2)?;
    let b = language_subset(g2, g1)?;
    Ok(LanguageRelation { generated: a.generated && b.generated, marked: a.marked && b.marked })
}

/// Shortest word of the chosen language, if any.
pub fn shortest_word(g: &Generator, view: LanguageView) -> Option<Word> {
    inclusion_counterexample(g, &Generator::empty(g.alphabet().clone()), view).expect("same alphabet")
}

/// Minimal generator for the pair `(L(g), L_m(g))` by partition refinement
/// over the accessible part.
pub fn minimize(g: &Generator) -> Generator {
    let g = accessible(g);
    let n = g.num_states();
    if n == 0 {
        return g;
    }
    let m = g.alphabet().len();
    let mut class: Vec<usize> = (0..n).map(|q| usize::from(g.is_marked(q))).collect();
    let mut count = 0;
    loop {
        let mut sig_index: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
        let mut next = vec![0; n];
        for q in 0..n {
            let sig = (class[q], (0..m).map(|e| g.step(q, e).map(|t| class[t])).collect());
            let len = sig_index.len();
            next[q] = *sig_index.entry(sig).or_insert(len);
        }
        let new_count = sig_index.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut delta = vec![None; count * m];
    let mut marked = vec![false; count];
    for q in 0..n {
        let c = class[q];
        marked[c] = g.is_marked(q);
        for e in 0..m {
            delta[c * m + e] = g.step(q, e).map(|t| class[t]);
        }
    }
    Generator::from_parts(g.alphabet().clone(), None, delta, Some(class[0]), marked).with_name(g.name())
}
