use std::collections::{HashMap, VecDeque};

use super::{PropertyVerdict, Witness};
use crate::automata::ops::{inclusion_counterexample, trace};
use crate::automata::{accessible, is_trim, project, Generator, LanguageView, ProjectionSpec, StateId};
use crate::error::{Error, Result};

fn check_source(p: &ProjectionSpec, g: &Generator) -> Result<()> {
    if p.source().same_events(g.alphabet()) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch("projection source differs from the generator alphabet".into()))
    }
}

/// Walks the reachable pairs of `g × P(g)` and, for each one, looks for an
/// observed continuation of the projection that `g` cannot complete. Calls
/// `visit` with every failing `(prefix, target)`; stops early when `visit`
/// returns `false`.
fn observer_scan(p: &ProjectionSpec, g: &Generator, mut visit: impl FnMut(Witness) -> bool) -> Result<()> {
    check_source(p, g)?;
    if !is_trim(g) {
        return Err(Error::PreconditionViolated("observer check needs a trim generator".into()));
    }
    let Some(q0) = g.initial() else {
        return Ok(());
    };
    let h = project(g, p)?;
    let alphabet = g.alphabet();
    let target_ix: Vec<Option<usize>> = alphabet.events().iter().map(|e| h.alphabet().index_of(e)).collect();

    let mut index = HashMap::new();
    let mut nodes = vec![(q0, 0usize)];
    let mut parent: Vec<Option<(StateId, usize)>> = vec![None];
    index.insert((q0, 0usize), 0usize);
    let mut projected_from: HashMap<StateId, Generator> = HashMap::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let (q, x) = nodes[id];
        let local = projected_from.entry(q).or_insert_with(|| project(&g.rooted_at(q), p).expect("same source"));
        let observed = h.rooted_at(x);
        if let Some(rest) = inclusion_counterexample(&observed, local, LanguageView::Marked)? {
            let prefix = trace(&parent, id, alphabet);
            let mut target = p.apply(&prefix);
            target.extend(rest);
            if !visit(Witness::Observer { prefix, target }) {
                return Ok(());
            }
        }
        for (e, t) in g.enabled(q) {
            let x2 = match target_ix[e] {
                Some(te) => h.step(x, te).expect("projection covers every run"),
                None => x,
            };
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry((t, x2)) {
                slot.insert(nodes.len());
                queue.push_back(nodes.len());
                nodes.push((t, x2));
                parent.push(Some((id, e)));
            }
        }
    }
    Ok(())
}

/// Whether `p` is an `L_m(g)`-observer. `g` must be trim; pass
/// [`generated`](crate::automata::generated) of a plant to test the
/// prefix-closed language instead.
pub fn is_observer(p: &ProjectionSpec, g: &Generator) -> Result<PropertyVerdict> {
    let mut found = None;
    observer_scan(p, g, |w| {
        found = Some(w);
        false
    })?;
    Ok(PropertyVerdict::from_witness(found))
}

/// Number of reachable `(state, observation)` pairs violating the observer
/// condition.
pub fn observer_violations(p: &ProjectionSpec, g: &Generator) -> Result<usize> {
    let mut count = 0;
    observer_scan(p, g, |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// Output control consistency of `p` on `L(g)`: no uncontrollable target
/// event is preceded, since the previous target event, by a controllable
/// hidden event.
pub fn is_occ(p: &ProjectionSpec, g: &Generator) -> Result<PropertyVerdict> {
    check_source(p, g)?;
    let g = accessible(g);
    let Some(q0) = g.initial() else {
        return Ok(PropertyVerdict::pass());
    };
    let alphabet = g.alphabet();
    let mut seen = vec![[false; 2]; g.num_states()];
    let mut nodes = vec![(q0, false)];
    let mut parent: Vec<Option<(StateId, usize)>> = vec![None];
    seen[q0][0] = true;
    let mut head = 0;
    while head < nodes.len() {
        let (q, guarded) = nodes[head];
        for (e, t) in g.enabled(q) {
            let next = if p.keeps(e) {
                if guarded && !alphabet.is_controllable(e) {
                    let mut word = trace(&parent, head, alphabet);
                    word.push(alphabet.event(e).clone());
                    return Ok(PropertyVerdict::fail(Witness::Word { word }));
                }
                false
            } else {
                guarded || alphabet.is_controllable(e)
            };
            if !seen[t][usize::from(next)] {
                seen[t][usize::from(next)] = true;
                nodes.push((t, next));
                parent.push(Some((head, e)));
            }
        }
        head += 1;
    }
    Ok(PropertyVerdict::pass())
}

/// States reachable from `q` using only events accepted by `allowed`.
fn hidden_reach(g: &Generator, q: StateId, allowed: impl Fn(usize) -> bool) -> Vec<StateId> {
    let mut seen = vec![false; g.num_states()];
    let mut stack = vec![q];
    seen[q] = true;
    let mut out = Vec::new();
    while let Some(s) = stack.pop() {
        out.push(s);
        for (e, t) in g.enabled(s) {
            if allowed(e) && !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    out
}

/// Local control consistency of `p` on `L(g)`.
pub fn is_lcc(p: &ProjectionSpec, g: &Generator) -> Result<PropertyVerdict> {
    check_source(p, g)?;
    let g = accessible(g);
    let Some(q0) = g.initial() else {
        return Ok(PropertyVerdict::pass());
    };
    let alphabet = g.alphabet();
    let m = alphabet.len();
    let targets: Vec<usize> = (0..m).filter(|&e| p.keeps(e) && !alphabet.is_controllable(e)).collect();
    if targets.is_empty() {
        return Ok(PropertyVerdict::pass());
    }
    // canonical order is BFS, so a parent table over states gives shortest words
    let mut parent: Vec<Option<(StateId, usize)>> = vec![None; g.num_states()];
    let mut seen = vec![false; g.num_states()];
    seen[q0] = true;
    let mut queue = VecDeque::from([q0]);
    while let Some(q) = queue.pop_front() {
        let any = hidden_reach(&g, q, |e| !p.keeps(e));
        let unc = hidden_reach(&g, q, |e| !p.keeps(e) && !alphabet.is_controllable(e));
        for &sigma in &targets {
            let enabled_in = |set: &[StateId]| set.iter().any(|&s| g.step(s, sigma).is_some());
            if enabled_in(&any) && !enabled_in(&unc) {
                return Ok(PropertyVerdict::fail(Witness::Lcc {
                    prefix: trace(&parent, q, alphabet),
                    event: alphabet.event(sigma).clone(),
                }));
            }
        }
        for (e, t) in g.enabled(q) {
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((q, e));
                queue.push_back(t);
            }
        }
    }
    Ok(PropertyVerdict::pass())
}
