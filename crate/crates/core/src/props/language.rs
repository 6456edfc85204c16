use std::collections::VecDeque;

use super::{PropertyVerdict, Witness};
use crate::automata::ops::{inclusion_counterexample, trace};
use crate::automata::{
    generated, intersect, lift, prefix_closure, project, sync_product, Generator, LanguageView, ProjectionSpec,
    StateId, Word,
};
use crate::error::{Error, Result};

fn same_alphabet(a: &Generator, b: &Generator) -> Result<()> {
    a.alphabet().ensure_same(b.alphabet())
}

/// `K̄ Σ_u ∩ L ⊆ K̄` with `K̄` the closure of `L_m(k)` and `L = L(l)`.
pub fn is_controllable(k: &Generator, l: &Generator) -> Result<PropertyVerdict> {
    same_alphabet(k, l)?;
    let kbar = prefix_closure(k);
    let (Some(k0), Some(l0)) = (kbar.initial(), l.initial()) else {
        return Ok(PropertyVerdict::pass());
    };
    let alphabet = k.alphabet();
    let m = alphabet.len();
    let n = kbar.num_states();
    let mut seen = vec![Vec::<StateId>::new(); n];
    let mut nodes = vec![(k0, l0)];
    let mut parent: Vec<Option<(StateId, usize)>> = vec![None];
    seen[k0].push(l0);
    let mut head = 0;
    while head < nodes.len() {
        let (x, y) = nodes[head];
        for e in 0..m {
            let Some(ty) = l.step(y, e) else { continue };
            match kbar.step(x, e) {
                None if !alphabet.is_controllable(e) => {
                    return Ok(PropertyVerdict::fail(Witness::Controllability {
                        prefix: trace(&parent, head, alphabet),
                        event: alphabet.event(e).clone(),
                    }));
                }
                Some(tx) if !seen[tx].contains(&ty) => {
                    seen[tx].push(ty);
                    nodes.push((tx, ty));
                    parent.push(Some((head, e)));
                }
                _ => {}
            }
        }
        head += 1;
    }
    Ok(PropertyVerdict::pass())
}

#[derive(Clone, Copy)]
enum Move {
    Both(usize),
    Staying(usize),
    Exiting(usize),
}

/// Searches for `s, s'` with equal observations, `s ∈ K̄`, `s' ∈ C̄`,
/// and an event `σ` (among `candidates`) with `sσ ∈ K̄`, `s'σ ∈ L ∖ K̄`.
fn observation_conflict(
    kbar: &Generator,
    cbar: &Generator,
    plant: &Generator,
    observed: &[bool],
    candidates: &[bool],
) -> Option<Witness> {
    let (Some(k0), Some(c0), Some(l0)) = (kbar.initial(), cbar.initial(), plant.initial()) else {
        return None;
    };
    type Node = (StateId, StateId, StateId, Option<StateId>);
    let alphabet = kbar.alphabet();
    let m = alphabet.len();
    let mut index = std::collections::HashMap::<Node, usize>::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut parent: Vec<Option<(usize, Move)>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut push = |node: Node, from: Option<(usize, Move)>, nodes: &mut Vec<Node>, queue: &mut VecDeque<usize>| {
        if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(node) {
            slot.insert(nodes.len());
            queue.push_back(nodes.len());
            nodes.push(node);
            parent.push(from);
        }
    };
    push((k0, c0, l0, Some(k0)), None, &mut nodes, &mut queue);
    while let Some(id) = queue.pop_front() {
        let (a, c, y, b) = nodes[id];
        for e in (0..m).filter(|&e| candidates[e]) {
            let stays = kbar.step(a, e).is_some();
            let leaves = plant.step(y, e).is_some() && b.and_then(|b| kbar.step(b, e)).is_none();
            if stays && leaves {
                let (mut staying, mut exiting) = (Vec::new(), Vec::new());
                let mut cur = id;
                while let Some((p, mv)) = parent[cur] {
                    match mv {
                        Move::Both(x) => {
                            staying.push(alphabet.event(x).clone());
                            exiting.push(alphabet.event(x).clone());
                        }
                        Move::Staying(x) => staying.push(alphabet.event(x).clone()),
                        Move::Exiting(x) => exiting.push(alphabet.event(x).clone()),
                    }
                    cur = p;
                }
                staying.reverse();
                exiting.reverse();
                return Some(Witness::Observability { exiting, staying, event: alphabet.event(e).clone() });
            }
        }
        for (e, &seen) in observed.iter().enumerate() {
            if seen {
                if let (Some(a2), Some(c2), Some(y2)) = (kbar.step(a, e), cbar.step(c, e), plant.step(y, e)) {
                    let b2 = b.and_then(|b| kbar.step(b, e));
                    push((a2, c2, y2, b2), Some((id, Move::Both(e))), &mut nodes, &mut queue);
                }
            } else {
                if let Some(a2) = kbar.step(a, e) {
                    push((a2, c, y, b), Some((id, Move::Staying(e))), &mut nodes, &mut queue);
                }
                if let (Some(c2), Some(y2)) = (cbar.step(c, e), plant.step(y, e)) {
                    let b2 = b.and_then(|b| kbar.step(b, e));
                    push((a, c2, y2, b2), Some((id, Move::Exiting(e))), &mut nodes, &mut queue);
                }
            }
        }
    }
    None
}

fn observed_mask(p: &ProjectionSpec) -> Vec<bool> {
    (0..p.source().len()).map(|e| p.keeps(e)).collect()
}

/// Observability of `K̄` w.r.t. `L(l)`, `Σ_c` and the projection onto `Σ_o`.
pub fn is_observable(k: &Generator, l: &Generator) -> Result<PropertyVerdict> {
    is_observable_under(k, l, &ProjectionSpec::observation(k.alphabet()))
}

/// Observability with an explicit observation projection.
pub fn is_observable_under(k: &Generator, l: &Generator, p: &ProjectionSpec) -> Result<PropertyVerdict> {
    same_alphabet(k, l)?;
    if !p.source().same_events(k.alphabet()) {
        return Err(Error::AlphabetMismatch("projection source differs from the specification alphabet".into()));
    }
    let kbar = prefix_closure(k);
    let controllable: Vec<bool> = (0..k.alphabet().len()).map(|e| k.alphabet().is_controllable(e)).collect();
    Ok(PropertyVerdict::from_witness(observation_conflict(&kbar, &kbar, l, &observed_mask(p), &controllable)))
}

/// `C`-observability of `K` (all events are candidates).
pub fn is_relatively_observable(k: &Generator, c: &Generator, l: &Generator) -> Result<PropertyVerdict> {
    is_relatively_observable_under(k, c, l, &ProjectionSpec::observation(k.alphabet()))
}

pub fn is_relatively_observable_under(
    k: &Generator,
    c: &Generator,
    l: &Generator,
    p: &ProjectionSpec,
) -> Result<PropertyVerdict> {
    same_alphabet(k, c)?;
    same_alphabet(c, l)?;
    if !p.source().same_events(k.alphabet()) {
        return Err(Error::AlphabetMismatch("projection source differs from the specification alphabet".into()));
    }
    let kbar = prefix_closure(k);
    let cbar = prefix_closure(c);
    if let Some(w) = inclusion_counterexample(&kbar, &cbar, LanguageView::Generated)? {
        return Err(Error::PreconditionViolated(format!(
            "closure of K is not included in closure of C (`{}`)",
            crate::automata::format_word(&w)
        )));
    }
    if let Some(w) = inclusion_counterexample(&cbar, l, LanguageView::Generated)? {
        return Err(Error::PreconditionViolated(format!(
            "closure of C is not included in L (`{}`)",
            crate::automata::format_word(&w)
        )));
    }
    let all = vec![true; k.alphabet().len()];
    Ok(PropertyVerdict::from_witness(observation_conflict(&kbar, &cbar, l, &observed_mask(p), &all)))
}

/// Normality w.r.t. `L(l)` and the projection onto `Σ_o`.
pub fn is_normal(k: &Generator, l: &Generator) -> Result<PropertyVerdict> {
    is_normal_under(k, l, &ProjectionSpec::observation(k.alphabet()))
}

/// `K̄ = P⁻¹P(K̄) ∩ L(l)`.
pub fn is_normal_under(k: &Generator, l: &Generator, p: &ProjectionSpec) -> Result<PropertyVerdict> {
    same_alphabet(k, l)?;
    let kbar = prefix_closure(k);
    let rhs = intersect(&lift(&project(&kbar, p)?, k.alphabet())?, &generated(l))?;
    let w = match inclusion_counterexample(&rhs, &kbar, LanguageView::Generated)? {
        Some(w) => Some(w),
        None => inclusion_counterexample(&kbar, &rhs, LanguageView::Generated)?,
    };
    Ok(PropertyVerdict::from_witness(w.map(|word| Witness::Word { word })))
}

/// `K = K̄ ∩ L_m(g)`.
pub fn is_lm_closed(k: &Generator, g: &Generator) -> Result<PropertyVerdict> {
    same_alphabet(k, g)?;
    let rhs = intersect(&prefix_closure(k), g)?;
    let w = match inclusion_counterexample(&rhs, k, LanguageView::Marked)? {
        Some(w) => Some(w),
        None => inclusion_counterexample(k, &rhs, LanguageView::Marked)?,
    };
    Ok(PropertyVerdict::from_witness(w.map(|word| Witness::Word { word })))
}

/// `closure(K1 ∥ K2) = closure(K1) ∥ closure(K2)`; the witness is a word of
/// the right side that cannot be extended to `K1 ∥ K2`.
pub fn is_sync_nonconflicting(k1: &Generator, k2: &Generator) -> Result<PropertyVerdict> {
    let lhs = prefix_closure(&sync_product(k1, k2)?);
    let rhs = sync_product(&prefix_closure(k1), &prefix_closure(k2))?;
    let w: Option<Word> = inclusion_counterexample(&rhs, &lhs, LanguageView::Generated)?;
    Ok(PropertyVerdict::from_witness(w.map(|word| Witness::Word { word })))
}
