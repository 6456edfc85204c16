//! Supremal controllable and supremal controllable-normal sublanguages.
//!
//! Specifications are first intersected with the marked language of the
//! plant, so `K ⊆ L_m(G)` is not required of the caller.

use crate::automata::{
    generated, intersect, language_equal, lift, prefix_closure, project, trim, Generator, ProjectionSpec, StateId,
};
use crate::error::{Error, Result};

/// Upper bound on alternating supC/supN rounds.
pub const MAX_ROUNDS: usize = 10_000;

/// Arguments of a supremal-sublanguage computation.
#[derive(Clone, Debug)]
pub struct SynthesisInput {
    pub spec: Generator,
    pub plant: Generator,
    pub projection: Option<ProjectionSpec>,
}

impl SynthesisInput {
    pub fn new(spec: Generator, plant: Generator) -> Self {
        SynthesisInput { spec, plant, projection: None }
    }

    pub fn with_projection(mut self, p: ProjectionSpec) -> Self {
        self.projection = Some(p);
        self
    }

    /// Projection onto the observable events of the plant.
    pub fn observed(self) -> Self {
        let p = ProjectionSpec::observation(self.plant.alphabet());
        self.with_projection(p)
    }

    fn check(&self) -> Result<()> {
        self.spec.alphabet().ensure_same(self.plant.alphabet())?;
        if let Some(p) = &self.projection {
            if !p.source().same_events(self.plant.alphabet()) {
                return Err(Error::AlphabetMismatch("projection source differs from the plant alphabet".into()));
            }
        }
        Ok(())
    }

    fn projection(&self) -> Result<&ProjectionSpec> {
        self.projection.as_ref().ok_or(Error::MissingProjection)
    }
}

/// `supC(K, L(G), Σ_u)`.
pub fn sup_c(input: &SynthesisInput) -> Result<Generator> {
    input.check()?;
    Ok(sup_c_unchecked(&input.spec, &input.plant))
}

fn sup_c_unchecked(spec: &Generator, plant: &Generator) -> Generator {
    let spec = trim(spec);
    let plant = generated(plant);
    let alphabet = plant.alphabet().clone();
    let m = alphabet.len();
    let (Some(x0), Some(y0)) = (spec.initial(), plant.initial()) else {
        return Generator::empty(alphabet);
    };

    // product of spec and plant, remembering the plant state of each node
    let mut index = std::collections::HashMap::new();
    let mut nodes: Vec<(StateId, StateId)> = vec![(x0, y0)];
    index.insert((x0, y0), 0usize);
    let mut delta: Vec<Option<StateId>> = Vec::new();
    let mut head = 0;
    while head < nodes.len() {
        let (x, y) = nodes[head];
        for e in 0..m {
            delta.push(match (spec.step(x, e), plant.step(y, e)) {
                (Some(x2), Some(y2)) => Some(*index.entry((x2, y2)).or_insert_with(|| {
                    nodes.push((x2, y2));
                    nodes.len() - 1
                })),
                _ => None,
            });
        }
        head += 1;
    }
    let n = nodes.len();
    let marked: Vec<bool> = nodes.iter().map(|&(x, y)| spec.is_marked(x) && plant.is_marked(y)).collect();
    let uncontrollable: Vec<usize> = (0..m).filter(|&e| !alphabet.is_controllable(e)).collect();

    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for q in 0..n {
            if !alive[q] {
                continue;
            }
            let y = nodes[q].1;
            let bad = uncontrollable
                .iter()
                .any(|&e| plant.step(y, e).is_some() && !delta[q * m + e].is_some_and(|t| alive[t]));
            if bad {
                alive[q] = false;
                changed = true;
            }
        }
        let co = coreachable_among(&delta, &marked, &alive, m);
        for q in 0..n {
            if alive[q] && !co[q] {
                alive[q] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if !alive[0] {
        return Generator::empty(alphabet);
    }
    let delta = delta.iter().map(|t| t.filter(|&t| alive[t])).collect();
    let marked = marked.iter().zip(&alive).map(|(m, a)| *m && *a).collect();
    trim(&Generator::from_parts(alphabet, None, delta, Some(0), marked))
}

fn coreachable_among(delta: &[Option<StateId>], marked: &[bool], alive: &[bool], m: usize) -> Vec<bool> {
    let n = marked.len();
    let mut co: Vec<bool> = (0..n).map(|q| alive[q] && marked[q]).collect();
    loop {
        let mut changed = false;
        for q in 0..n {
            if alive[q] && !co[q] && (0..m).any(|e| delta[q * m + e].is_some_and(|t| co[t])) {
                co[q] = true;
                changed = true;
            }
        }
        if !changed {
            return co;
        }
    }
}

/// Supremal sublanguage of `K̄ ∩ L(G)` that is normal w.r.t. `L(G)` and the
/// projection, computed as `K̄ ∖ P⁻¹P(L ∖ K̄)Σ*`. The result is prefix-closed
/// with every state marked.
pub fn sup_n(input: &SynthesisInput) -> Result<Generator> {
    input.check()?;
    let p = input.projection()?;
    sup_normal_closed(&prefix_closure(&input.spec), &input.plant, p)
}

pub(crate) fn sup_normal_closed(kbar: &Generator, plant: &Generator, p: &ProjectionSpec) -> Result<Generator> {
    let l = generated(plant);
    let c = intersect(&prefix_closure(kbar), &l)?.with_all_marked();
    let alphabet = l.alphabet().clone();
    let m = alphabet.len();
    let Some(c0) = c.initial() else {
        return Ok(Generator::empty(alphabet));
    };
    // words of L leaving C, as a generator whose marked language is L ∖ C
    let outside = crate::automata::difference(&l, &c, crate::automata::LanguageView::Marked)?;
    let tainted = lift(&project(&outside, p)?, &alphabet)?;
    let Some(d0) = tainted.initial() else {
        return Ok(c);
    };
    if tainted.is_marked(d0) {
        return Ok(Generator::empty(alphabet));
    }
    let mut index = std::collections::HashMap::new();
    let mut nodes = vec![(c0, Some(d0))];
    index.insert((c0, Some(d0)), 0usize);
    let mut delta = Vec::new();
    let mut head = 0;
    while head < nodes.len() {
        let (x, d) = nodes[head];
        for e in 0..m {
            let next = c.step(x, e).and_then(|x2| {
                let d2 = d.and_then(|d| tainted.step(d, e));
                if d2.is_some_and(|d2| tainted.is_marked(d2)) {
                    return None;
                }
                Some(*index.entry((x2, d2)).or_insert_with(|| {
                    nodes.push((x2, d2));
                    nodes.len() - 1
                }))
            });
            delta.push(next);
        }
        head += 1;
    }
    let marked = vec![true; nodes.len()];
    Ok(Generator::from_parts(alphabet, None, delta, Some(0), marked))
}

/// `supCN(K, L(G), Σ_u, P)`: alternates supC with normality pruning of the
/// closure until both hold.
pub fn sup_cn(input: &SynthesisInput) -> Result<Generator> {
    input.check()?;
    let p = input.projection()?;
    let mut current = trim(&intersect(&input.spec, &input.plant)?);
    for _ in 0..MAX_ROUNDS {
        let controllable = sup_c_unchecked(&current, &input.plant);
        let normal = sup_normal_closed(&controllable, &input.plant, p)?;
        let next = trim(&intersect(&controllable, &normal)?);
        if language_equal(&next, &current)?.marked {
            return Ok(next);
        }
        current = next;
    }
    Err(Error::FixpointNotReached(MAX_ROUNDS))
}
