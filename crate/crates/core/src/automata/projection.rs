use super::alphabet::{Alphabet, EventId, EventSet};
use crate::error::Result;

/// Natural projection from the words over `source` onto the events of
/// `target`, erasing every other event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSpec {
    source: Alphabet,
    target: EventSet,
}

impl ProjectionSpec {
    /// Strict form: every target event must belong to `source`.
    pub fn new(source: Alphabet, target: EventSet) -> Result<Self> {
        source.check_known(&target)?;
        Ok(ProjectionSpec { source, target })
    }

    /// Projection onto `target ∩ source`.
    pub fn onto(source: &Alphabet, target: &EventSet) -> Self {
        let target = target.iter().filter(|e| source.contains(e)).cloned().collect();
        ProjectionSpec { source: source.clone(), target }
    }

    pub fn identity(source: &Alphabet) -> Self {
        ProjectionSpec { target: source.event_set(), source: source.clone() }
    }

    /// Projection onto the observable events of `source`.
    pub fn observation(source: &Alphabet) -> Self {
        ProjectionSpec { target: source.observable_set(), source: source.clone() }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &EventSet {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.target.len() == self.source.len()
    }

    /// Whether the source event with index `ix` survives the projection.
    pub fn keeps(&self, ix: usize) -> bool {
        self.target.contains(self.source.event(ix))
    }

    /// Alphabet of projected words, attributes inherited from the source.
    pub fn target_alphabet(&self) -> Alphabet {
        self.source.restrict(&self.target)
    }

    pub fn apply(&self, word: &[EventId]) -> Vec<EventId> {
        word.iter().filter(|e| self.target.contains(*e)).cloned().collect()
    }
}
