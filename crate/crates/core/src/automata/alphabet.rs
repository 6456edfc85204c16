use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of an event. Events compare by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EventId(Arc<str>);

impl EventId {
    pub fn new(name: impl AsRef<str>) -> Self {
        EventId(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for EventId {
    fn from(s: &str) -> Self {
        EventId::new(s)
    }
}

impl From<String> for EventId {
    fn from(s: String) -> Self {
        EventId(Arc::from(s))
    }
}

pub type EventSet = BTreeSet<EventId>;

/// Builds an [`EventSet`] from names.
pub fn event_set<I, S>(names: I) -> EventSet
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    names.into_iter().map(EventId::new).collect()
}

/// Control and observation attributes of one event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventAttrs {
    pub controllable: bool,
    pub observable: bool,
}

impl EventAttrs {
    pub const CONTROLLABLE: EventAttrs = EventAttrs { controllable: true, observable: true };
    pub const UNCONTROLLABLE: EventAttrs = EventAttrs { controllable: false, observable: true };

    pub fn new(controllable: bool, observable: bool) -> Self {
        EventAttrs { controllable, observable }
    }
}

impl Default for EventAttrs {
    fn default() -> Self {
        EventAttrs::CONTROLLABLE
    }
}

/// A finite event set with controllability and observability attributes.
///
/// Events are kept sorted by name, so an event's index is its rank in the
/// alphabet. The uncontrollable and unobservable sets are always derived from
/// the per-event attributes.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Alphabet {
    events: Vec<EventId>,
    attrs: Vec<EventAttrs>,
}

impl Alphabet {
    pub fn new() -> Self {
        Alphabet::default()
    }

    /// Checked construction: a repeated event must repeat its attributes.
    pub fn try_from_events<I>(events: I) -> Result<Self>
    where
        I: IntoIterator<Item = (EventId, EventAttrs)>,
    {
        let mut a = Alphabet::new();
        for (e, at) in events {
            a.insert(e, at)?;
        }
        Ok(a)
    }

    /// Adds (or overwrites) an event. Builder-style.
    pub fn with(mut self, name: impl Into<EventId>, attrs: EventAttrs) -> Self {
        let e = name.into();
        match self.events.binary_search(&e) {
            Ok(i) => self.attrs[i] = attrs,
            Err(i) => {
                self.events.insert(i, e);
                self.attrs.insert(i, attrs);
            }
        }
        self
    }

    /// Controllable, observable event.
    pub fn controllable(self, name: impl Into<EventId>) -> Self {
        self.with(name, EventAttrs::CONTROLLABLE)
    }

    /// Uncontrollable, observable event.
    pub fn uncontrollable(self, name: impl Into<EventId>) -> Self {
        self.with(name, EventAttrs::UNCONTROLLABLE)
    }

    pub fn insert(&mut self, e: EventId, attrs: EventAttrs) -> Result<()> {
        match self.events.binary_search(&e) {
            Ok(i) => check_attrs(&e, self.attrs[i], attrs),
            Err(i) => {
                self.events.insert(i, e);
                self.attrs.insert(i, attrs);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[EventId] {
        &self.events
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EventId, EventAttrs)> + '_ {
        self.events.iter().zip(self.attrs.iter().copied())
    }

    pub fn index_of(&self, e: &EventId) -> Option<usize> {
        self.events.binary_search(e).ok()
    }

    pub fn index_of_str(&self, name: &str) -> Option<usize> {
        self.events.binary_search_by(|x| x.as_str().cmp(name)).ok()
    }

    pub fn contains(&self, e: &EventId) -> bool {
        self.index_of(e).is_some()
    }

    pub fn event(&self, ix: usize) -> &EventId {
        &self.events[ix]
    }

    pub fn attrs(&self, ix: usize) -> EventAttrs {
        self.attrs[ix]
    }

    pub fn attrs_of(&self, e: &EventId) -> Option<EventAttrs> {
        self.index_of(e).map(|i| self.attrs[i])
    }

    pub fn is_controllable(&self, ix: usize) -> bool {
        self.attrs[ix].controllable
    }

    pub fn is_observable(&self, ix: usize) -> bool {
        self.attrs[ix].observable
    }

    pub fn event_set(&self) -> EventSet {
        self.events.iter().cloned().collect()
    }

    pub fn controllable_set(&self) -> EventSet {
        self.filtered(|a| a.controllable)
    }

    pub fn uncontrollable_set(&self) -> EventSet {
        self.filtered(|a| !a.controllable)
    }

    pub fn observable_set(&self) -> EventSet {
        self.filtered(|a| a.observable)
    }

    fn filtered(&self, keep: impl Fn(EventAttrs) -> bool) -> EventSet {
        self.iter().filter(|(_, a)| keep(*a)).map(|(e, _)| e.clone()).collect()
    }

    /// Same event names, attributes ignored.
    pub fn same_events(&self, other: &Alphabet) -> bool {
        self.events == other.events
    }

    /// Same event names and agreeing attributes.
    pub fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if !self.same_events(other) {
            return Err(Error::AlphabetMismatch(format!(
                "{{{}}} vs {{{}}}",
                join(self.events.iter()),
                join(other.events.iter())
            )));
        }
        for (i, e) in self.events.iter().enumerate() {
            check_attrs(e, self.attrs[i], other.attrs[i])?;
        }
        Ok(())
    }

    /// Union of two alphabets; shared events must agree on their attributes.
    pub fn union(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut out = self.clone();
        for (e, a) in other.iter() {
            out.insert(e.clone(), a)?;
        }
        Ok(out)
    }

    /// Sub-alphabet of the events that also belong to `keep`.
    pub fn restrict(&self, keep: &EventSet) -> Alphabet {
        let mut out = Alphabet::new();
        for (e, a) in self.iter() {
            if keep.contains(e) {
                out.events.push(e.clone());
                out.attrs.push(a);
            }
        }
        out
    }

    /// Copy with every event observable.
    pub fn fully_observed(&self) -> Alphabet {
        Alphabet {
            events: self.events.clone(),
            attrs: self.attrs.iter().map(|a| EventAttrs { observable: true, ..*a }).collect(),
        }
    }

    /// Errors unless every name in `set` belongs to this alphabet.
    pub fn check_known(&self, set: &EventSet) -> Result<()> {
        match set.iter().find(|e| !self.contains(e)) {
            Some(e) => Err(Error::UnknownEvent(e.to_string())),
            None => Ok(()),
        }
    }
}

fn check_attrs(e: &EventId, a: EventAttrs, b: EventAttrs) -> Result<()> {
    if a.controllable != b.controllable {
        return Err(Error::AttributeConflict { event: e.to_string(), attribute: "controllability" });
    }
    if a.observable != b.observable {
        return Err(Error::AttributeConflict { event: e.to_string(), attribute: "observability" });
    }
    Ok(())
}

pub(crate) fn join<'a>(it: impl Iterator<Item = &'a EventId>) -> String {
    it.map(|e| e.as_str()).collect::<Vec<_>>().join(",")
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (e, a)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
            if !a.controllable {
                f.write_str(":u")?;
            }
            if !a.observable {
                f.write_str(":uo")?;
            }
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn events_sorted_and_indexed() {
        let a = Alphabet::new().uncontrollable("u").controllable("a2").controllable("a1");
        assert_eq!(a.events().iter().map(|e| e.as_str()).collect::<Vec<_>>(), ["a1", "a2", "u"]);
        assert_eq!(a.index_of_str("u"), Some(2));
        assert_eq!(a.uncontrollable_set(), event_set(["u"]));
        assert_eq!(a.controllable_set(), event_set(["a1", "a2"]));
    }

    #[test]
    fn union_rejects_conflicting_attributes() {
        let a = Alphabet::new().controllable("x");
        let b = Alphabet::new().uncontrollable("x");
        assert!(matches!(a.union(&b), Err(Error::AttributeConflict { .. })));
        let c = Alphabet::new().with("x", EventAttrs::new(true, false));
        assert!(matches!(a.union(&c), Err(Error::AttributeConflict { attribute: "observability", .. })));
    }

    #[test]
    fn restrict_and_union() {
        let a = Alphabet::new().controllable("a").uncontrollable("u");
        let b = Alphabet::new().controllable("b").uncontrollable("u");
        let ab = a.union(&b).unwrap();
        assert_eq!(ab.len(), 3);
        assert_eq!(ab.restrict(&event_set(["u", "zzz"])).event_set(), event_set(["u"]));
    }
}
