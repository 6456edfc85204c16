//! Decision procedures for the language properties used in supervisory
//! control.
//!
//! Every check works on generators. Wherever a property speaks about the
//! prefix closure `K̄` of a specification, the closure of the marked language
//! of the specification generator is used. Failed checks carry a witness of
//! minimal length.

mod language;
mod observer;

use std::fmt;

use serde::Serialize;

use crate::automata::{format_word, EventId, Word};

pub use language::{
    is_controllable, is_lm_closed, is_normal, is_normal_under, is_observable, is_observable_under,
    is_relatively_observable, is_relatively_observable_under, is_sync_nonconflicting,
};
pub use observer::{is_lcc, is_observer, is_occ, observer_violations};

/// Which part of a coordinated system a verdict refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
    Coordinator,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::First => "side 1",
            Side::Second => "side 2",
            Side::Coordinator => "coordinator",
        })
    }
}

/// Counterexample attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `prefix ∈ K̄` and `prefix·event ∈ L ∖ K̄` with `event` uncontrollable.
    Controllability { prefix: Word, event: EventId },
    /// `staying·event ∈ K̄`, `exiting·event ∈ L ∖ K̄`, and both words look the
    /// same to the observer.
    Observability { exiting: Word, staying: Word, event: EventId },
    /// A word on which two languages required to coincide differ.
    Word { word: Word },
    /// `target` extends the observation of `prefix` within `P(L_m)`, but no
    /// marked continuation of `prefix` is observed as `target`.
    Observer { prefix: Word, target: Word },
    /// After `prefix`, `event` is reachable through hidden events but not
    /// through hidden uncontrollable ones.
    Lcc { prefix: Word, event: EventId },
    /// The failure happened on one side of a coordinated system.
    Side { side: Side, witness: Box<Witness> },
}

impl Witness {
    pub fn on(self, side: Side) -> Witness {
        Witness::Side { side, witness: Box::new(self) }
    }

    /// Strips any side tags.
    pub fn inner(&self) -> &Witness {
        match self {
            Witness::Side { witness, .. } => witness.inner(),
            w => w,
        }
    }

    pub fn side(&self) -> Option<Side> {
        match self {
            Witness::Side { side, .. } => Some(*side),
            _ => None,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Controllability { prefix, event } => {
                write!(f, "after `{}` uncontrollable `{event}` leaves the specification", format_word(prefix))
            }
            Witness::Observability { exiting, staying, event } => write!(
                f,
                "`{}` and `{}` look alike but `{event}` must be enabled after the second and disabled after the first",
                format_word(staying),
                format_word(exiting)
            ),
            Witness::Word { word } => write!(f, "word `{}`", format_word(word)),
            Witness::Observer { prefix, target } => write!(
                f,
                "after `{}` the observation `{}` cannot be completed",
                format_word(prefix),
                format_word(target)
            ),
            Witness::Lcc { prefix, event } => write!(
                f,
                "after `{}` `{event}` is reachable only through controllable hidden events",
                format_word(prefix)
            ),
            Witness::Side { side, witness } => write!(f, "{side}: {witness}"),
        }
    }
}

/// Outcome of a property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyVerdict {
    pub fn pass() -> Self {
        PropertyVerdict { holds: true, witness: None }
    }

    pub fn fail(witness: Witness) -> Self {
        PropertyVerdict { holds: false, witness: Some(witness) }
    }

    pub fn from_witness(w: Option<Witness>) -> Self {
        match w {
            Some(w) => PropertyVerdict::fail(w),
            None => PropertyVerdict::pass(),
        }
    }

    /// Tags the witness (if any) with `side`.
    pub fn on(self, side: Side) -> Self {
        PropertyVerdict { holds: self.holds, witness: self.witness.map(|w| w.on(side)) }
    }

    /// First failing verdict, or a pass.
    pub fn all(verdicts: impl IntoIterator<Item = PropertyVerdict>) -> Self {
        verdicts.into_iter().find(|v| !v.holds).unwrap_or_else(PropertyVerdict::pass)
    }
}

impl fmt::Display for PropertyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.holds, &self.witness) {
            (true, _) => f.write_str("holds"),
            (false, Some(w)) => write!(f, "fails: {w}"),
            (false, None) => f.write_str("fails"),
        }
    }
}
