//! Supervisory control synthesis for modular discrete-event systems with a
//! coordinator.
//!
//! The crate is layered bottom-up:
//!
//! * [`automata`]: deterministic generators, synchronous product, natural
//!   projection and the boolean language algebra.
//! * [`props`]: decision procedures for controllability, observability,
//!   normality, observer and consistency properties, each returning a
//!   [`props::PropertyVerdict`] with a replayable witness.
//! * [`synthesis`]: supremal controllable and supremal controllable-normal
//!   sublanguages.
//! * [`coordination`]: coordinator construction, conditional properties and
//!   the two-subsystem synthesis pipeline.
//! * [`io`]: the `.gen` text format and synthesis reports.

pub mod automata;
pub mod coordination;
mod error;
pub mod fixtures;
pub mod io;
pub mod props;
pub mod synthesis;

pub use automata::{Alphabet, EventAttrs, EventId, EventSet, Generator, ProjectionSpec, Word};
pub use error::{Error, Result};
