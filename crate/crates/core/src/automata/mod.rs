//! Deterministic finite generators and the language algebra built on them.

mod alphabet;
mod generator;
pub mod ops;
mod projection;

pub use alphabet::{event_set, Alphabet, EventAttrs, EventId, EventSet};
pub use generator::{format_word, parse_word, Generator, GeneratorBuilder, StateId, Word};
pub use ops::{
    accessible, coaccessible, difference, generated, inclusion_counterexample, intersect, is_nonblocking, is_trim,
    language_equal, language_subset, lift, minimize, prefix_closure, project, project_onto, shortest_word,
    sync_product, trim, union, LanguageRelation, LanguageView,
};
pub use projection::ProjectionSpec;
