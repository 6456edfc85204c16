//! The line-oriented `.gen` generator format.
//!
//! ```text
//! # subsystem 1
//! name: G1
//! events: a1 c u:u u1:u
//! states: s0 s1 s2 s3 s4
//! initial: s0
//! marked: s0 s1 s2 s3 s4
//! trans:
//! s0 a1 s1
//! s0 c s2
//! s1 u s3
//! s2 u1 s4
//! ```
//!
//! Event entries are `name[:c|:u][:o|:uo]`; events are controllable and
//! observable unless flagged. Section bodies may start on the header line and
//! continue on the following lines. `#` starts a comment.

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, EventAttrs, EventId, Generator, GeneratorBuilder};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventEntry {
    pub name: String,
    pub controllable: bool,
    pub observable: bool,
}

/// Structural form of a generator, shared by the text format and the JSON
/// reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub name: String,
    pub events: Vec<EventEntry>,
    pub states: Vec<String>,
    pub initial: Option<String>,
    pub marked: Vec<String>,
    pub transitions: Vec<(String, String, String)>,
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || c == '#' || c == ':')
}

impl GeneratorFile {
    pub fn from_generator(g: &Generator) -> Self {
        let labels = g.labels();
        let usable = labels.iter().all(|l| valid_token(l));
        let label = |q: usize| {
            if usable {
                labels[q].clone()
            } else {
                format!("s{q}")
            }
        };
        let alphabet = g.alphabet();
        GeneratorFile {
            name: g.name().to_string(),
            events: alphabet
                .iter()
                .map(|(e, a)| EventEntry {
                    name: e.to_string(),
                    controllable: a.controllable,
                    observable: a.observable,
                })
                .collect(),
            states: (0..g.num_states()).map(label).collect(),
            initial: g.initial().map(label),
            marked: g.marked_states().map(label).collect(),
            transitions: g.transitions().map(|(q, e, t)| (label(q), alphabet.event(e).to_string(), label(t))).collect(),
        }
    }

    pub fn to_generator(&self) -> Result<Generator> {
        let mut alphabet = Alphabet::new();
        for e in &self.events {
            if !valid_token(&e.name) {
                return Err(Error::Validation(format!("invalid event name `{}`", e.name)));
            }
            if alphabet.contains(&EventId::new(&e.name)) {
                return Err(Error::Validation(format!("duplicate event `{}`", e.name)));
            }
            alphabet.insert(EventId::new(&e.name), EventAttrs::new(e.controllable, e.observable))?;
        }
        let mut b = GeneratorBuilder::new(alphabet);
        b.name(self.name.clone());
        for s in &self.states {
            b.add_state(s)?;
        }
        let state = |b: &GeneratorBuilder, s: &str| {
            b.lookup(s).ok_or_else(|| Error::Validation(format!("unknown state `{s}`")))
        };
        match &self.initial {
            Some(s) => {
                let q = state(&b, s)?;
                b.set_initial(q);
            }
            None if !self.states.is_empty() => return Err(Error::Validation("missing initial state".into())),
            None => {}
        }
        for s in &self.marked {
            let q = state(&b, s)?;
            b.set_marked(q, true);
        }
        for (src, e, dst) in &self.transitions {
            let (q, t) = (state(&b, src)?, state(&b, dst)?);
            if b.alphabet().index_of_str(e).is_none() {
                return Err(Error::Validation(format!("unknown event `{e}` in transition `{src} {e} {dst}`")));
            }
            b.add_transition(q, e, t)?;
        }
        b.build()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut file = GeneratorFile::default();
        let mut section: Option<Section> = None;
        let mut seen: Vec<Section> = Vec::new();
        for (ix, raw) in text.lines().enumerate() {
            let line_no = ix + 1;
            let line = raw.split('#').next().unwrap_or("");
            let mut body_start = 0;
            if let Some((sec, after)) = header(line) {
                if seen.contains(&sec) {
                    return Err(parse_err(line_no, 1, format!("duplicate `{}:` section", sec.key())));
                }
                seen.push(sec);
                section = Some(sec);
                body_start = after;
                if sec == Section::Name {
                    file.name = line[after..].trim().to_string();
                    continue;
                }
            }
            let toks = tokens(line, body_start);
            if toks.is_empty() {
                continue;
            }
            let Some(sec) = section else {
                return Err(parse_err(line_no, toks[0].0, "content before any section header"));
            };
            match sec {
                Section::Name => {
                    return Err(parse_err(line_no, toks[0].0, "the name must fit on its header line"));
                }
                Section::Events => {
                    for (col, tok) in toks {
                        file.events.push(event_entry(tok).map_err(|m| parse_err(line_no, col, m))?);
                    }
                }
                Section::States => file.states.extend(toks.iter().map(|(_, t)| t.to_string())),
                Section::Initial => {
                    if toks.len() > 1 || file.initial.is_some() {
                        return Err(parse_err(line_no, toks[toks.len() - 1].0, "exactly one initial state expected"));
                    }
                    file.initial = Some(toks[0].1.to_string());
                }
                Section::Marked => file.marked.extend(toks.iter().map(|(_, t)| t.to_string())),
                Section::Trans => {
                    if toks.len() != 3 {
                        return Err(parse_err(line_no, toks[0].0, "transition must be `source event target`"));
                    }
                    file.transitions.push((toks[0].1.to_string(), toks[1].1.to_string(), toks[2].1.to_string()));
                }
            }
        }
        Ok(file)
    }

    /// Deterministic text rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let line = |out: &mut String, key: &str, items: &[String]| {
            out.push_str(key);
            out.push(':');
            for it in items {
                out.push(' ');
                out.push_str(it);
            }
            out.push('\n');
        };
        line(&mut out, "name", &[self.name.clone()].into_iter().filter(|n| !n.is_empty()).collect::<Vec<_>>());
        let events: Vec<String> = self
            .events
            .iter()
            .map(|e| {
                let mut s = e.name.clone();
                if !e.controllable {
                    s.push_str(":u");
                }
                if !e.observable {
                    s.push_str(":uo");
                }
                s
            })
            .collect();
        line(&mut out, "events", &events);
        line(&mut out, "states", &self.states);
        line(&mut out, "initial", &self.initial.iter().cloned().collect::<Vec<_>>());
        line(&mut out, "marked", &self.marked);
        out.push_str("trans:\n");
        for (s, e, t) in &self.transitions {
            out.push_str(&format!("{s} {e} {t}\n"));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Name,
    Events,
    States,
    Initial,
    Marked,
    Trans,
}

impl Section {
    const ALL: [Section; 6] =
        [Section::Name, Section::Events, Section::States, Section::Initial, Section::Marked, Section::Trans];

    fn key(self) -> &'static str {
        match self {
            Section::Name => "name",
            Section::Events => "events",
            Section::States => "states",
            Section::Initial => "initial",
            Section::Marked => "marked",
            Section::Trans => "trans",
        }
    }
}

/// Recognizes `key:` at the start of a line; returns the byte offset after
/// the colon.
fn header(line: &str) -> Option<(Section, usize)> {
    let trimmed = line.trim_start();
    let lead = line.len() - trimmed.len();
    Section::ALL.into_iter().find_map(|sec| {
        let rest = trimmed.strip_prefix(sec.key())?.strip_prefix(':')?;
        (rest.is_empty() || rest.starts_with(char::is_whitespace)).then_some((sec, lead + sec.key().len() + 1))
    })
}

/// Whitespace-separated tokens of `line[from..]` with 1-based columns.
fn tokens(line: &str, from: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().skip_while(|(i, _)| *i < from) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

fn event_entry(tok: &str) -> std::result::Result<EventEntry, String> {
    let mut parts = tok.split(':');
    let name = parts.next().unwrap_or("");
    if name.is_empty() {
        return Err(format!("missing event name in `{tok}`"));
    }
    let (mut controllable, mut observable) = (None, None);
    for flag in parts {
        let (slot, value) = match flag {
            "c" => (&mut controllable, true),
            "u" => (&mut controllable, false),
            "o" => (&mut observable, true),
            "uo" => (&mut observable, false),
            other => return Err(format!("unknown event flag `{other}`")),
        };
        if slot.replace(value).is_some() {
            return Err(format!("conflicting flags in `{tok}`"));
        }
    }
    Ok(EventEntry {
        name: name.to_string(),
        controllable: controllable.unwrap_or(true),
        observable: observable.unwrap_or(true),
    })
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

pub fn parse_generator(text: &str) -> Result<Generator> {
    GeneratorFile::parse(text)?.to_generator()
}

pub fn serialize_generator(g: &Generator) -> String {
    GeneratorFile::from_generator(g).render()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::language_equal;

    const G2: &str = "\
name: G2
events: a2 c u:u u2:u
states: s0 s1 s2 s3 s4
initial: s0
marked: s0 s1 s2 s3 s4
trans:
s0 a2 s1
s0 c s2
s1 u s3
s2 u2 s4
";

    #[test]
    fn round_trip_is_byte_identical() {
        let g = parse_generator(G2).unwrap();
        assert_eq!(g.num_states(), 5);
        assert_eq!(serialize_generator(&g), G2);
        assert!(language_equal(&g, &crate::fixtures::g2()).unwrap().both());
    }

    #[test]
    fn comments_and_inline_sections() {
        let text = "# header\nname: x\nevents:\n  a:u:uo  # hidden\n  b\nstates: p q\ninitial: p\nmarked:\ntrans: p a q\n  q b p\n";
        let g = parse_generator(text).unwrap();
        assert_eq!(g.name(), "x");
        assert!(!g.alphabet().is_controllable(0) && !g.alphabet().is_observable(0));
        assert_eq!(g.num_transitions(), 2);
        assert_eq!(g.marked_states().count(), 0);
    }

    #[test]
    fn nondeterminism_is_rejected() {
        let text = "events: a\nstates: s0 s1 s2\ninitial: s0\ntrans:\ns0 a s1\ns0 a s2\n";
        match parse_generator(text) {
            Err(Error::Validation(m)) => assert!(m.contains("nondeterministic"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_states_give_empty_generator() {
        let g = parse_generator("name: e\nevents: a\nstates:\ninitial:\nmarked:\ntrans:\n").unwrap();
        assert!(g.is_empty());
        assert_eq!(serialize_generator(&g), "name: e\nevents: a\nstates:\ninitial:\nmarked:\ntrans:\n");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_generator("events: a b:x\n").unwrap_err(),
            Error::Parse { line: 1, column: 11, message: "unknown event flag `x`".into() }
        );
        assert!(matches!(
            parse_generator("events: a\nstates: s\ninitial: s\ntrans:\ns a\n"),
            Err(Error::Parse { line: 5, column: 1, .. })
        ));
        assert!(matches!(parse_generator("s0 a s1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_generator("events: a\nstates: s\n"), Err(Error::Validation(_))));
        assert!(matches!(
            parse_generator("events: a\nstates: s\ninitial: s\ntrans:\ns b s\n"),
            Err(Error::Validation(m)) if m.contains("unknown event")
        ));
    }
}
