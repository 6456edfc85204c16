use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::alphabet::{Alphabet, EventId};
use crate::error::{Error, Result};

pub type StateId = usize;

/// A finite sequence of events.
pub type Word = Vec<EventId>;

/// Renders a word as space-separated event names, `ε` for the empty word.
pub fn format_word(w: &[EventId]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.iter().map(|e| e.as_str()).collect::<Vec<_>>().join(" ")
    }
}

/// Parses a space-separated word; the empty string (or `ε`) is the empty word.
pub fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word> {
    text.split_whitespace()
        .filter(|t| *t != "ε")
        .map(|t| match alphabet.index_of_str(t) {
            Some(i) => Ok(alphabet.event(i).clone()),
            None => Err(Error::UnknownEvent(t.to_string())),
        })
        .collect()
}

/// Deterministic finite generator with a partial transition function.
///
/// A generator denotes a pair of languages: the generated language (words
/// with a defined run from the initial state) and the marked language (words
/// whose run ends in a marked state). The zero-state generator denotes the
/// empty pair.
///
/// States are stored in canonical order: breadth-first from the initial state
/// with events explored in alphabet order, followed by unreachable states in
/// their original order. Every constructor normalizes, so two generators
/// built the same way compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Generator {
    name: String,
    alphabet: Alphabet,
    labels: Vec<String>,
    // row-major: delta[state * |alphabet| + event]
    delta: Vec<Option<StateId>>,
    initial: Option<StateId>,
    marked: Vec<bool>,
}

impl Generator {
    /// Zero-state generator: the empty language pair.
    pub fn empty(alphabet: Alphabet) -> Self {
        Generator {
            name: String::new(),
            alphabet,
            labels: Vec::new(),
            delta: Vec::new(),
            initial: None,
            marked: Vec::new(),
        }
    }

    /// One marked state with a self-loop on every event: `Σ*` for both languages.
    pub fn universal(alphabet: Alphabet) -> Self {
        let m = alphabet.len();
        Generator::from_parts(alphabet, None, vec![Some(0); m], Some(0), vec![true])
    }

    /// Trie generator whose marked language is exactly `words` and whose
    /// generated language is their prefix closure.
    pub fn from_words<I, S>(alphabet: &Alphabet, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let m = alphabet.len();
        let mut delta: Vec<Option<StateId>> = vec![None; m];
        let mut marked = vec![false];
        for w in words {
            let word = parse_word(alphabet, w.as_ref())?;
            let mut q = 0;
            for e in &word {
                let ix = alphabet.index_of(e).expect("parsed event");
                q = match delta[q * m + ix] {
                    Some(n) => n,
                    None => {
                        let n = marked.len();
                        marked.push(false);
                        delta.extend(std::iter::repeat_n(None, m));
                        delta[q * m + ix] = Some(n);
                        n
                    }
                };
            }
            marked[q] = true;
        }
        Ok(Generator::from_parts(alphabet.clone(), None, delta, Some(0), marked))
    }

    /// Trie generator for the prefix closure of `words`, every state marked.
    pub fn closure_of_words<I, S>(alphabet: &Alphabet, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Ok(Generator::from_words(alphabet, words)?.with_all_marked())
    }

    /// Normalizing constructor used by every operation. `labels` defaults to
    /// `s0, s1, ...` in canonical order.
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        labels: Option<Vec<String>>,
        delta: Vec<Option<StateId>>,
        initial: Option<StateId>,
        marked: Vec<bool>,
    ) -> Self {
        let n = marked.len();
        let m = alphabet.len();
        debug_assert_eq!(delta.len(), n * m);
        if n == 0 {
            return Generator::empty(alphabet);
        }
        let mut order = Vec::with_capacity(n);
        let mut new_id = vec![usize::MAX; n];
        if let Some(q0) = initial {
            new_id[q0] = 0;
            order.push(q0);
            let mut head = 0;
            while head < order.len() {
                let q = order[head];
                head += 1;
                for e in 0..m {
                    if let Some(t) = delta[q * m + e] {
                        if new_id[t] == usize::MAX {
                            new_id[t] = order.len();
                            order.push(t);
                        }
                    }
                }
            }
        }
        for (q, id) in new_id.iter_mut().enumerate() {
            if *id == usize::MAX {
                *id = order.len();
                order.push(q);
            }
        }
        let mut new_delta = vec![None; n * m];
        let mut new_marked = vec![false; n];
        for (new_q, &old_q) in order.iter().enumerate() {
            new_marked[new_q] = marked[old_q];
            for e in 0..m {
                new_delta[new_q * m + e] = delta[old_q * m + e].map(|t| new_id[t]);
            }
        }
        let labels = match labels {
            Some(l) => order.iter().map(|&q| l[q].clone()).collect(),
            None => (0..n).map(|i| format!("s{i}")).collect(),
        };
        Generator {
            name: String::new(),
            alphabet,
            labels,
            delta: new_delta,
            initial: initial.map(|q| new_id[q]),
            marked: new_marked,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.marked.len()
    }

    /// True for the zero-state generator.
    pub fn is_empty(&self) -> bool {
        self.marked.is_empty()
    }

    pub fn initial(&self) -> Option<StateId> {
        self.initial
    }

    pub fn is_marked(&self, q: StateId) -> bool {
        self.marked[q]
    }

    pub fn marked_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.marked.iter().enumerate().filter(|(_, m)| **m).map(|(q, _)| q)
    }

    pub fn label(&self, q: StateId) -> &str {
        &self.labels[q]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Successor of `q` under the event with alphabet index `e`.
    #[inline]
    pub fn step(&self, q: StateId, e: usize) -> Option<StateId> {
        self.delta[q * self.alphabet.len() + e]
    }

    /// Enabled events at `q` as `(event index, target)`, in alphabet order.
    pub fn enabled(&self, q: StateId) -> impl Iterator<Item = (usize, StateId)> + '_ {
        let m = self.alphabet.len();
        self.delta[q * m..(q + 1) * m].iter().enumerate().filter_map(|(e, t)| t.map(|t| (e, t)))
    }

    /// All transitions `(src, event index, dst)` sorted by source then event.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, usize, StateId)> + '_ {
        (0..self.num_states()).flat_map(move |q| self.enabled(q).map(move |(e, t)| (q, e, t)))
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().filter(|t| t.is_some()).count()
    }

    /// State reached by `word` from the initial state.
    pub fn run(&self, word: &[EventId]) -> Option<StateId> {
        let mut q = self.initial?;
        for e in word {
            q = self.step(q, self.alphabet.index_of(e)?)?;
        }
        Some(q)
    }

    /// `(word ∈ L(G), word ∈ L_m(G))`.
    pub fn accepts(&self, word: &[EventId]) -> (bool, bool) {
        match self.run(word) {
            Some(q) => (true, self.marked[q]),
            None => (false, false),
        }
    }

    /// Same structure with every state marked.
    pub fn with_all_marked(mut self) -> Self {
        self.marked.iter_mut().for_each(|m| *m = true);
        self
    }

    /// Same structure over an alphabet with the same events but different
    /// attributes.
    pub fn with_alphabet_attrs(mut self, alphabet: Alphabet) -> Result<Self> {
        if !self.alphabet.same_events(&alphabet) {
            return Err(Error::AlphabetMismatch("attribute swap needs identical events".into()));
        }
        self.alphabet = alphabet;
        Ok(self)
    }

    /// Same generator re-rooted at `q`; states unreachable from `q` are dropped.
    pub fn rooted_at(&self, q: StateId) -> Generator {
        let g = Generator::from_parts(
            self.alphabet.clone(),
            Some(self.labels.clone()),
            self.delta.clone(),
            Some(q),
            self.marked.clone(),
        );
        super::ops::accessible(&g)
    }

    /// Words of `L(G)` of length at most `max_len`, in length-lexicographic
    /// order, each with its marking flag.
    pub fn enumerate_bounded(&self, max_len: usize) -> Vec<(Word, bool)> {
        let Some(q0) = self.initial else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut layer = vec![(Vec::<EventId>::new(), q0)];
        for len in 0..=max_len {
            for (w, q) in &layer {
                out.push((w.clone(), self.marked[*q]));
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &layer {
                for (e, t) in self.enabled(*q) {
                    let mut w2 = w.clone();
                    w2.push(self.alphabet.event(e).clone());
                    next.push((w2, t));
                }
            }
            layer = next;
        }
        out
    }

    /// Canonical state ids reachable from the initial state.
    pub(crate) fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let Some(q0) = self.initial else {
            return seen;
        };
        let mut queue = VecDeque::from([q0]);
        seen[q0] = true;
        while let Some(q) = queue.pop_front() {
            for (_, t) in self.enabled(q) {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// States from which a marked state is reachable.
    pub(crate) fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (q, _, t) in self.transitions() {
            preds[t].push(q);
        }
        let mut seen = self.marked.clone();
        let mut queue: VecDeque<StateId> = self.marked_states().collect();
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    pub(crate) fn raw_marked(&self) -> &[bool] {
        &self.marked
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Generator {:?} over {:?}", self.name, self.alphabet)?;
        for q in 0..self.num_states() {
            let init = if self.initial == Some(q) { ">" } else { " " };
            let mark = if self.marked[q] { "*" } else { " " };
            write!(f, "  {init}{mark}{}", self.labels[q])?;
            for (e, t) in self.enabled(q) {
                write!(f, " {}->{}", self.alphabet.event(e), self.labels[t])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Incremental construction of a generator from labelled states.
#[derive(Debug, Clone)]
pub struct GeneratorBuilder {
    name: String,
    alphabet: Alphabet,
    labels: Vec<String>,
    index: HashMap<String, StateId>,
    delta: Vec<Option<StateId>>,
    initial: Option<StateId>,
    marked: Vec<bool>,
}

impl GeneratorBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        GeneratorBuilder {
            name: String::new(),
            alphabet,
            labels: Vec::new(),
            index: HashMap::new(),
            delta: Vec::new(),
            initial: None,
            marked: Vec::new(),
        }
    }

    pub fn name(&mut self, name: impl Into<String>) -> &mut Self {
        self.name = name.into();
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Adds a fresh state; duplicate labels are rejected.
    pub fn add_state(&mut self, label: &str) -> Result<StateId> {
        if self.index.contains_key(label) {
            return Err(Error::Validation(format!("duplicate state `{label}`")));
        }
        Ok(self.state(label))
    }

    /// Returns the state with this label, creating it if needed.
    pub fn state(&mut self, label: &str) -> StateId {
        if let Some(&q) = self.index.get(label) {
            return q;
        }
        let q = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), q);
        self.marked.push(false);
        self.delta.extend(std::iter::repeat_n(None, self.alphabet.len()));
        q
    }

    pub fn lookup(&self, label: &str) -> Option<StateId> {
        self.index.get(label).copied()
    }

    pub fn set_initial(&mut self, q: StateId) -> &mut Self {
        self.initial = Some(q);
        self
    }

    pub fn set_marked(&mut self, q: StateId, marked: bool) -> &mut Self {
        self.marked[q] = marked;
        self
    }

    pub fn add_transition(&mut self, src: StateId, event: &str, dst: StateId) -> Result<()> {
        let e = self.alphabet.index_of_str(event).ok_or_else(|| Error::UnknownEvent(event.to_string()))?;
        let slot = &mut self.delta[src * self.alphabet.len() + e];
        match slot {
            Some(existing) if *existing != dst => Err(Error::Validation(format!(
                "nondeterministic: state `{}` has two `{event}` transitions",
                self.labels[src]
            ))),
            Some(_) => Err(Error::Validation(format!(
                "duplicate transition `{} {event} {}`",
                self.labels[src], self.labels[dst]
            ))),
            None => {
                *slot = Some(dst);
                Ok(())
            }
        }
    }

    pub fn build(self) -> Result<Generator> {
        if !self.labels.is_empty() && self.initial.is_none() {
            return Err(Error::Validation("missing initial state".into()));
        }
        let g = Generator::from_parts(self.alphabet, Some(self.labels), self.delta, self.initial, self.marked);
        Ok(g.with_name(self.name))
    }
}
