//! Rational relations given by transducers.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::automata::{Nfa, State};
use crate::error::Error;
use crate::word::{Symbol, Word};

/// A transition label: `None` is ε.
pub type Label = Option<Symbol>;

/// Finite transducer over a single alphabet on both tracks.
///
/// Transitions carry an input and an output label, either of which may be ε.
/// Transitions with ε on both tracks are silent moves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transducer {
    alphabet_len: usize,
    initial: State,
    accepting: Vec<bool>,
    trans: Vec<Vec<(Label, Label, State)>>,
    automatic: bool,
}

impl Transducer {
    pub fn new<A, T>(
        alphabet_len: usize,
        state_count: usize,
        initial: State,
        accepting: A,
        transitions: T,
    ) -> Result<Self, Error>
    where
        A: IntoIterator<Item = State>,
        T: IntoIterator<Item = (State, Label, Label, State)>,
    {
        if state_count == 0 {
            return Err(Error::InvalidAutomaton("state count must be positive".into()));
        }
        if initial >= state_count {
            return Err(Error::InvalidAutomaton(alloc::format!("initial state {initial} out of range")));
        }
        let mut acc = vec![false; state_count];
        for q in accepting {
            if q >= state_count {
                return Err(Error::InvalidAutomaton(alloc::format!("accepting state {q} out of range")));
            }
            acc[q] = true;
        }
        let mut trans = vec![Vec::new(); state_count];
        for (p, a, b, q) in transitions {
            if p >= state_count || q >= state_count {
                return Err(Error::InvalidAutomaton(alloc::format!("transition {p} -> {q} out of range")));
            }
            for s in [a, b].into_iter().flatten() {
                if s >= alphabet_len {
                    return Err(Error::InvalidAutomaton(alloc::format!("symbol {s} out of range")));
                }
            }
            trans[p].push((a, b, q));
        }
        for t in &mut trans {
            t.sort_unstable();
            t.dedup();
        }
        Ok(Transducer { alphabet_len, initial, accepting: acc, trans, automatic: false })
    }

    /// The empty relation.
    pub fn empty(alphabet_len: usize) -> Self {
        Transducer { alphabet_len, initial: 0, accepting: vec![false], trans: vec![Vec::new()], automatic: false }
    }

    /// Transducer for a finite set of pairs, one branch per pair.
    pub fn from_pairs<'a, I>(alphabet_len: usize, pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (&'a Word, &'a Word)>,
    {
        let mut count = 1;
        let mut accepting = Vec::new();
        let mut transitions = Vec::new();
        for (u, v) in pairs {
            u.check(alphabet_len)?;
            v.check(alphabet_len)?;
            let len = u.len().max(v.len());
            let mut p = 0;
            for i in 0..len {
                let q = count;
                count += 1;
                transitions.push((p, u.symbols().get(i).copied(), v.symbols().get(i).copied(), q));
                p = q;
            }
            accepting.push(p);
        }
        Transducer::new(alphabet_len, count, 0, accepting, transitions)
    }

    pub fn alphabet_len(&self) -> usize {
        self.alphabet_len
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.accepting[q]
    }

    pub fn edges(&self, q: State) -> &[(Label, Label, State)] {
        &self.trans[q]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, Label, Label, State)> + '_ {
        self.trans.iter().enumerate().flat_map(|(p, ts)| ts.iter().map(move |&(a, b, q)| (p, a, b, q)))
    }

    pub fn transition_count(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    /// True if no transition carries ε on either track.
    pub fn is_length_preserving(&self) -> bool {
        self.transitions().all(|(_, a, b, _)| a.is_some() && b.is_some())
    }

    /// Marks the relation as automatic when `padding` is the only symbol
    /// standing in for a missing letter. Padding is written out explicitly,
    /// so the check is that no label is ε.
    pub fn mark_automatic(mut self) -> Result<Self, Error> {
        if let Some((p, a, b, q)) = self.transitions().find(|&(_, a, b, _)| a.is_none() || b.is_none()) {
            return Err(Error::InvalidAutomaton(alloc::format!(
                "transition {p} {a:?}/{b:?} {q} has an epsilon label"
            )));
        }
        self.automatic = true;
        Ok(self)
    }

    pub fn is_automatic(&self) -> bool {
        self.automatic
    }

    /// Swaps input and output labels.
    pub fn invert(&self) -> Transducer {
        let trans = self
            .trans
            .iter()
            .map(|ts| {
                let mut t: Vec<_> = ts.iter().map(|&(a, b, q)| (b, a, q)).collect();
                t.sort_unstable();
                t
            })
            .collect();
        Transducer { trans, ..self.clone() }
    }

    /// Whether `(u, v)` belongs to the relation.
    pub fn accepts_pair(&self, u: &Word, v: &Word) -> Result<bool, Error> {
        u.check(self.alphabet_len)?;
        v.check(self.alphabet_len)?;
        let (m, n) = (u.len() + 1, v.len() + 1);
        let index = |q: State, i: usize, j: usize| (q * m + i) * n + j;
        let mut seen = vec![false; self.state_count() * m * n];
        let mut queue = VecDeque::new();
        seen[index(self.initial, 0, 0)] = true;
        queue.push_back((self.initial, 0, 0));
        while let Some((p, i, j)) = queue.pop_front() {
            if i == u.len() && j == v.len() && self.accepting[p] {
                return Ok(true);
            }
            for &(a, b, q) in &self.trans[p] {
                let ni = match a {
                    None => i,
                    Some(a) if u.symbols().get(i) == Some(&a) => i + 1,
                    Some(_) => continue,
                };
                let nj = match b {
                    None => j,
                    Some(b) if v.symbols().get(j) == Some(&b) => j + 1,
                    Some(_) => continue,
                };
                let id = index(q, ni, nj);
                if !seen[id] {
                    seen[id] = true;
                    queue.push_back((q, ni, nj));
                }
            }
        }
        Ok(false)
    }

    /// `{ v | ∃u ∈ L(x), (u, v) ∈ R }` as a trimmed ε-free NFA.
    pub fn image(&self, x: &Nfa) -> Result<Nfa, Error> {
        if x.alphabet_len() != self.alphabet_len {
            return Err(Error::AlphabetMismatch { left: self.alphabet_len, right: x.alphabet_len() });
        }
        // Product of x with the input track; output ε edges are kept as silent moves.
        let mut index: BTreeMap<(State, State), State> = BTreeMap::new();
        let mut pairs = vec![(x.initial(), self.initial)];
        index.insert(pairs[0], 0);
        let mut labeled: Vec<Vec<(Symbol, State)>> = Vec::new();
        let mut silent: Vec<Vec<State>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut out_l = Vec::new();
            let mut out_s = Vec::new();
            let mut add = |target: (State, State), label: Label, pairs: &mut Vec<(State, State)>| {
                let id = *index.entry(target).or_insert_with(|| {
                    pairs.push(target);
                    pairs.len() - 1
                });
                match label {
                    Some(b) => out_l.push((b, id)),
                    None => out_s.push(id),
                }
            };
            for &(a, b, q2) in &self.trans[q] {
                match a {
                    None => add((p, q2), b, &mut pairs),
                    Some(a) => {
                        for p2 in x.successors(p, a) {
                            add((p2, q2), b, &mut pairs);
                        }
                    }
                }
            }
            labeled.push(out_l);
            silent.push(out_s);
            i += 1;
        }
        let count = pairs.len();
        let base_accepting: Vec<bool> = pairs.iter().map(|&(p, q)| x.is_accepting(p) && self.accepting[q]).collect();
        // ε-closure elimination.
        let mut accepting = vec![false; count];
        let mut trans = vec![Vec::new(); count];
        let mut mark = vec![usize::MAX; count];
        for s in 0..count {
            let mut stack = vec![s];
            mark[s] = s;
            while let Some(c) = stack.pop() {
                accepting[s] |= base_accepting[c];
                trans[s].extend_from_slice(&labeled[c]);
                for &d in &silent[c] {
                    if mark[d] != s {
                        mark[d] = s;
                        stack.push(d);
                    }
                }
            }
        }
        Ok(Nfa::from_parts(self.alphabet_len, 0, accepting, trans).trim())
    }

    /// `E({u})`, the set of outputs related to `u`.
    pub fn successors(&self, u: &Word) -> Result<Nfa, Error> {
        u.check(self.alphabet_len)?;
        self.image(&Nfa::word(self.alphabet_len, u))
    }
}
