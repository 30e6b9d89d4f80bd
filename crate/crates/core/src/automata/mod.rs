//! Finite automata over explicit finite alphabets.
//!
//! [`Nfa`] is epsilon-free; [`Dfa`] is total with initial state `0`. Every
//! value is immutable once built and operations return fresh automata.

mod ops;

pub use ops::*;

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::word::{Symbol, Word};

pub type State = usize;

/// Nondeterministic finite automaton without epsilon transitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Nfa {
    alphabet_len: usize,
    initial: State,
    accepting: Vec<bool>,
    /// Per state: sorted, duplicate-free `(symbol, target)` pairs.
    trans: Vec<Vec<(Symbol, State)>>,
}

impl Nfa {
    pub fn new<A, T>(
        alphabet_len: usize,
        state_count: usize,
        initial: State,
        accepting: A,
        transitions: T,
    ) -> Result<Self, Error>
    where
        A: IntoIterator<Item = State>,
        T: IntoIterator<Item = (State, Symbol, State)>,
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
        for (p, a, q) in transitions {
            if p >= state_count || q >= state_count {
                return Err(Error::InvalidAutomaton(alloc::format!("transition {p} -> {q} out of range")));
            }
            if a >= alphabet_len {
                return Err(Error::InvalidAutomaton(alloc::format!("symbol {a} out of range")));
            }
            trans[p].push((a, q));
        }
        Ok(Self::from_parts(alphabet_len, initial, acc, trans))
    }

    /// Builds from already validated parts; sorts and deduplicates edges.
    pub(crate) fn from_parts(
        alphabet_len: usize,
        initial: State,
        accepting: Vec<bool>,
        mut trans: Vec<Vec<(Symbol, State)>>,
    ) -> Self {
        for t in &mut trans {
            t.sort_unstable();
            t.dedup();
        }
        Nfa { alphabet_len, initial, accepting, trans }
    }

    /// Single-state automaton with the empty language.
    pub fn empty(alphabet_len: usize) -> Self {
        Nfa { alphabet_len, initial: 0, accepting: vec![false], trans: vec![Vec::new()] }
    }

    /// Single-state automaton accepting every word.
    pub fn universal(alphabet_len: usize) -> Self {
        let loops = (0..alphabet_len).map(|a| (a, 0)).collect();
        Nfa { alphabet_len, initial: 0, accepting: vec![true], trans: vec![loops] }
    }

    /// The line automaton accepting exactly `word`.
    pub fn word(alphabet_len: usize, word: &Word) -> Self {
        let n = word.len() + 1;
        let mut accepting = vec![false; n];
        accepting[n - 1] = true;
        let trans = (0..n)
            .map(|i| if i < word.len() { vec![(word.symbols()[i], i + 1)] } else { Vec::new() })
            .collect();
        Nfa { alphabet_len, initial: 0, accepting, trans }
    }

    /// Trie automaton accepting exactly the given finite set of words.
    pub fn from_words<'a, I>(alphabet_len: usize, words: I) -> Self
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut accepting = vec![false];
        let mut trans: Vec<Vec<(Symbol, State)>> = vec![Vec::new()];
        for w in words {
            let mut q = 0;
            for &a in w.iter() {
                q = match trans[q].iter().find(|&&(b, _)| b == a) {
                    Some(&(_, r)) => r,
                    None => {
                        let r = trans.len();
                        trans.push(Vec::new());
                        accepting.push(false);
                        trans[q].push((a, r));
                        r
                    }
                };
            }
            accepting[q] = true;
        }
        Self::from_parts(alphabet_len, 0, accepting, trans)
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

    pub fn accepting_states(&self) -> impl Iterator<Item = State> + '_ {
        self.accepting.iter().enumerate().filter(|(_, &b)| b).map(|(q, _)| q)
    }

    /// Outgoing `(symbol, target)` pairs of `q`, sorted.
    pub fn edges(&self, q: State) -> &[(Symbol, State)] {
        &self.trans[q]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, Symbol, State)> + '_ {
        self.trans.iter().enumerate().flat_map(|(p, ts)| ts.iter().map(move |&(a, q)| (p, a, q)))
    }

    pub fn transition_count(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, q: State, a: Symbol) -> impl Iterator<Item = State> + '_ {
        let ts = &self.trans[q];
        let start = ts.partition_point(|&(b, _)| b < a);
        ts[start..].iter().take_while(move |&&(b, _)| b == a).map(|&(_, r)| r)
    }

    pub fn accepts(&self, word: &Word) -> Result<bool, Error> {
        word.check(self.alphabet_len)?;
        let mut current: BTreeSet<State> = BTreeSet::new();
        current.insert(self.initial);
        for &a in word.iter() {
            let next: BTreeSet<State> = current.iter().flat_map(|&q| self.successors(q, a)).collect();
            if next.is_empty() {
                return Ok(false);
            }
            current = next;
        }
        Ok(current.iter().any(|&q| self.accepting[q]))
    }

    /// States reachable from the initial state.
    pub(crate) fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(p) = queue.pop_front() {
            for &(_, q) in &self.trans[p] {
                if !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
        seen
    }

    /// States from which an accepting state is reachable.
    pub(crate) fn coreachable(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut rev: Vec<Vec<State>> = vec![Vec::new(); n];
        for (p, _, q) in self.transitions() {
            rev[q].push(p);
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<State> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Drops states that are unreachable or cannot reach acceptance.
    ///
    /// An empty language yields the canonical one-state empty automaton.
    pub fn trim(&self) -> Nfa {
        let reach = self.reachable();
        let co = self.coreachable();
        if !co[self.initial] {
            return Nfa::empty(self.alphabet_len);
        }
        let keep: Vec<bool> = reach.iter().zip(&co).map(|(&r, &c)| r && c).collect();
        let mut index = vec![usize::MAX; self.state_count()];
        // BFS renumbering keeps the result deterministic.
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        index[self.initial] = 0;
        order.push(self.initial);
        queue.push_back(self.initial);
        while let Some(p) = queue.pop_front() {
            for &(_, q) in &self.trans[p] {
                if keep[q] && index[q] == usize::MAX {
                    index[q] = order.len();
                    order.push(q);
                    queue.push_back(q);
                }
            }
        }
        let accepting = order.iter().map(|&q| self.accepting[q]).collect();
        let trans = order
            .iter()
            .map(|&p| {
                self.trans[p].iter().filter(|&&(_, q)| keep[q]).map(|&(a, q)| (a, index[q])).collect()
            })
            .collect();
        Nfa::from_parts(self.alphabet_len, 0, accepting, trans)
    }

    pub fn is_deterministic(&self) -> bool {
        self.trans.iter().all(|ts| ts.windows(2).all(|w| w[0].0 != w[1].0))
    }

    pub(crate) fn same_alphabet(&self, other: &Nfa) -> Result<(), Error> {
        if self.alphabet_len != other.alphabet_len {
            return Err(Error::AlphabetMismatch { left: self.alphabet_len, right: other.alphabet_len });
        }
        Ok(())
    }
}

/// Deterministic automaton whose transition function may be partial.
/// A missing transition rejects.
pub trait Deterministic {
    fn alphabet_len(&self) -> usize;
    fn state_count(&self) -> usize;
    fn initial(&self) -> State;
    fn step(&self, q: State, a: Symbol) -> Option<State>;
    fn is_accepting(&self, q: State) -> bool;

    /// State reached on `word`, if the run does not block.
    fn run_from_initial(&self, word: &Word) -> Option<State> {
        word.iter().try_fold(self.initial(), |q, &a| self.step(q, a))
    }

    fn accepts_word(&self, word: &Word) -> bool {
        self.run_from_initial(word).is_some_and(|q| self.is_accepting(q))
    }
}

impl Deterministic for Dfa {
    fn alphabet_len(&self) -> usize {
        self.alphabet_len
    }

    fn state_count(&self) -> usize {
        self.accepting.len()
    }

    fn initial(&self) -> State {
        0
    }

    fn step(&self, q: State, a: Symbol) -> Option<State> {
        Some(self.next(q, a))
    }

    fn is_accepting(&self, q: State) -> bool {
        self.accepting[q]
    }
}

/// Total deterministic automaton with initial state `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet_len: usize,
    /// `delta[q * alphabet_len + a]`
    delta: Vec<State>,
    accepting: Vec<bool>,
}

impl Dfa {
    /// `delta[q][a]` is the successor of `q` on `a`; every row must be complete.
    pub fn new(alphabet_len: usize, delta: Vec<Vec<State>>, accepting: Vec<bool>) -> Result<Self, Error> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("state count must be positive".into()));
        }
        if accepting.len() != n {
            return Err(Error::InvalidAutomaton("accepting flags do not match state count".into()));
        }
        let mut flat = Vec::with_capacity(n * alphabet_len);
        for (q, row) in delta.into_iter().enumerate() {
            if row.len() != alphabet_len {
                return Err(Error::InvalidAutomaton(alloc::format!("state {q} is not total")));
            }
            if let Some(&r) = row.iter().find(|&&r| r >= n) {
                return Err(Error::InvalidAutomaton(alloc::format!("successor {r} out of range")));
            }
            flat.extend(row);
        }
        Ok(Dfa { alphabet_len, delta: flat, accepting })
    }

    pub(crate) fn from_flat(alphabet_len: usize, delta: Vec<State>, accepting: Vec<bool>) -> Self {
        debug_assert_eq!(delta.len(), accepting.len() * alphabet_len);
        Dfa { alphabet_len, delta, accepting }
    }

    /// One-state DFA accepting nothing (`accept = false`) or everything.
    pub fn trivial(alphabet_len: usize, accept: bool) -> Self {
        Dfa { alphabet_len, delta: vec![0; alphabet_len], accepting: vec![accept] }
    }

    pub fn alphabet_len(&self) -> usize {
        self.alphabet_len
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> State {
        0
    }

    pub fn next(&self, q: State, a: Symbol) -> State {
        self.delta[q * self.alphabet_len + a]
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.accepting[q]
    }

    pub fn accepting_flags(&self) -> &[bool] {
        &self.accepting
    }

    /// State reached from `0` on `word`. Symbols must be in range.
    pub fn run(&self, word: &Word) -> State {
        word.iter().fold(0, |q, &a| self.next(q, a))
    }

    pub fn accepts(&self, word: &Word) -> Result<bool, Error> {
        word.check(self.alphabet_len)?;
        Ok(self.accepting[self.run(word)])
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, Symbol, State)> + '_ {
        let k = self.alphabet_len;
        (0..self.state_count()).flat_map(move |q| (0..k).map(move |a| (q, a, self.next(q, a))))
    }

    pub fn to_nfa(&self) -> Nfa {
        let trans = (0..self.state_count())
            .map(|q| (0..self.alphabet_len).map(|a| (a, self.next(q, a))).collect())
            .collect();
        Nfa::from_parts(self.alphabet_len, 0, self.accepting.clone(), trans)
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet_len: self.alphabet_len,
            delta: self.delta.clone(),
            accepting: self.accepting.iter().map(|b| !b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nfa_rejects_out_of_range_parts() {
        assert!(Nfa::new(2, 0, 0, [], []).is_err());
        assert!(Nfa::new(2, 1, 1, [], []).is_err());
        assert!(Nfa::new(2, 1, 0, [3], []).is_err());
        assert!(Nfa::new(2, 2, 0, [], [(0, 2, 1)]).is_err());
        assert!(Nfa::new(2, 2, 0, [1], [(0, 1, 1)]).is_ok());
    }

    #[test]
    fn accepts_reports_invalid_word() {
        let a = Nfa::universal(2);
        assert_eq!(
            a.accepts(&Word::from([0, 5])),
            Err(Error::InvalidWord { symbol: 5, alphabet_len: 2 })
        );
    }

    #[test]
    fn dfa_requires_totality() {
        assert!(Dfa::new(2, vec![vec![0]], vec![false]).is_err());
        assert!(Dfa::new(1, vec![vec![1]], vec![false]).is_err());
        assert!(Dfa::new(1, vec![vec![0]], vec![true]).is_ok());
    }

    #[test]
    fn empty_accepting_set_rejects_epsilon() {
        let a = Nfa::new(1, 2, 0, [], [(0, 0, 1)]).unwrap();
        assert!(!a.accepts(&Word::empty()).unwrap());
    }

    #[test]
    fn trie_accepts_exactly_its_words() {
        let words = [Word::from([0, 1]), Word::from([0]), Word::empty()];
        let a = Nfa::from_words(2, words.iter());
        for w in crate::word::all_words(2, 3) {
            assert_eq!(a.accepts(&w).unwrap(), words.contains(&w), "{w}");
        }
    }
}
