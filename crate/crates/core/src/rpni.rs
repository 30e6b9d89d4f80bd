//! State-merging learner: a prefix tree acceptor of a consistent positive
//! closure, coarsened by merges that keep the sample satisfied.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::automata::{Deterministic, Dfa, State};
use crate::error::Error;
use crate::sample::{is_consistent, Sample};
use crate::sat::{solve_formula, SatBackend};
use crate::word::{Symbol, Word};

/// A DFA whose transition function may be undefined; missing moves reject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialDfa {
    alphabet_len: usize,
    delta: Vec<Vec<Option<State>>>,
    accepting: Vec<bool>,
}

impl PartialDfa {
    pub fn new(alphabet_len: usize, delta: Vec<Vec<Option<State>>>, accepting: Vec<bool>) -> Result<Self, Error> {
        if delta.is_empty() || delta.len() != accepting.len() {
            return Err(Error::InvalidAutomaton("state count mismatch".into()));
        }
        for row in &delta {
            if row.len() != alphabet_len || row.iter().flatten().any(|&q| q >= delta.len()) {
                return Err(Error::InvalidAutomaton("bad transition row".into()));
            }
        }
        Ok(PartialDfa { alphabet_len, delta, accepting })
    }

    pub fn is_total(&self) -> bool {
        self.delta.iter().flatten().all(Option::is_some)
    }

    /// The equivalent total DFA; a rejecting sink is added only if needed.
    pub fn complete(&self) -> Dfa {
        let sink = self.delta.len();
        let total = self.is_total();
        let mut delta: Vec<Vec<State>> =
            self.delta.iter().map(|row| row.iter().map(|t| t.unwrap_or(sink)).collect()).collect();
        let mut accepting = self.accepting.clone();
        if !total {
            delta.push(vec![sink; self.alphabet_len]);
            accepting.push(false);
        }
        Dfa::new(self.alphabet_len, delta, accepting).expect("completion is well formed")
    }
}

impl Deterministic for PartialDfa {
    fn alphabet_len(&self) -> usize {
        self.alphabet_len
    }

    fn state_count(&self) -> usize {
        self.delta.len()
    }

    fn initial(&self) -> State {
        0
    }

    fn step(&self, q: State, a: Symbol) -> Option<State> {
        self.delta[q][a]
    }

    fn is_accepting(&self, q: State) -> bool {
        self.accepting[q]
    }
}

/// Tree-shaped acceptor of exactly `x`; state `i` is the `i`-th prefix in
/// shortlex order.
pub fn prefix_tree_acceptor(alphabet_len: usize, x: &BTreeSet<Word>) -> PartialDfa {
    let mut pre: BTreeSet<Word> = BTreeSet::new();
    pre.insert(Word::empty());
    for w in x {
        pre.extend(w.prefixes());
    }
    let index: BTreeMap<&Word, State> = pre.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut delta = vec![vec![None; alphabet_len]; pre.len()];
    for (i, w) in pre.iter().enumerate().skip(1) {
        let parent = index[&w.prefix(w.len() - 1)];
        delta[parent][w.symbols()[w.len() - 1]] = Some(i);
    }
    let accepting = pre.iter().map(|w| x.contains(w)).collect();
    PartialDfa { alphabet_len, delta, accepting }
}

/// A set `Pos' ⊇ Pos` whose prefix tree acceptor is consistent with `s`.
pub fn choose_positive_closure(s: &Sample, backend: &mut dyn SatBackend) -> Result<BTreeSet<Word>, Error> {
    let chi = match s.chi() {
        Some(chi) => chi,
        None => {
            let bad = s
                .ex()
                .iter()
                .chain(s.uni())
                .find(|i| !crate::automata::is_finite(&i.consequent))
                .expect("some consequent is infinite");
            return Err(Error::InfiniteConsequent(format!("{}", bad.antecedent)));
        }
    };
    let model = solve_formula(&chi.formula, backend)?.ok_or(Error::Contradiction)?;
    Ok(chi.universe.into_iter().enumerate().filter(|(i, _)| model.value(*i as u32 + 1)).map(|(_, w)| w).collect())
}

/// A merge attempt reported to the observer of [`merge_learn`].
#[derive(Clone, Debug)]
pub struct MergeEvent<'a> {
    pub i: State,
    pub j: State,
    pub kept: bool,
    pub quotient: &'a PartialDfa,
}

/// Partition of the PTA states with the quotient's transitions kept on the
/// class representatives (always the least member).
#[derive(Clone, Debug)]
struct MergeState {
    parent: Vec<State>,
    delta: Vec<Vec<Option<State>>>,
    accepting: Vec<bool>,
}

impl MergeState {
    fn new(pta: &PartialDfa) -> Self {
        MergeState {
            parent: (0..pta.delta.len()).collect(),
            delta: pta.delta.clone(),
            accepting: pta.accepting.clone(),
        }
    }

    fn find(&self, mut q: State) -> State {
        while self.parent[q] != q {
            q = self.parent[q];
        }
        q
    }

    fn is_rep(&self, q: State) -> bool {
        self.parent[q] == q
    }

    /// Merges the classes of `a` and `b` and folds until deterministic.
    fn merge(&mut self, a: State, b: State) {
        let mut pending = vec![(a, b)];
        while let Some((a, b)) = pending.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            let (keep, gone) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[gone] = keep;
            self.accepting[keep] |= self.accepting[gone];
            for sym in 0..self.delta[gone].len() {
                if let Some(t) = self.delta[gone][sym] {
                    match self.delta[keep][sym] {
                        None => self.delta[keep][sym] = Some(t),
                        Some(t2) => pending.push((t, t2)),
                    }
                }
            }
        }
    }

    /// The quotient with classes renumbered by their representatives.
    fn quotient(&self) -> PartialDfa {
        let reps: Vec<State> = (0..self.parent.len()).filter(|&q| self.is_rep(q)).collect();
        let number: BTreeMap<State, State> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let delta = reps
            .iter()
            .map(|&r| self.delta[r].iter().map(|t| t.map(|t| number[&self.find(t)])).collect())
            .collect();
        let accepting = reps.iter().map(|&r| self.accepting[r]).collect();
        PartialDfa { alphabet_len: self.delta.first().map_or(0, Vec::len), delta, accepting }
    }
}

/// Generic state merging over the PTA of a positive closure of `s`.
///
/// States are tried in shortlex order of their prefixes: `q_i` (if still its
/// own class) against every earlier representative `q_j`. A merge is kept iff
/// the quotient is consistent with `s`. The result is completed with a sink.
pub fn merge_learn(
    s: &Sample,
    alphabet_len: usize,
    backend: &mut dyn SatBackend,
    observer: &mut dyn FnMut(&MergeEvent<'_>),
) -> Result<Dfa, Error> {
    Ok(merge_learn_partial(s, alphabet_len, backend, observer)?.complete())
}

/// [`merge_learn`] without the final completion.
pub fn merge_learn_partial(
    s: &Sample,
    alphabet_len: usize,
    backend: &mut dyn SatBackend,
    observer: &mut dyn FnMut(&MergeEvent<'_>),
) -> Result<PartialDfa, Error> {
    let closure = choose_positive_closure(s, backend)?;
    let pta = prefix_tree_acceptor(alphabet_len, &closure);
    let mut state = MergeState::new(&pta);
    for i in 1..pta.delta.len() {
        if !state.is_rep(i) {
            continue;
        }
        for j in 0..i {
            if !state.is_rep(j) {
                continue;
            }
            let mut trial = state.clone();
            trial.merge(i, j);
            let q = trial.quotient();
            let kept = is_consistent(&q, s);
            observer(&MergeEvent { i, j, kept, quotient: &q });
            if kept {
                state = trial;
                break;
            }
        }
    }
    Ok(state.quotient())
}
