//! ICE samples: positive and negative words plus existential and universal
//! implications collected from the teacher.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::automata::{enumerate_finite, equivalent, is_finite, Deterministic, Nfa, State};
use crate::error::Error;
use crate::sat::{solve_formula, Formula, SatBackend, Var};
use crate::teacher::Counterexample;
use crate::word::Word;

/// A pair `(u, A)`: accepting `u` obliges the learner with respect to `L(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    pub antecedent: Word,
    pub consequent: Nfa,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sample {
    pos: Vec<Word>,
    neg: Vec<Word>,
    ex: Vec<Implication>,
    uni: Vec<Implication>,
}

/// The first sample item a DFA fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Positive(Word),
    Negative(Word),
    Existential(Word),
    Universal(Word),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContradictionStatus {
    Consistent,
    Contradictory,
    /// Some consequent language is infinite.
    Unknown,
}

impl Sample {
    pub fn new() -> Self {
        Sample::default()
    }

    pub fn pos(&self) -> &[Word] {
        &self.pos
    }

    pub fn neg(&self) -> &[Word] {
        &self.neg
    }

    pub fn ex(&self) -> &[Implication] {
        &self.ex
    }

    pub fn uni(&self) -> &[Implication] {
        &self.uni
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty() && self.ex.is_empty() && self.uni.is_empty()
    }

    /// `(|Pos|, |Neg|, |Ex|, |Uni|)`.
    pub fn sizes(&self) -> (usize, usize, usize, usize) {
        (self.pos.len(), self.neg.len(), self.ex.len(), self.uni.len())
    }

    pub fn with_positive(mut self, w: Word) -> Self {
        self.insert(Counterexample::Positive(w));
        self
    }

    pub fn with_negative(mut self, w: Word) -> Self {
        self.insert(Counterexample::Negative(w));
        self
    }

    pub fn with_existential(mut self, u: Word, a: Nfa) -> Self {
        self.insert(Counterexample::Existential(u, a));
        self
    }

    pub fn with_universal(mut self, u: Word, a: Nfa) -> Self {
        self.insert(Counterexample::Universal(u, a));
        self
    }

    /// A copy of the sample extended by `c`.
    pub fn add(&self, c: Counterexample) -> Sample {
        let mut s = self.clone();
        s.insert(c);
        s
    }

    /// Adds `c` in place; returns false if it was already present.
    pub fn insert(&mut self, c: Counterexample) -> bool {
        fn push_word(set: &mut Vec<Word>, w: Word) -> bool {
            if set.contains(&w) {
                return false;
            }
            set.push(w);
            true
        }
        fn push_imp(set: &mut Vec<Implication>, u: Word, a: Nfa) -> bool {
            let dup = set
                .iter()
                .any(|i| i.antecedent == u && equivalent(&i.consequent, &a).unwrap_or(false));
            if dup {
                return false;
            }
            set.push(Implication { antecedent: u, consequent: a });
            true
        }
        match c {
            Counterexample::Positive(w) => push_word(&mut self.pos, w),
            Counterexample::Negative(w) => push_word(&mut self.neg, w),
            Counterexample::Existential(u, a) => push_imp(&mut self.ex, u, a),
            Counterexample::Universal(u, a) => push_imp(&mut self.uni, u, a),
        }
    }

    /// `Pos ∪ Neg ∪ Ante(Ex) ∪ Ante(Uni)`, shortlex-sorted.
    pub fn words(&self) -> Vec<Word> {
        let mut set: BTreeSet<Word> = self.pos.iter().chain(&self.neg).cloned().collect();
        set.extend(self.ex.iter().chain(&self.uni).map(|i| i.antecedent.clone()));
        set.into_iter().collect()
    }

    /// Whether every consequent language is finite.
    pub fn has_finite_consequents(&self) -> bool {
        self.ex.iter().chain(&self.uni).all(|i| is_finite(&i.consequent))
    }

    /// All words that occur in the sample, implicitly or explicitly, with the
    /// formula constraining which of them a consistent DFA may accept.
    /// Variable `i + 1` stands for `universe[i]`. Returns `None` when some
    /// consequent language is infinite.
    pub fn chi(&self) -> Option<Chi> {
        if !self.has_finite_consequents() {
            return None;
        }
        let mut consequents = Vec::new();
        let mut set: BTreeSet<Word> = self.words().into_iter().collect();
        for i in self.ex.iter().chain(&self.uni) {
            let ws = enumerate_finite(&i.consequent).expect("finite consequent");
            set.extend(ws.iter().cloned());
            consequents.push(ws);
        }
        let universe: Vec<Word> = set.into_iter().collect();
        let index: BTreeMap<&Word, Var> = universe.iter().enumerate().map(|(i, w)| (w, i as Var + 1)).collect();
        let x = |w: &Word| index[w];
        let mut parts = Vec::new();
        parts.extend(self.pos.iter().map(|w| Formula::var(x(w))));
        parts.extend(self.neg.iter().map(|w| Formula::neg(x(w))));
        let (ex_cons, uni_cons) = consequents.split_at(self.ex.len());
        for (i, ws) in self.ex.iter().zip(ex_cons) {
            let mut lits = vec![-(x(&i.antecedent) as i32)];
            lits.extend(ws.iter().map(|v| x(v) as i32));
            parts.push(Formula::clause(lits));
        }
        for (i, ws) in self.uni.iter().zip(uni_cons) {
            for v in ws {
                parts.push(Formula::clause([-(x(&i.antecedent) as i32), x(v) as i32]));
            }
        }
        Some(Chi { universe, formula: Formula::And(parts) })
    }
}

/// The propositional constraint over the words of a sample.
#[derive(Clone, Debug)]
pub struct Chi {
    pub universe: Vec<Word>,
    pub formula: Formula,
}

/// Checks the four consistency conditions; returns the first violation.
pub fn check_consistent<D: Deterministic + ?Sized>(d: &D, s: &Sample) -> Result<(), Violation> {
    if let Some(w) = s.pos.iter().find(|w| !d.accepts_word(w)) {
        return Err(Violation::Positive(w.clone()));
    }
    if let Some(w) = s.neg.iter().find(|w| d.accepts_word(w)) {
        return Err(Violation::Negative(w.clone()));
    }
    for i in &s.ex {
        if d.accepts_word(&i.antecedent) && !intersects(d, &i.consequent) {
            return Err(Violation::Existential(i.antecedent.clone()));
        }
    }
    for i in &s.uni {
        if d.accepts_word(&i.antecedent) && !includes(d, &i.consequent) {
            return Err(Violation::Universal(i.antecedent.clone()));
        }
    }
    Ok(())
}

pub fn is_consistent<D: Deterministic + ?Sized>(d: &D, s: &Sample) -> bool {
    check_consistent(d, s).is_ok()
}

/// `L(d) ∩ L(a) ≠ ∅` by search over the product.
fn intersects<D: Deterministic + ?Sized>(d: &D, a: &Nfa) -> bool {
    let mut seen: BTreeSet<(State, State)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let start = (d.initial(), a.initial());
    seen.insert(start);
    queue.push_back(start);
    while let Some((p, q)) = queue.pop_front() {
        if d.is_accepting(p) && a.is_accepting(q) {
            return true;
        }
        for &(sym, q2) in a.edges(q) {
            if let Some(p2) = d.step(p, sym) {
                if seen.insert((p2, q2)) {
                    queue.push_back((p2, q2));
                }
            }
        }
    }
    false
}

/// `L(a) ⊆ L(d)`; a blocked run of `d` is tracked as `None`.
fn includes<D: Deterministic + ?Sized>(d: &D, a: &Nfa) -> bool {
    let mut seen: BTreeSet<(Option<State>, State)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let start = (Some(d.initial()), a.initial());
    seen.insert(start);
    queue.push_back(start);
    while let Some((p, q)) = queue.pop_front() {
        if a.is_accepting(q) && !p.is_some_and(|p| d.is_accepting(p)) {
            return false;
        }
        for &(sym, q2) in a.edges(q) {
            let p2 = p.and_then(|p| d.step(p, sym));
            if seen.insert((p2, q2)) {
                queue.push_back((p2, q2));
            }
        }
    }
    true
}

/// Decides whether any DFA is consistent with `s`, provided all consequents
/// are finite.
pub fn check_contradiction(s: &Sample, backend: &mut dyn SatBackend) -> Result<ContradictionStatus, Error> {
    match s.chi() {
        None => Ok(ContradictionStatus::Unknown),
        Some(chi) => Ok(match solve_formula(&chi.formula, backend)? {
            Some(_) => ContradictionStatus::Consistent,
            None => ContradictionStatus::Contradictory,
        }),
    }
}
