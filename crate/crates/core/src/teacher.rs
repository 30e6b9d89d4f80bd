//! The teacher: decides whether a conjectured DFA accepts a winning set and
//! produces a counterexample otherwise.

use crate::automata::{canonical, dfa_to_trimmed_nfa, difference, intersect, shortest_word, Dfa, Nfa};
use crate::error::Error;
use crate::game::RationalSafetyGame;
use crate::relations::Transducer;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// An initial vertex the conjecture rejects.
    Positive(Word),
    /// An unsafe word the conjecture accepts.
    Negative(Word),
    /// A Player 0 vertex none of whose successors (the automaton) is accepted.
    Existential(Word, Nfa),
    /// A Player 1 vertex some of whose successors (the automaton) is rejected.
    Universal(Word, Nfa),
}

impl Counterexample {
    pub fn kind(&self) -> &'static str {
        match self {
            Counterexample::Positive(_) => "positive",
            Counterexample::Negative(_) => "negative",
            Counterexample::Existential(..) => "existential",
            Counterexample::Universal(..) => "universal",
        }
    }

    /// The witness word (the antecedent for implications).
    pub fn word(&self) -> &Word {
        match self {
            Counterexample::Positive(w) | Counterexample::Negative(w) => w,
            Counterexample::Existential(w, _) | Counterexample::Universal(w, _) => w,
        }
    }

    pub fn consequent(&self) -> Option<&Nfa> {
        match self {
            Counterexample::Existential(_, a) | Counterexample::Universal(_, a) => Some(a),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TeacherResponse {
    Yes,
    Cex(Counterexample),
}

/// Answers correctness queries for one game. Checks run in the order
/// initial, safe, existential, universal; witnesses are shortlex-least.
#[derive(Clone, Debug)]
pub struct Teacher<'g> {
    game: &'g RationalSafetyGame,
    inverse: Transducer,
    vertices: Nfa,
}

impl<'g> Teacher<'g> {
    pub fn new(game: &'g RationalSafetyGame) -> Self {
        Teacher { game, inverse: game.edges().invert(), vertices: game.vertices() }
    }

    pub fn game(&self) -> &'g RationalSafetyGame {
        self.game
    }

    fn check_alphabet(&self, c: &Dfa) -> Result<(), Error> {
        let k = self.game.alphabet().len();
        if c.alphabet_len() != k {
            return Err(Error::AlphabetMismatch { left: k, right: c.alphabet_len() });
        }
        Ok(())
    }

    /// Shortlex-least `u ∈ I \ L(c)`.
    pub fn check_initial(&self, c: &Dfa) -> Result<Option<Word>, Error> {
        self.check_alphabet(c)?;
        Ok(shortest_word(&intersect(self.game.initial(), &c.complement().to_nfa())?))
    }

    /// Shortlex-least `u ∈ L(c) \ F`.
    pub fn check_safe(&self, c: &Dfa) -> Result<Option<Word>, Error> {
        self.check_alphabet(c)?;
        Ok(shortest_word(&difference(&c.to_nfa().trim(), self.game.safe())?))
    }

    /// Shortlex-least `u ∈ L(c) ∩ V0` with `E({u}) ∩ L(c) = ∅`, with `E({u})`.
    pub fn check_existential(&self, c: &Dfa) -> Result<Option<(Word, Nfa)>, Error> {
        self.check_alphabet(c)?;
        let cn = c.to_nfa().trim();
        let b1 = self.inverse.image(&cn)?;
        let b2 = difference(self.game.v0(), &b1)?;
        let b3 = intersect(&cn, &b2)?;
        self.with_successors(shortest_word(&b3))
    }

    /// Shortlex-least `u ∈ L(c) ∩ V1` with `E({u}) ⊄ L(c)`, with `E({u})`.
    pub fn check_universal(&self, c: &Dfa) -> Result<Option<(Word, Nfa)>, Error> {
        self.check_alphabet(c)?;
        let cn = c.to_nfa().trim();
        let b1 = intersect(&self.vertices, &c.complement().to_nfa())?;
        let b2 = self.inverse.image(&b1)?;
        let b3 = intersect(&intersect(self.game.v1(), &cn)?, &b2)?;
        self.with_successors(shortest_word(&b3))
    }

    fn with_successors(&self, u: Option<Word>) -> Result<Option<(Word, Nfa)>, Error> {
        match u {
            None => Ok(None),
            Some(u) => {
                let succ = self.successors(&u)?;
                Ok(Some((u, succ)))
            }
        }
    }

    /// `E({u})` as a trimmed minimal DFA viewed as an NFA.
    pub fn successors(&self, u: &Word) -> Result<Nfa, Error> {
        Ok(dfa_to_trimmed_nfa(&canonical(&self.game.edges().successors(u)?)))
    }

    pub fn query(&self, c: &Dfa) -> Result<TeacherResponse, Error> {
        if let Some(u) = self.check_initial(c)? {
            return Ok(TeacherResponse::Cex(Counterexample::Positive(u)));
        }
        if let Some(u) = self.check_safe(c)? {
            return Ok(TeacherResponse::Cex(Counterexample::Negative(u)));
        }
        if let Some((u, a)) = self.check_existential(c)? {
            return Ok(TeacherResponse::Cex(Counterexample::Existential(u, a)));
        }
        if let Some((u, a)) = self.check_universal(c)? {
            return Ok(TeacherResponse::Cex(Counterexample::Universal(u, a)));
        }
        Ok(TeacherResponse::Yes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{determinize, enumerate_finite, union};
    use crate::bench::{generate_benchmark, BenchmarkSpec};
    use alloc::vec;

    // s = 0, e = 1, l = 2
    fn game() -> RationalSafetyGame {
        generate_benchmark(&BenchmarkSpec::new("halfline").with("k", 2)).unwrap()
    }

    /// `tag l^n` for `n >= min`.
    fn tail(tag: usize, min: usize) -> Nfa {
        let mut t = vec![(0, tag, 1)];
        for i in 1..=min {
            t.push((i, 2, i + 1));
        }
        t.push((min + 1, 2, min + 1));
        Nfa::new(3, min + 2, 0, [min + 1], t).unwrap()
    }

    fn w(s: &[usize]) -> Word {
        Word::from(s)
    }

    fn words(a: &Nfa) -> vec::Vec<Word> {
        enumerate_finite(a).unwrap()
    }

    #[test]
    fn example_trace() {
        let g = game();
        let t = Teacher::new(&g);
        let c0 = Dfa::trivial(3, false);
        assert_eq!(t.query(&c0).unwrap(), TeacherResponse::Cex(Counterexample::Positive(w(&[0, 2, 2]))));

        let c1 = determinize(&tail(0, 2));
        match t.query(&c1).unwrap() {
            TeacherResponse::Cex(Counterexample::Existential(u, a)) => {
                assert_eq!(u, w(&[0, 2, 2]));
                assert_eq!(words(&a), vec![w(&[1, 2, 2]), w(&[1, 2, 2, 2])]);
            }
            other => panic!("{other:?}"),
        }

        let c2 = determinize(&union(&tail(0, 2), &tail(1, 3)).unwrap());
        assert_eq!(t.query(&c2).unwrap(), TeacherResponse::Yes);
    }

    #[test]
    fn individual_checks() {
        let g = game();
        let t = Teacher::new(&g);
        assert_eq!(t.check_initial(&determinize(g.initial())).unwrap(), None);
        assert_eq!(t.check_initial(&Dfa::trivial(3, true)).unwrap(), None);

        let sl = determinize(&Nfa::word(3, &w(&[0, 2])));
        assert_eq!(t.check_safe(&sl).unwrap(), Some(w(&[0, 2])));
        assert_eq!(t.check_safe(&determinize(g.safe())).unwrap(), None);
        assert_eq!(t.check_safe(&determinize(g.initial())).unwrap(), None);

        assert_eq!(t.check_existential(&Dfa::trivial(3, false)).unwrap(), None);

        let c = determinize(&union(&tail(0, 2), &Nfa::word(3, &w(&[1, 2, 2]))).unwrap());
        let (u, a) = t.check_universal(&c).unwrap().unwrap();
        assert_eq!(u, w(&[1, 2, 2]));
        assert_eq!(words(&a), vec![w(&[0, 2]), w(&[0, 2, 2])]);
        assert_eq!(t.check_universal(&determinize(&tail(0, 0))).unwrap(), None);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let g = game();
        assert!(Teacher::new(&g).query(&Dfa::trivial(2, false)).is_err());
    }
}
