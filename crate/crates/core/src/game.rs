//! Rational safety games and their explicit finite restrictions.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::automata::{intersect, is_subset, shortest_word, difference, union, words_up_to, Nfa};
use crate::error::Error;
use crate::relations::Transducer;
use crate::word::{Alphabet, Word};

/// A safety game whose vertex sets are regular and whose edges are rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSafetyGame {
    alphabet: Alphabet,
    v0: Nfa,
    v1: Nfa,
    edges: Transducer,
    safe: Nfa,
    initial: Nfa,
}

impl RationalSafetyGame {
    /// Validates the game: both players own some vertex, the vertex sets are
    /// disjoint and the initial vertices are safe.
    pub fn new(
        alphabet: Alphabet,
        v0: Nfa,
        v1: Nfa,
        edges: Transducer,
        safe: Nfa,
        initial: Nfa,
    ) -> Result<Self, Error> {
        let k = alphabet.len();
        for (name, len) in [
            ("v0", v0.alphabet_len()),
            ("v1", v1.alphabet_len()),
            ("edges", edges.alphabet_len()),
            ("safe", safe.alphabet_len()),
            ("initial", initial.alphabet_len()),
        ] {
            if len != k {
                return Err(Error::InvalidAutomaton(alloc::format!(
                    "{name} uses {len} symbols but the alphabet has {k}"
                )));
            }
        }
        if shortest_word(&v0).is_none() {
            return Err(Error::InvariantViolation { invariant: "v0 is non-empty", witness: String::new() });
        }
        if shortest_word(&v1).is_none() {
            return Err(Error::InvariantViolation { invariant: "v1 is non-empty", witness: String::new() });
        }
        if let Some(w) = shortest_word(&intersect(&v0, &v1)?) {
            return Err(Error::InvariantViolation { invariant: "v0 and v1 are disjoint", witness: alphabet.render(&w) });
        }
        if let Some(w) = shortest_word(&difference(&initial, &safe)?) {
            return Err(Error::InvariantViolation {
                invariant: "initial is a subset of safe",
                witness: alphabet.render(&w),
            });
        }
        Ok(RationalSafetyGame { alphabet, v0, v1, edges, safe, initial })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn v0(&self) -> &Nfa {
        &self.v0
    }

    pub fn v1(&self) -> &Nfa {
        &self.v1
    }

    pub fn edges(&self) -> &Transducer {
        &self.edges
    }

    pub fn safe(&self) -> &Nfa {
        &self.safe
    }

    pub fn initial(&self) -> &Nfa {
        &self.initial
    }

    /// Sum of the state counts of all component automata.
    pub fn size(&self) -> usize {
        self.v0.state_count()
            + self.v1.state_count()
            + self.edges.state_count()
            + self.safe.state_count()
            + self.initial.state_count()
    }

    /// `V0 ∪ V1`.
    pub fn vertices(&self) -> Nfa {
        union(&self.v0, &self.v1).expect("validated alphabets")
    }

    /// Whether `L(safe)` only contains vertices.
    pub fn safe_within_vertices(&self) -> bool {
        is_subset(&self.safe, &self.vertices()).expect("validated alphabets")
    }
}

/// Explicit game graph on the vertices of length at most some bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGame {
    /// Vertex words in shortlex order.
    pub vertices: Vec<Word>,
    /// `true` for Player 1 vertices.
    pub player1: Vec<bool>,
    pub safe: Vec<bool>,
    pub initial: Vec<bool>,
    /// Sorted `(from, to)` index pairs.
    pub edges: Vec<(usize, usize)>,
}

impl ExplicitGame {
    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.edges.partition_point(|&(a, _)| a < v);
        self.edges[start..].iter().take_while(move |&&(a, _)| a == v).map(|&(_, b)| b)
    }
}

/// Restricts `g` to vertices of length at most `max_len`, keeping the edges
/// whose endpoints both survive.
pub fn finite_restriction(g: &RationalSafetyGame, max_len: usize) -> Result<ExplicitGame, Error> {
    let vertices = words_up_to(&g.vertices(), max_len);
    let index: BTreeMap<&Word, usize> = vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut player1 = Vec::with_capacity(vertices.len());
    let mut safe = Vec::with_capacity(vertices.len());
    let mut initial = Vec::with_capacity(vertices.len());
    let mut edges = Vec::new();
    for (i, u) in vertices.iter().enumerate() {
        player1.push(g.v1().accepts(u)?);
        safe.push(g.safe().accepts(u)?);
        initial.push(g.initial().accepts(u)?);
        let succ = g.edges().successors(u)?;
        for v in words_up_to(&succ, max_len) {
            if let Some(&j) = index.get(&v) {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    Ok(ExplicitGame { vertices, player1, safe, initial, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate_benchmark, BenchmarkSpec};

    fn example(k: i64) -> RationalSafetyGame {
        generate_benchmark(&BenchmarkSpec::new("halfline").with("k", k)).unwrap()
    }

    #[test]
    fn example_game_membership() {
        let g = example(2);
        let s = g.alphabet();
        assert!(g.initial().accepts(&s.parse_word("s l l").unwrap()).unwrap());
        assert!(!g.initial().accepts(&s.parse_word("s l").unwrap()).unwrap());
    }

    #[test]
    fn overlapping_players_rejected() {
        let g = example(2);
        let v = g.v0().clone();
        let err = RationalSafetyGame::new(
            g.alphabet().clone(),
            v.clone(),
            v,
            g.edges().clone(),
            g.safe().clone(),
            g.initial().clone(),
        )
        .unwrap_err();
        assert_eq!(err, Error::InvariantViolation { invariant: "v0 and v1 are disjoint", witness: "s".into() });
    }

    #[test]
    fn unsafe_initial_rejected() {
        let g = example(2);
        let err = RationalSafetyGame::new(
            g.alphabet().clone(),
            g.v0().clone(),
            g.v1().clone(),
            g.edges().clone(),
            g.safe().clone(),
            g.v0().clone(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvariantViolation { witness, .. } if witness == "s"));
    }

    #[test]
    fn restriction_of_example_game() {
        let g = example(2);
        let r = finite_restriction(&g, 4).unwrap();
        let s = g.alphabet();
        let names: Vec<String> = r.vertices.iter().map(|w| s.render(w)).collect();
        assert_eq!(names, ["s", "e", "s l", "e l", "s l l", "e l l", "s l l l", "e l l l"]);
        let from = r.index_of(&s.parse_word("s l l").unwrap()).unwrap();
        let to = r.index_of(&s.parse_word("e l l l").unwrap()).unwrap();
        assert!(r.successors(from).any(|v| v == to));
        assert!(finite_restriction(&g, 0).unwrap().vertices.is_empty());
    }
}
