mod common;

use common::{det_accepts, dfa, nfa_accepts, pair_accepted};
use proptest::prelude::*;
use winset_core::automata::{enumerate_finite, is_finite};
use winset_core::bench::{generate_benchmark, paper_suite, BenchmarkSpec};
use winset_core::game::{finite_restriction, RationalSafetyGame};
use winset_core::learn::{learn, FrozenClock, LearnOptions, SatLearner};
use winset_core::teacher::{Counterexample, Teacher, TeacherResponse};
use winset_core::word::{all_words, Word};
use winset_core::Dfa;

const LEN: usize = 5;

fn halfline() -> RationalSafetyGame {
    generate_benchmark(&BenchmarkSpec::new("halfline").with("k", 2)).unwrap()
}

/// Successors of `u` by pair search; moves change the length by at most one.
fn successors(g: &RationalSafetyGame, u: &Word) -> Vec<Word> {
    all_words(g.alphabet().len(), u.len() + 1).into_iter().filter(|v| pair_accepted(g.edges(), u, v)).collect()
}

fn first_violation(g: &RationalSafetyGame, c: &Dfa, check: usize) -> Option<Word> {
    all_words(g.alphabet().len(), LEN).into_iter().find(|u| {
        let inside = det_accepts(c, u);
        match check {
            1 => nfa_accepts(g.initial(), u) && !inside,
            2 => inside && !nfa_accepts(g.safe(), u),
            3 => inside && nfa_accepts(g.v0(), u) && !successors(g, u).iter().any(|v| det_accepts(c, v)),
            _ => inside && nfa_accepts(g.v1(), u) && !successors(g, u).iter().all(|v| det_accepts(c, v)),
        }
    })
}

proptest! {
    #[test]
    fn counterexamples_are_genuine_and_least(c in dfa(3, 3)) {
        let g = halfline();
        let found: Vec<Option<Word>> = (1..=4).map(|i| first_violation(&g, &c, i)).collect();
        match Teacher::new(&g).query(&c).unwrap() {
            TeacherResponse::Yes => prop_assert!(found.iter().all(Option::is_none)),
            TeacherResponse::Cex(cex) => {
                let check = match &cex {
                    Counterexample::Positive(_) => 1,
                    Counterexample::Negative(_) => 2,
                    Counterexample::Existential(..) => 3,
                    Counterexample::Universal(..) => 4,
                };
                prop_assert!(found[..check - 1].iter().all(Option::is_none));
                // Witnesses longer than the search bound cannot be compared.
                if cex.word().len() <= LEN {
                    prop_assert_eq!(found[check - 1].as_ref(), Some(cex.word()));
                }
                if let Some(a) = cex.consequent() {
                    prop_assert!(is_finite(a));
                    prop_assert_eq!(enumerate_finite(a).unwrap(), successors(&g, cex.word()));
                }
            }
        }
    }
}

/// Winning-set conditions on explicit restrictions, each vertex judged by
/// the edges that survive the restriction.
#[test]
fn accepted_sets_are_winning_on_restrictions() {
    let mut specs = paper_suite();
    specs.push(BenchmarkSpec::new("halfline").with("k", 2));
    for spec in specs {
        let g = generate_benchmark(&spec).unwrap();
        let r = learn(&g, &mut SatLearner::default(), &LearnOptions::default(), &FrozenClock).unwrap();
        let c = r.dfa.unwrap();
        assert_eq!(Teacher::new(&g).query(&c).unwrap(), TeacherResponse::Yes);
        let x = finite_restriction(&g, 6).unwrap();
        for (v, u) in x.vertices.iter().enumerate() {
            if !det_accepts(&c, u) {
                assert!(!x.initial[v], "{}: initial {u} outside", spec.name);
                continue;
            }
            assert!(x.safe[v], "{}: unsafe {u} inside", spec.name);
            let mut succ = x.successors(v).map(|t| det_accepts(&c, &x.vertices[t]));
            if x.player1[v] {
                assert!(succ.all(|b| b), "{}: {u} escapes", spec.name);
            } else if u.len() < 6 - 1 {
                assert!(succ.any(|b| b), "{}: {u} is stuck", spec.name);
            }
        }
    }
}
