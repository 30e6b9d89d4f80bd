mod common;

use std::collections::BTreeSet;

use common::{det_accepts, sample, satisfies};
use proptest::prelude::*;
use winset_core::bench::{generate_benchmark, BenchmarkSpec};
use winset_core::learn::{learn, FrozenClock, LearnOptions, Outcome, RpniLearner};
use winset_core::rpni::{choose_positive_closure, merge_learn, prefix_tree_acceptor};
use winset_core::sample::{check_contradiction, is_consistent, ContradictionStatus};
use winset_core::sat::InternalBackend;
use winset_core::Error;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn merging_keeps_consistency(s in sample(2)) {
        let status = check_contradiction(&s, &mut InternalBackend).unwrap();
        let closure = choose_positive_closure(&s, &mut InternalBackend);
        if status == ContradictionStatus::Contradictory {
            prop_assert_eq!(closure.unwrap_err(), Error::Contradiction);
            let learned = merge_learn(&s, 2, &mut InternalBackend, &mut |_| ());
            prop_assert!(learned.is_err());
            return Ok(());
        }
        let closure = closure.unwrap();
        let universe: BTreeSet<_> = s.chi().unwrap().universe.into_iter().collect();
        prop_assert!(s.pos().iter().all(|w| closure.contains(w)));
        prop_assert!(closure.is_subset(&universe));
        let pta = prefix_tree_acceptor(2, &closure);
        prop_assert!(is_consistent(&pta, &s));
        prop_assert!(satisfies(&s, 2, &|w| det_accepts(&pta, w)));

        let mut bad = 0;
        let d = merge_learn(&s, 2, &mut InternalBackend, &mut |e| {
            if e.kept && !satisfies(&s, 2, &|w| det_accepts(e.quotient, w)) {
                bad += 1;
            }
        })
        .unwrap();
        prop_assert_eq!(bad, 0);
        prop_assert!(satisfies(&s, 2, &|w| det_accepts(&d, w)));
    }
}

#[test]
fn prefix_tree_accepts_exactly_its_words() {
    let words: BTreeSet<_> = common::members(&winset_core::automata::Nfa::universal(2), 2).into_iter().step_by(3).collect();
    let pta = prefix_tree_acceptor(2, &words);
    for w in winset_core::word::all_words(2, 4) {
        assert_eq!(det_accepts(&pta, &w), words.contains(&w));
    }
}

#[test]
fn evasion_terminates_with_a_winning_set() {
    let g = generate_benchmark(&BenchmarkSpec::new("evasion")).unwrap();
    let r = learn(&g, &mut RpniLearner::default(), &LearnOptions::default(), &FrozenClock).unwrap();
    assert_eq!(r.outcome, Outcome::Solved);
}
