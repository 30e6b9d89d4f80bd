mod common;

use common::{det_accepts, nfa, nfa_accepts};
use proptest::prelude::*;
use winset_core::automata::*;
use winset_core::word::all_words;

proptest! {
    #[test]
    fn boolean_operations_match_membership(a in nfa(2, 4), b in nfa(2, 4)) {
        let inter = intersect(&a, &b).unwrap();
        let uni = union(&a, &b).unwrap();
        let diff = difference(&a, &b).unwrap();
        let comp = complement_nfa(&a);
        for w in all_words(2, 6) {
            let (x, y) = (nfa_accepts(&a, &w), nfa_accepts(&b, &w));
            prop_assert_eq!(nfa_accepts(&inter, &w), x && y);
            prop_assert_eq!(nfa_accepts(&uni, &w), x || y);
            prop_assert_eq!(nfa_accepts(&diff, &w), x && !y);
            prop_assert_eq!(det_accepts(&comp, &w), !x);
        }
    }

    #[test]
    fn determinize_and_minimize_preserve_language(a in nfa(3, 4)) {
        let d = determinize(&a);
        let m = minimize(&d);
        prop_assert!(m.state_count() <= d.state_count());
        prop_assert_eq!(&minimize(&m), &m);
        for w in all_words(3, 4) {
            let x = nfa_accepts(&a, &w);
            prop_assert_eq!(det_accepts(&d, &w), x);
            prop_assert_eq!(det_accepts(&m, &w), x);
        }
    }

    #[test]
    fn canonical_forms_decide_equivalence(a in nfa(2, 3), b in nfa(2, 3)) {
        let same = all_words(2, 8).iter().all(|w| nfa_accepts(&a, w) == nfa_accepts(&b, w));
        prop_assert_eq!(canonical(&a) == canonical(&b), same);
        prop_assert_eq!(equivalent(&a, &b).unwrap(), same);
    }

    #[test]
    fn self_difference_is_empty(a in nfa(2, 4)) {
        prop_assert!(is_empty(&intersect(&a, &complement_nfa(&a).to_nfa()).unwrap()));
    }

    #[test]
    fn shortest_word_is_least_member(a in nfa(2, 4)) {
        // Any nonempty language has a member shorter than the automaton has states.
        let bound = a.state_count();
        let brute = all_words(2, bound).into_iter().find(|w| nfa_accepts(&a, w));
        prop_assert_eq!(shortest_word(&a), brute);
    }

    #[test]
    fn finite_enumeration_is_sorted_and_complete(a in nfa(2, 4)) {
        let bound = a.state_count();
        // Pumping: an infinite language has a member whose length lies in
        // [bound, 2·bound), and a finite one has none of length bound or more.
        let long = all_words(2, 2 * bound).iter().any(|w| w.len() >= bound && nfa_accepts(&a, w));
        prop_assert_eq!(is_finite(&a), !long);
        if !long {
            let ws = enumerate_finite(&a).unwrap();
            prop_assert!(ws.windows(2).all(|p| p[0] < p[1]));
            let brute: Vec<_> = all_words(2, bound).into_iter().filter(|w| nfa_accepts(&a, w)).collect();
            prop_assert_eq!(ws, brute);
        } else {
            prop_assert!(enumerate_finite(&a).is_err());
        }
    }

    #[test]
    fn finite_language_round_trip(ws in prop::collection::btree_set(common::word(2, 4), 0..6)) {
        let a = finite_language(2, &ws);
        prop_assert_eq!(enumerate_finite(&a).unwrap(), ws.into_iter().collect::<Vec<_>>());
    }
}
