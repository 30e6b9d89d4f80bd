mod common;

use std::collections::BTreeSet;

use common::{det_accepts, dfa, members, sample, satisfies};
use proptest::prelude::*;
use winset_core::sample::{check_contradiction, is_consistent, ContradictionStatus};
use winset_core::sat::InternalBackend;
use winset_core::word::Word;

proptest! {
    #[test]
    fn consistency_matches_word_semantics(d in dfa(2, 3), s in sample(2)) {
        prop_assert_eq!(is_consistent(&d, &s), satisfies(&s, 2, &|w| det_accepts(&d, w)));
    }

    #[test]
    fn contradiction_iff_no_subset_of_the_universe_works(s in sample(2)) {
        let chi = s.chi().unwrap();
        let v = &chi.universe;
        prop_assume!(v.len() <= 14);
        let exists = (0..1u32 << v.len()).any(|bits| {
            satisfies(&s, 2, &|w| v.iter().position(|x| x == w).is_some_and(|i| bits >> i & 1 == 1))
        });
        let status = check_contradiction(&s, &mut InternalBackend).unwrap();
        prop_assert_eq!(status, if exists { ContradictionStatus::Consistent } else { ContradictionStatus::Contradictory });
    }

    #[test]
    fn universe_holds_sample_and_consequent_words(s in sample(2)) {
        let words = s.words();
        prop_assert!(words.windows(2).all(|p| p[0] < p[1]));
        let mut want: BTreeSet<Word> = words.into_iter().collect();
        for i in s.ex().iter().chain(s.uni()) {
            want.extend(members(&i.consequent, 2));
        }
        prop_assert_eq!(s.chi().unwrap().universe, want.into_iter().collect::<Vec<_>>());
    }
}
