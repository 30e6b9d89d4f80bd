mod oracle;

use oracle::{dfa_accepts, nfa_accepts, random_nfa, random_transducer, transducer_accepts};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use winset::format::{parse_dfa, parse_game, serialize_dfa, serialize_game};
use winset_core::automata::{determinize, difference, intersect};
use winset_core::game::RationalSafetyGame;
use winset_core::relations::Transducer;
use winset_core::word::{all_words, Alphabet};

/// Draws until the game invariants hold; v0/v1 emptiness is the usual reject.
fn random_game(seed: u64) -> RationalSafetyGame {
    let mut rng = StdRng::seed_from_u64(seed);
    let sigma = Alphabet::new(["a", "b"]).unwrap();
    loop {
        let v0 = random_nfa(&mut rng, 2, 3);
        let v1 = difference(&random_nfa(&mut rng, 2, 3), &v0).unwrap();
        let edges: Transducer = random_transducer(&mut rng, 2, 3);
        let safe = random_nfa(&mut rng, 2, 3);
        let initial = intersect(&random_nfa(&mut rng, 2, 3), &safe).unwrap();
        if let Ok(g) = RationalSafetyGame::new(sigma.clone(), v0, v1, edges, safe, initial) {
            return g;
        }
    }
}

proptest! {
    #[test]
    fn games_survive_serialization(seed in any::<u64>()) {
        let g = random_game(seed);
        let h = parse_game(&serialize_game(&g)).unwrap();
        prop_assert_eq!(h.alphabet(), g.alphabet());
        for w in all_words(2, 4) {
            for (x, y) in [(g.v0(), h.v0()), (g.v1(), h.v1()), (g.safe(), h.safe()), (g.initial(), h.initial())] {
                prop_assert_eq!(nfa_accepts(x, &w), nfa_accepts(y, &w));
            }
        }
        let words = all_words(2, 3);
        for u in &words {
            for v in &words {
                prop_assert_eq!(transducer_accepts(g.edges(), u, v), transducer_accepts(h.edges(), u, v));
            }
        }
    }

    #[test]
    fn dfas_survive_serialization(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = Alphabet::new(["x", "y", "z"]).unwrap();
        let d = determinize(&random_nfa(&mut rng, 3, 4));
        let (beta, e) = parse_dfa(&serialize_dfa(&sigma, &d)).unwrap();
        prop_assert_eq!(beta, sigma);
        for w in all_words(3, 4) {
            prop_assert_eq!(dfa_accepts(&e, &w), dfa_accepts(&d, &w));
        }
    }
}
