//! Brute-force reference implementations used to check the library.
//! Nothing here calls the algorithms under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::rngs::StdRng;
use rand::Rng;
use winset_core::automata::{Deterministic, Dfa, Nfa};
use winset_core::game::ExplicitGame;
use winset_core::relations::Transducer;
use winset_core::sample::Sample;
use winset_core::word::{all_words, Word};

/// Membership by explicit set-of-states simulation over the edge lists.
pub fn nfa_accepts(a: &Nfa, w: &Word) -> bool {
    let mut current: BTreeSet<usize> = [a.initial()].into();
    for &sym in w.iter() {
        let mut next = BTreeSet::new();
        for &q in &current {
            for &(b, r) in a.edges(q) {
                if b == sym {
                    next.insert(r);
                }
            }
        }
        current = next;
    }
    current.iter().any(|&q| a.is_accepting(q))
}

pub fn dfa_accepts(d: &Dfa, w: &Word) -> bool {
    let mut q = 0;
    for &a in w.iter() {
        q = d.next(q, a);
    }
    d.is_accepting(q)
}

/// Whether `(u, v)` is in the relation, by depth-first search over
/// configurations `(state, read, written)`.
pub fn transducer_accepts(t: &Transducer, u: &Word, v: &Word) -> bool {
    let mut seen = HashSet::new();
    let mut stack = vec![(t.initial(), 0usize, 0usize)];
    while let Some(c @ (q, i, j)) = stack.pop() {
        if !seen.insert(c) {
            continue;
        }
        if i == u.len() && j == v.len() && t.is_accepting(q) {
            return true;
        }
        for &(a, b, r) in t.edges(q) {
            let ni = match a {
                None => i,
                Some(a) if u.symbols().get(i) == Some(&a) => i + 1,
                Some(_) => continue,
            };
            let nj = match b {
                None => j,
                Some(b) if v.symbols().get(j) == Some(&b) => j + 1,
                Some(_) => continue,
            };
            stack.push((r, ni, nj));
        }
    }
    false
}

/// Greatest fixed point of the safe vertices from which Player 0 can stay
/// safe: a Player 0 vertex needs one successor inside, a Player 1 vertex
/// needs all successors inside (dead ends of Player 0 are losing).
pub fn maximal_winning_region(g: &ExplicitGame) -> Vec<bool> {
    let n = g.vertices.len();
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in &g.edges {
        succ[a].push(b);
    }
    let mut win = g.safe.clone();
    loop {
        let mut changed = false;
        for v in 0..n {
            if !win[v] {
                continue;
            }
            let ok = if g.player1[v] { succ[v].iter().all(|&s| win[s]) } else { succ[v].iter().any(|&s| win[s]) };
            if !ok {
                win[v] = false;
                changed = true;
            }
        }
        if !changed {
            return win;
        }
    }
}

/// All words of a finite language, by enumerating candidates up to `max_len`.
pub fn finite_words(a: &Nfa, alphabet_len: usize, max_len: usize) -> Vec<Word> {
    all_words(alphabet_len, max_len).into_iter().filter(|w| nfa_accepts(a, w)).collect()
}

/// Consistency evaluated word by word; consequents must be finite and
/// contain no word longer than `max_len`.
pub fn consistent_by_words<D: Deterministic + ?Sized>(d: &D, s: &Sample, k: usize, max_len: usize) -> bool {
    let acc = |w: &Word| {
        let mut q = Some(d.initial());
        for &a in w.iter() {
            q = q.and_then(|q| d.step(q, a));
        }
        q.is_some_and(|q| d.is_accepting(q))
    };
    s.pos().iter().all(acc)
        && !s.neg().iter().any(acc)
        && s.ex().iter().all(|i| !acc(&i.antecedent) || finite_words(&i.consequent, k, max_len).iter().any(acc))
        && s.uni().iter().all(|i| !acc(&i.antecedent) || finite_words(&i.consequent, k, max_len).iter().all(acc))
}

/// Every DFA with `n` states over `k` symbols with initial state 0.
pub fn all_dfas(n: usize, k: usize) -> impl Iterator<Item = Dfa> {
    let cells = n * k;
    let tables = n.pow(cells as u32);
    (0..tables).flat_map(move |t| {
        (0..1usize << n).map(move |acc| {
            let mut code = t;
            let mut delta = vec![vec![0; k]; n];
            for row in delta.iter_mut() {
                for cell in row.iter_mut() {
                    *cell = code % n;
                    code /= n;
                }
            }
            let accepting = (0..n).map(|q| acc >> q & 1 == 1).collect();
            Dfa::new(k, delta, accepting).unwrap()
        })
    })
}

pub fn random_word(rng: &mut StdRng, k: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from((0..len).map(|_| rng.gen_range(0..k)).collect::<Vec<_>>())
}

pub fn random_nfa(rng: &mut StdRng, k: usize, max_states: usize) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let mut trans = Vec::new();
    for p in 0..n {
        for a in 0..k {
            for q in 0..n {
                if rng.gen_bool(0.3) {
                    trans.push((p, a, q));
                }
            }
        }
    }
    let acc: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    Nfa::new(k, n, 0, acc, trans).unwrap()
}

pub fn random_transducer(rng: &mut StdRng, k: usize, max_states: usize) -> Transducer {
    let n = rng.gen_range(1..=max_states);
    let label = |rng: &mut StdRng| if rng.gen_bool(0.25) { None } else { Some(rng.gen_range(0..k)) };
    let mut trans = Vec::new();
    for p in 0..n {
        for _ in 0..rng.gen_range(0..=3) {
            let (a, b) = (label(rng), label(rng));
            trans.push((p, a, b, rng.gen_range(0..n)));
        }
    }
    let acc: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    Transducer::new(k, n, 0, acc, trans).unwrap()
}
