#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use winset_core::automata::{Deterministic, Nfa};
use winset_core::relations::Transducer;
use winset_core::word::Word;

pub fn nfa(k: usize, max_states: usize) -> impl Strategy<Value = Nfa> {
    (1..=max_states)
        .prop_flat_map(move |n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..k, 0..n), 0..=2 * n * k),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(move |(n, t, acc)| Nfa::new(k, n, 0, (0..n).filter(|&q| acc[q]), t).unwrap())
}

pub fn transducer(k: usize, max_states: usize) -> impl Strategy<Value = Transducer> {
    let label = prop::option::weighted(0.75, 0..k);
    (1..=max_states)
        .prop_flat_map(move |n| {
            (
                Just(n),
                prop::collection::vec((0..n, label.clone(), label.clone(), 0..n), 0..=3 * n),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(move |(n, t, acc)| Transducer::new(k, n, 0, (0..n).filter(|&q| acc[q]), t).unwrap())
}

pub fn word(k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k, 0..=max_len).prop_map(Word::from)
}

/// Subset simulation straight off the edge lists.
pub fn nfa_accepts(a: &Nfa, w: &Word) -> bool {
    let mut cur: BTreeSet<usize> = [a.initial()].into();
    for &sym in w.iter() {
        cur = cur.iter().flat_map(|&q| a.edges(q).iter().filter(move |e| e.0 == sym).map(|e| e.1)).collect();
    }
    cur.iter().any(|&q| a.is_accepting(q))
}

pub fn det_accepts<D: Deterministic + ?Sized>(d: &D, w: &Word) -> bool {
    let mut q = Some(d.initial());
    for &a in w.iter() {
        q = q.and_then(|q| d.step(q, a));
    }
    q.is_some_and(|q| d.is_accepting(q))
}

/// Depth-first search over `(state, read, written)` configurations.
pub fn pair_accepted(t: &Transducer, u: &Word, v: &Word) -> bool {
    let mut seen = HashSet::new();
    let mut stack = vec![(t.initial(), 0, 0)];
    while let Some(c @ (q, i, j)) = stack.pop() {
        if !seen.insert(c) {
            continue;
        }
        if i == u.len() && j == v.len() && t.is_accepting(q) {
            return true;
        }
        for &(a, b, r) in t.edges(q) {
            let step = |l: Option<usize>, w: &Word, at: usize| match l {
                None => Some(at),
                Some(x) if w.symbols().get(at) == Some(&x) => Some(at + 1),
                Some(_) => None,
            };
            if let (Some(ni), Some(nj)) = (step(a, u, i), step(b, v, j)) {
                stack.push((r, ni, nj));
            }
        }
    }
    false
}

pub fn dfa(k: usize, max_states: usize) -> impl Strategy<Value = winset_core::Dfa> {
    (1..=max_states)
        .prop_flat_map(move |n| {
            (prop::collection::vec(prop::collection::vec(0..n, k), n), prop::collection::vec(any::<bool>(), n))
        })
        .prop_map(move |(delta, acc)| winset_core::Dfa::new(k, delta, acc).unwrap())
}

fn consequent(k: usize, max_len: usize) -> impl Strategy<Value = Nfa> {
    prop::collection::vec(word(k, max_len), 0..=2).prop_map(move |ws| Nfa::from_words(k, ws.iter()))
}

/// Samples over `k` symbols with words of length at most 3 and finite consequents.
pub fn sample(k: usize) -> impl Strategy<Value = winset_core::sample::Sample> {
    (
        prop::collection::vec(word(k, 3), 0..=3),
        prop::collection::vec(word(k, 3), 0..=3),
        prop::collection::vec((word(k, 3), consequent(k, 3)), 0..=2),
        prop::collection::vec((word(k, 3), consequent(k, 3)), 0..=2),
    )
        .prop_map(|(pos, neg, ex, uni)| {
            let s = pos.into_iter().fold(winset_core::sample::Sample::new(), |s, w| s.with_positive(w));
            let s = neg.into_iter().fold(s, |s, w| s.with_negative(w));
            let s = ex.into_iter().fold(s, |s, (u, a)| s.with_existential(u, a));
            uni.into_iter().fold(s, |s, (u, a)| s.with_universal(u, a))
        })
}

/// Consequent members by enumeration; consequents here hold words of length at most 3.
pub fn members(a: &Nfa, k: usize) -> Vec<Word> {
    winset_core::word::all_words(k, 3).into_iter().filter(|w| nfa_accepts(a, w)).collect()
}

/// Whether a language, given as a membership test, satisfies the sample.
pub fn satisfies(s: &winset_core::sample::Sample, k: usize, acc: &dyn Fn(&Word) -> bool) -> bool {
    s.pos().iter().all(acc)
        && !s.neg().iter().any(acc)
        && s.ex().iter().all(|i| !acc(&i.antecedent) || members(&i.consequent, k).iter().any(acc))
        && s.uni().iter().all(|i| !acc(&i.antecedent) || members(&i.consequent, k).iter().all(acc))
}
