use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{Dfa, Nfa, State};
use crate::error::Error;
use crate::word::{Symbol, Word};

/// Subset construction. The result is total: the empty subset, when reached,
/// becomes a rejecting sink. States are numbered in BFS order.
pub fn determinize(a: &Nfa) -> Dfa {
    let k = a.alphabet_len();
    let mut index: BTreeMap<Vec<State>, State> = BTreeMap::new();
    let mut subsets: Vec<Vec<State>> = Vec::new();
    let start = vec![a.initial()];
    index.insert(start.clone(), 0);
    subsets.push(start);
    let mut delta: Vec<State> = Vec::new();
    let mut accepting = Vec::new();
    let mut buckets: Vec<Vec<State>> = vec![Vec::new(); k];
    let mut i = 0;
    while i < subsets.len() {
        accepting.push(subsets[i].iter().any(|&q| a.is_accepting(q)));
        for b in &mut buckets {
            b.clear();
        }
        for &q in &subsets[i] {
            for &(sym, r) in a.edges(q) {
                buckets[sym].push(r);
            }
        }
        for b in buckets.iter_mut() {
            b.sort_unstable();
            b.dedup();
            let next = match index.get(b.as_slice()) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    index.insert(b.clone(), id);
                    subsets.push(b.clone());
                    id
                }
            };
            delta.push(next);
        }
        i += 1;
    }
    Dfa::from_flat(k, delta, accepting)
}

pub fn complement(d: &Dfa) -> Dfa {
    d.complement()
}

/// Complement of an NFA's language, as a total DFA.
pub fn complement_nfa(a: &Nfa) -> Dfa {
    determinize(a).complement()
}

/// Product automaton for `L(a) ∩ L(b)`, trimmed.
pub fn intersect(a: &Nfa, b: &Nfa) -> Result<Nfa, Error> {
    a.same_alphabet(b)?;
    let mut index: BTreeMap<(State, State), State> = BTreeMap::new();
    let mut pairs = vec![(a.initial(), b.initial())];
    index.insert(pairs[0], 0);
    let mut trans: Vec<Vec<(Symbol, State)>> = Vec::new();
    let mut accepting = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        accepting.push(a.is_accepting(p) && b.is_accepting(q));
        let mut out = Vec::new();
        let (ea, eb) = (a.edges(p), b.edges(q));
        // Both edge lists are sorted by symbol: merge-join on the symbol.
        let (mut x, mut y) = (0, 0);
        while x < ea.len() && y < eb.len() {
            let (sa, sb) = (ea[x].0, eb[y].0);
            if sa < sb {
                x += 1;
            } else if sb < sa {
                y += 1;
            } else {
                let y_end = y + eb[y..].iter().take_while(|e| e.0 == sa).count();
                while x < ea.len() && ea[x].0 == sa {
                    for &(_, r2) in &eb[y..y_end] {
                        let key = (ea[x].1, r2);
                        let id = *index.entry(key).or_insert_with(|| {
                            pairs.push(key);
                            pairs.len() - 1
                        });
                        out.push((sa, id));
                    }
                    x += 1;
                }
                y = y_end;
            }
        }
        trans.push(out);
        i += 1;
    }
    Ok(Nfa::from_parts(a.alphabet_len(), 0, accepting, trans).trim())
}

/// Automaton for `L(a) ∪ L(b)` built with a fresh initial state, trimmed.
pub fn union(a: &Nfa, b: &Nfa) -> Result<Nfa, Error> {
    a.same_alphabet(b)?;
    let (na, nb) = (a.state_count(), b.state_count());
    let mut accepting = vec![a.is_accepting(a.initial()) || b.is_accepting(b.initial())];
    accepting.extend((0..na).map(|q| a.is_accepting(q)));
    accepting.extend((0..nb).map(|q| b.is_accepting(q)));
    let mut trans: Vec<Vec<(Symbol, State)>> = Vec::with_capacity(1 + na + nb);
    let mut init: Vec<(Symbol, State)> = a.edges(a.initial()).iter().map(|&(s, q)| (s, q + 1)).collect();
    init.extend(b.edges(b.initial()).iter().map(|&(s, q)| (s, q + 1 + na)));
    trans.push(init);
    trans.extend((0..na).map(|p| a.edges(p).iter().map(|&(s, q)| (s, q + 1)).collect()));
    trans.extend((0..nb).map(|p| b.edges(p).iter().map(|&(s, q)| (s, q + 1 + na)).collect()));
    Ok(Nfa::from_parts(a.alphabet_len(), 0, accepting, trans).trim())
}

/// `L(a) \ L(b)`, computed as `a ∩ complement(determinize(b))`.
pub fn difference(a: &Nfa, b: &Nfa) -> Result<Nfa, Error> {
    a.same_alphabet(b)?;
    intersect(a, &complement_nfa(b).to_nfa())
}

/// Shortlex-least accepted word, or `None` for the empty language.
pub fn shortest_word(a: &Nfa) -> Option<Word> {
    // BFS discovers states in shortlex order of their least access word.
    let n = a.state_count();
    let mut parent: Vec<Option<(State, Symbol)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[a.initial()] = true;
    queue.push_back(a.initial());
    while let Some(p) = queue.pop_front() {
        if a.is_accepting(p) {
            let mut word = Vec::new();
            let mut q = p;
            while let Some((prev, sym)) = parent[q] {
                word.push(sym);
                q = prev;
            }
            word.reverse();
            return Some(Word(word));
        }
        for &(sym, q) in a.edges(p) {
            if !seen[q] {
                seen[q] = true;
                parent[q] = Some((p, sym));
                queue.push_back(q);
            }
        }
    }
    None
}

pub fn is_empty(a: &Nfa) -> bool {
    !a.coreachable()[a.initial()] || shortest_word(a).is_none()
}

/// `L(a) ⊆ L(b)`.
pub fn is_subset(a: &Nfa, b: &Nfa) -> Result<bool, Error> {
    Ok(is_empty(&difference(a, b)?))
}

pub fn equivalent(a: &Nfa, b: &Nfa) -> Result<bool, Error> {
    a.same_alphabet(b)?;
    Ok(canonical(a) == canonical(b))
}

/// Minimal DFA in canonical numbering: equal languages give equal values.
pub fn canonical(a: &Nfa) -> Dfa {
    minimize(&determinize(a))
}

/// `L(a)` is finite iff the trimmed automaton is acyclic.
pub fn is_finite(a: &Nfa) -> bool {
    let t = a.trim();
    let n = t.state_count();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut color = vec![0u8; n];
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(State, usize)> = vec![(root, 0)];
        color[root] = 1;
        while let Some(&mut (p, ref mut next)) = stack.last_mut() {
            let edges = t.edges(p);
            if *next < edges.len() {
                let q = edges[*next].1;
                *next += 1;
                match color[q] {
                    0 => {
                        color[q] = 1;
                        stack.push((q, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            } else {
                color[p] = 2;
                stack.pop();
            }
        }
    }
    true
}

/// All words of a finite language, shortlex-sorted.
pub fn enumerate_finite(a: &Nfa) -> Result<Vec<Word>, Error> {
    if !is_finite(a) {
        return Err(Error::InfiniteLanguage);
    }
    let t = determinize(a).to_nfa().trim();
    if is_empty(&t) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut stack: Vec<(State, Word)> = vec![(t.initial(), Word::empty())];
    while let Some((p, w)) = stack.pop() {
        if t.is_accepting(p) {
            out.push(w.clone());
        }
        for &(sym, q) in t.edges(p) {
            stack.push((q, w.appended(sym)));
        }
    }
    out.sort();
    Ok(out)
}

/// All accepted words of length at most `max_len`, shortlex-sorted.
pub fn words_up_to(a: &Nfa, max_len: usize) -> Vec<Word> {
    let t = determinize(a).to_nfa().trim();
    let mut out = Vec::new();
    if is_empty(&t) {
        return out;
    }
    let mut layer: Vec<(State, Word)> = vec![(t.initial(), Word::empty())];
    for len in 0..=max_len {
        for (p, w) in &layer {
            if t.is_accepting(*p) {
                out.push(w.clone());
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (p, w) in &layer {
            for &(sym, q) in t.edges(*p) {
                next.push((q, w.appended(sym)));
            }
        }
        layer = next;
    }
    out.sort();
    out
}

/// Moore partition refinement on the reachable part, renumbered in BFS order.
pub fn minimize(d: &Dfa) -> Dfa {
    let k = d.alphabet_len();
    // Reachable states in BFS order.
    let mut order = vec![0];
    let mut pos = vec![usize::MAX; d.state_count()];
    pos[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let q = order[i];
        for a in 0..k {
            let r = d.next(q, a);
            if pos[r] == usize::MAX {
                pos[r] = order.len();
                order.push(r);
            }
        }
        i += 1;
    }
    let n = order.len();
    let succ = |x: usize, a: Symbol| pos[d.next(order[x], a)];
    let mut class: Vec<usize> = (0..n).map(|x| usize::from(d.is_accepting(order[x]))).collect();
    let mut classes = if class.iter().all(|&c| c == class[0]) { 1 } else { 2 };
    if classes == 1 {
        class.iter_mut().for_each(|c| *c = 0);
    }
    loop {
        let mut sigs: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut next_class = vec![0; n];
        for x in 0..n {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[x]);
            sig.extend((0..k).map(|a| class[succ(x, a)]));
            let len = sigs.len();
            next_class[x] = *sigs.entry(sig).or_insert(len);
        }
        let count = sigs.len();
        class = next_class;
        if count == classes {
            break;
        }
        classes = count;
    }
    // Renumber classes by BFS from the initial class.
    let mut id = vec![usize::MAX; classes];
    let mut rep = Vec::with_capacity(classes);
    id[class[0]] = 0;
    rep.push(0);
    let mut i = 0;
    while i < rep.len() {
        let x = rep[i];
        for a in 0..k {
            let c = class[succ(x, a)];
            if id[c] == usize::MAX {
                id[c] = rep.len();
                rep.push(succ(x, a));
            }
        }
        i += 1;
    }
    let mut delta = Vec::with_capacity(rep.len() * k);
    let mut accepting = Vec::with_capacity(rep.len());
    for &x in &rep {
        accepting.push(d.is_accepting(order[x]));
        delta.extend((0..k).map(|a| id[class[succ(x, a)]]));
    }
    Dfa::from_flat(k, delta, accepting)
}

/// Trimmed NFA view of a DFA (drops the rejecting sink if present).
pub fn dfa_to_trimmed_nfa(d: &Dfa) -> Nfa {
    d.to_nfa().trim()
}

/// Deduplicated union of arbitrarily many words, used for small finite sets.
pub fn finite_language(alphabet_len: usize, words: &BTreeSet<Word>) -> Nfa {
    Nfa::from_words(alphabet_len, words.iter())
}
