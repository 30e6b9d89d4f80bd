//! The exact learner: encodes "some DFA with `n` states is consistent with
//! the sample" as a propositional formula and searches for the least `n`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::automata::{Dfa, State};
use crate::error::Error;
use crate::sample::Sample;
use crate::sat::{to_cnf, Formula, Lit, Model, SatBackend, SatResult, Var};
use crate::word::Word;

/// Variable numbering for one `(sample, n)` encoding.
///
/// Families occupy disjoint consecutive ranges in the order d, f, x, y, z;
/// Tseitin variables are allocated above [`VarBook::num_vars`].
#[derive(Clone, Debug)]
pub struct VarBook {
    n: usize,
    alphabet_len: usize,
    prefixes: Vec<Word>,
    prefix_index: BTreeMap<Word, usize>,
    base_f: Var,
    base_x: Var,
    /// `(base, |Q_A|)` per universal implication.
    y: Vec<(Var, usize)>,
    /// `(base, |Q_A|, k)` per existential implication.
    z: Vec<(Var, usize, usize)>,
    next: Var,
}

impl VarBook {
    pub fn new(sample: &Sample, alphabet_len: usize, n: usize) -> Self {
        assert!(n >= 1, "a DFA has at least one state");
        let mut pre: BTreeSet<Word> = BTreeSet::new();
        pre.insert(Word::empty());
        for w in sample.words() {
            pre.extend(w.prefixes());
        }
        let prefixes: Vec<Word> = pre.into_iter().collect();
        let prefix_index = prefixes.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let base_f = 1 + (n * alphabet_len * n) as Var;
        let base_x = base_f + n as Var;
        let mut next = base_x + (prefixes.len() * n) as Var;
        let mut y = Vec::new();
        for imp in sample.uni() {
            let qa = imp.consequent.state_count();
            y.push((next, qa));
            next += (n * qa) as Var;
        }
        let mut z = Vec::new();
        for imp in sample.ex() {
            let qa = imp.consequent.state_count();
            let k = n * qa - 1;
            z.push((next, qa, k));
            next += ((k + 1) * n * qa) as Var;
        }
        VarBook { n, alphabet_len, prefixes, prefix_index, base_f, base_x, y, z, next }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet_len(&self) -> usize {
        self.alphabet_len
    }

    /// `Pref(W)` in shortlex order.
    pub fn prefixes(&self) -> &[Word] {
        &self.prefixes
    }

    /// Number of variables of the paper families (excluding Tseitin ones).
    pub fn num_vars(&self) -> Var {
        self.next - 1
    }

    pub fn d(&self, p: State, a: usize, q: State) -> Var {
        1 + ((p * self.alphabet_len + a) * self.n + q) as Var
    }

    pub fn f(&self, q: State) -> Var {
        self.base_f + q as Var
    }

    pub fn x(&self, u: &Word, q: State) -> Var {
        self.x_at(self.prefix_index[u], q)
    }

    fn x_at(&self, i: usize, q: State) -> Var {
        self.base_x + (i * self.n + q) as Var
    }

    /// `y^ι_{q,q'}` for the `i`-th universal implication.
    pub fn y(&self, i: usize, q: State, qa: State) -> Var {
        let (base, size) = self.y[i];
        base + (q * size + qa) as Var
    }

    /// `z^ι_{q,q',ℓ}` for the `i`-th existential implication.
    pub fn z(&self, i: usize, q: State, qa: State, layer: usize) -> Var {
        let (base, size, _) = self.z[i];
        base + ((layer * self.n + q) * size + qa) as Var
    }

    /// The largest layer index `k = n·|Q_A| − 1` of the `i`-th existential implication.
    pub fn layers(&self, i: usize) -> usize {
        self.z[i].2
    }
}

fn neg(v: Var) -> Lit {
    -(v as Lit)
}

fn pos(v: Var) -> Lit {
    v as Lit
}

/// Determinism (ordered pairs `q ≠ q'`) and totality of `d`.
pub fn build_dfa_constraints(b: &VarBook) -> Formula {
    let n = b.n;
    let mut parts = Vec::new();
    for p in 0..n {
        for a in 0..b.alphabet_len {
            for q in 0..n {
                for q2 in 0..n {
                    if q != q2 {
                        parts.push(Formula::clause([neg(b.d(p, a, q)), neg(b.d(p, a, q2))]));
                    }
                }
            }
            parts.push(Formula::clause((0..n).map(|q| pos(b.d(p, a, q)))));
        }
    }
    Formula::And(parts)
}

/// Runs on `Pref(W)`: start in state 0, at most one state per prefix, and
/// propagation along `d`.
pub fn build_run_constraints(b: &VarBook) -> Formula {
    let n = b.n;
    let mut parts = vec![Formula::var(b.x_at(0, 0))];
    for i in 0..b.prefixes.len() {
        for q in 0..n {
            for q2 in q + 1..n {
                parts.push(Formula::clause([neg(b.x_at(i, q)), neg(b.x_at(i, q2))]));
            }
        }
    }
    for (i, u) in b.prefixes.iter().enumerate().skip(1) {
        let parent = b.prefix_index[&u.prefix(u.len() - 1)];
        let a = u.symbols()[u.len() - 1];
        for p in 0..n {
            for q in 0..n {
                parts.push(Formula::clause([neg(b.x_at(parent, p)), neg(b.d(p, a, q)), pos(b.x_at(i, q))]));
            }
        }
    }
    Formula::And(parts)
}

pub fn build_pos(b: &VarBook, s: &Sample) -> Formula {
    Formula::And(
        s.pos()
            .iter()
            .flat_map(|u| (0..b.n).map(move |q| Formula::clause([neg(b.x(u, q)), pos(b.f(q))])))
            .collect(),
    )
}

pub fn build_neg(b: &VarBook, s: &Sample) -> Formula {
    Formula::And(
        s.neg()
            .iter()
            .flat_map(|u| (0..b.n).map(move |q| Formula::clause([neg(b.x(u, q)), neg(b.f(q))])))
            .collect(),
    )
}

/// `⋁_q x_{u,q} ∧ f_q`: the conjecture accepts `u`.
fn accepted(b: &VarBook, u: &Word) -> Formula {
    Formula::Or((0..b.n).map(|q| Formula::And(vec![Formula::var(b.x(u, q)), Formula::var(b.f(q))])).collect())
}

pub fn build_uni(b: &VarBook, s: &Sample) -> Formula {
    let n = b.n;
    let mut parts = Vec::new();
    for (i, imp) in s.uni().iter().enumerate() {
        let a = &imp.consequent;
        parts.push(Formula::var(b.y(i, 0, a.initial())));
        for (pa, sym, qa) in a.transitions() {
            for p in 0..n {
                for q in 0..n {
                    parts.push(Formula::clause([neg(b.y(i, p, pa)), neg(b.d(p, sym, q)), pos(b.y(i, q, qa))]));
                }
            }
        }
        let mut all = Vec::new();
        for qa in a.accepting_states() {
            for q in 0..n {
                all.push(Formula::clause([neg(b.y(i, q, qa)), pos(b.f(q))]));
            }
        }
        parts.push(Formula::implies(accepted(b, &imp.antecedent), Formula::And(all)));
    }
    Formula::And(parts)
}

/// Layered joint reachability. A consequent state that cannot be reached in
/// exactly `ℓ` steps has all its layer-`ℓ` variables fixed to false, and no
/// clauses are generated for it.
pub fn build_ex(b: &VarBook, s: &Sample) -> Formula {
    let n = b.n;
    let mut parts = Vec::new();
    for (i, imp) in s.ex().iter().enumerate() {
        let a = &imp.consequent;
        let k = b.layers(i);
        let size = a.state_count();
        let transitions: Vec<(State, usize, State)> = a.transitions().collect();
        // live[ℓ][q'] iff q' is reachable in A by a word of length ℓ
        let mut live = vec![vec![false; size]];
        live[0][a.initial()] = true;
        for layer in 0..k {
            let mut next = vec![false; size];
            for &(pa, _, qa) in &transitions {
                next[qa] |= live[layer][pa];
            }
            live.push(next);
        }
        // incoming[q'] = (p', sym) with p' -sym-> q'
        let mut incoming: Vec<Vec<(State, usize)>> = vec![Vec::new(); size];
        for &(pa, sym, qa) in &transitions {
            incoming[qa].push((pa, sym));
        }
        for (layer, row) in live.iter().enumerate() {
            for q in 0..n {
                for (qa, &alive) in row.iter().enumerate() {
                    let v = b.z(i, q, qa, layer);
                    if !alive || (layer == 0 && (q, qa) != (0, a.initial())) {
                        parts.push(Formula::Lit(neg(v)));
                    } else if layer == 0 {
                        parts.push(Formula::Lit(pos(v)));
                    }
                }
            }
        }
        for (layer, row) in live.iter().enumerate().take(k) {
            for &(pa, sym, qa) in transitions.iter().filter(|t| row[t.0]) {
                for p in 0..n {
                    for q in 0..n {
                        parts.push(Formula::clause([
                            neg(b.z(i, p, pa, layer)),
                            neg(b.d(p, sym, q)),
                            pos(b.z(i, q, qa, layer + 1)),
                        ]));
                    }
                }
            }
        }
        for layer in 1..=k {
            for qa in (0..size).filter(|&qa| live[layer][qa]) {
                for q in 0..n {
                    let support: Vec<Formula> = incoming[qa]
                        .iter()
                        .filter(|&&(pa, _)| live[layer - 1][pa])
                        .flat_map(|&(pa, sym)| {
                            (0..n).map(move |p| {
                                Formula::And(vec![Formula::var(b.z(i, p, pa, layer - 1)), Formula::var(b.d(p, sym, q))])
                            })
                        })
                        .collect();
                    parts.push(Formula::implies(Formula::var(b.z(i, q, qa, layer)), Formula::Or(support)));
                }
            }
        }
        let mut some = Vec::new();
        for qa in a.accepting_states() {
            for layer in (0..=k).filter(|&l| live[l][qa]) {
                for q in 0..n {
                    some.push(Formula::And(vec![Formula::var(b.z(i, q, qa, layer)), Formula::var(b.f(q))]));
                }
            }
        }
        parts.push(Formula::implies(accepted(b, &imp.antecedent), Formula::Or(some)));
    }
    Formula::And(parts)
}

/// `φ_n^S` over a fresh [`VarBook`].
pub fn build_formula(s: &Sample, alphabet_len: usize, n: usize) -> (VarBook, Formula) {
    let b = VarBook::new(s, alphabet_len, n);
    let f = Formula::And(vec![
        build_dfa_constraints(&b),
        build_run_constraints(&b),
        build_pos(&b, s),
        build_neg(&b, s),
        build_uni(&b, s),
        build_ex(&b, s),
    ]);
    (b, f)
}

/// Prefixes that no consistent DFA can send to a common state: some suffix
/// leads one into `Pos` and the other into `Neg`. Greedy, seeded with `ε`,
/// in descending order of conflict degree.
pub fn distinguishable_prefixes(b: &VarBook, s: &Sample) -> Vec<usize> {
    let labels: BTreeMap<&Word, bool> =
        s.pos().iter().map(|w| (w, true)).chain(s.neg().iter().map(|w| (w, false))).collect();
    // Labelled continuations of each prefix, keyed by suffix.
    let mut below: Vec<BTreeMap<&[usize], bool>> = vec![BTreeMap::new(); b.prefixes.len()];
    for (&w, &label) in &labels {
        for cut in 0..=w.len() {
            let i = b.prefix_index[&w.prefix(cut)];
            below[i].insert(&w.symbols()[cut..], label);
        }
    }
    let clash = |i: usize, j: usize| {
        let (small, large) = if below[i].len() <= below[j].len() { (i, j) } else { (j, i) };
        below[small].iter().any(|(suffix, l)| below[large].get(suffix).is_some_and(|m| m != l))
    };
    let count = b.prefixes.len();
    let labelled: Vec<usize> = (0..count).filter(|&i| !below[i].is_empty()).collect();
    let mut degree = vec![0usize; count];
    for (x, &i) in labelled.iter().enumerate() {
        for &j in &labelled[x + 1..] {
            if clash(i, j) {
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    let mut order: Vec<usize> = labelled.into_iter().filter(|&i| i != 0).collect();
    order.sort_by_key(|&i| (core::cmp::Reverse(degree[i]), i));
    let mut clique = vec![0];
    for i in order {
        if clique.iter().all(|&c| clash(c, i)) {
            clique.push(i);
        }
    }
    clique
}

/// Pins the `j`-th distinguishable prefix to state `j`. Any consistent DFA
/// can be renumbered (fixing the initial state) to satisfy this, so the
/// conjunction with `φ_n^S` is equisatisfiable. `None` if the prefixes
/// outnumber the states.
pub fn build_symmetry_breaking(b: &VarBook, s: &Sample) -> Option<Formula> {
    let clique = distinguishable_prefixes(b, s);
    if clique.len() > b.n {
        return None;
    }
    Some(Formula::And(clique.iter().enumerate().map(|(q, &i)| Formula::var(b.x_at(i, q))).collect()))
}

/// Reads the automaton off a model of `φ_n^S`.
pub fn extract_dfa(m: &Model, b: &VarBook) -> Result<Dfa, Error> {
    let mut delta = Vec::with_capacity(b.n);
    for p in 0..b.n {
        let mut row = Vec::with_capacity(b.alphabet_len);
        for a in 0..b.alphabet_len {
            let mut targets = (0..b.n).filter(|&q| m.value(b.d(p, a, q)));
            match (targets.next(), targets.next()) {
                (Some(q), None) => row.push(q),
                _ => return Err(Error::Internal(format!("model is not deterministic and total at ({p}, {a})"))),
            }
        }
        delta.push(row);
    }
    let accepting = (0..b.n).map(|q| m.value(b.f(q))).collect();
    Dfa::new(b.alphabet_len, delta, accepting)
}

/// Solves `φ_n^S`; `Ok(None)` means unsatisfiable.
pub fn solve_size(
    s: &Sample,
    alphabet_len: usize,
    n: usize,
    backend: &mut dyn SatBackend,
    interrupt: &dyn Fn() -> bool,
) -> Result<Option<Dfa>, Error> {
    let (book, f) = build_formula(s, alphabet_len, n);
    let Some(pins) = build_symmetry_breaking(&book, s) else {
        return Ok(None);
    };
    let cnf = to_cnf(&Formula::And(vec![f, pins]), book.num_vars());
    match backend.solve(&cnf, interrupt)? {
        SatResult::Sat(m) => {
            if !m.satisfies(&cnf) {
                return Err(Error::Solver("model does not satisfy the instance".into()));
            }
            extract_dfa(&m, &book).map(Some)
        }
        SatResult::Unsat => Ok(None),
        SatResult::Interrupted => Err(Error::Interrupted),
    }
}

/// The least `n ≥ n_start` for which `φ_n^S` is satisfiable, with its DFA.
///
/// `n_start` must not exceed the size of a minimal consistent DFA for the
/// result to be minimal; `1` is always safe.
pub fn minimal_consistent_dfa(
    s: &Sample,
    alphabet_len: usize,
    n_start: usize,
    n_cap: usize,
    backend: &mut dyn SatBackend,
    interrupt: &dyn Fn() -> bool,
) -> Result<Dfa, Error> {
    for n in n_start.max(1)..=n_cap {
        if let Some(d) = solve_size(s, alphabet_len, n, backend, interrupt)? {
            return Ok(d);
        }
    }
    Err(Error::CapExceeded { last: n_cap })
}

/// Whether no DFA with `n - 1` states is consistent with `s`.
pub fn is_minimal_size(
    s: &Sample,
    alphabet_len: usize,
    n: usize,
    backend: &mut dyn SatBackend,
    interrupt: &dyn Fn() -> bool,
) -> Result<bool, Error> {
    if n <= 1 {
        return Ok(true);
    }
    Ok(solve_size(s, alphabet_len, n - 1, backend, interrupt)?.is_none())
}
