//! Conflict-driven clause learning with two watched literals, VSIDS,
//! phase saving, Luby restarts and LBD-based clause deletion.

use alloc::vec;
use alloc::vec::Vec;

use super::{CnfInstance, Model, SatResult};

/// Internal literal: `var << 1 | negated`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct L(u32);

impl L {
    fn from_dimacs(l: i32) -> L {
        let v = l.unsigned_abs() - 1;
        L(v << 1 | u32::from(l < 0))
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn neg(self) -> L {
        L(self.0 ^ 1)
    }

    fn negated(self) -> bool {
        self.0 & 1 == 1
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    True,
    False,
    Unset,
}

struct Clause {
    lits: Vec<L>,
    learnt: bool,
    deleted: bool,
    lbd: u32,
    activity: f64,
}

#[derive(Clone, Copy)]
struct Watcher {
    clause: u32,
    blocker: L,
}

const NO_REASON: u32 = u32::MAX;

/// Max-heap of variables keyed by activity.
struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<u32>,
}

const NOT_IN_HEAP: u32 = u32::MAX;

impl VarHeap {
    fn new(n: usize) -> Self {
        VarHeap { heap: Vec::with_capacity(n), pos: vec![NOT_IN_HEAP; n] }
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v] != NOT_IN_HEAP
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v] = self.heap.len() as u32;
        self.heap.push(v as u32);
        self.up(self.heap.len() - 1, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("non-empty");
        self.pos[top as usize] = NOT_IN_HEAP;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.down(0, act);
        }
        Some(top as usize)
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.up(self.pos[v] as usize, act);
        }
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let pv = self.heap[parent];
            if act[pv as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = pv;
            self.pos[pv as usize] = i as u32;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as u32;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && act[self.heap[r] as usize] > act[self.heap[l] as usize] { r } else { l };
            let cv = self.heap[c];
            if act[cv as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = cv;
            self.pos[cv as usize] = i as u32;
            i = c;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as u32;
    }
}

/// A CDCL solver loaded with one CNF instance.
pub struct CdclSolver {
    num_vars: usize,
    clauses: Vec<Clause>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watcher>>,
    values: Vec<Value>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<L>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    clause_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    unsat: bool,
    max_learnts: f64,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
}

impl CdclSolver {
    pub fn new(cnf: &CnfInstance) -> Self {
        let n = cnf.num_vars as usize;
        let mut s = CdclSolver {
            num_vars: n,
            clauses: Vec::new(),
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            values: vec![Value::Unset; n],
            level: vec![0; n],
            reason: vec![NO_REASON; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; n],
            var_inc: 1.0,
            clause_inc: 1.0,
            heap: VarHeap::new(n),
            phase: vec![false; n],
            seen: vec![false; n],
            unsat: false,
            max_learnts: 0.0,
            conflicts: 0,
            decisions: 0,
            propagations: 0,
        };
        for v in 0..n {
            s.heap.insert(v, &s.activity);
        }
        for c in &cnf.clauses {
            if s.unsat {
                break;
            }
            s.add_input_clause(c);
        }
        s.max_learnts = (s.clauses.len() as f64 / 3.0).max(2000.0);
        s
    }

    fn value(&self, l: L) -> Value {
        match self.values[l.var()] {
            Value::Unset => Value::Unset,
            Value::True if l.negated() => Value::False,
            Value::False if l.negated() => Value::True,
            v => v,
        }
    }

    fn add_input_clause(&mut self, clause: &[i32]) {
        let mut lits: Vec<L> = clause.iter().map(|&l| L::from_dimacs(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0].var() == w[1].var()) {
            return;
        }
        // Only level-0 assignments exist while loading.
        if lits.iter().any(|&l| self.value(l) == Value::True) {
            return;
        }
        lits.retain(|&l| self.value(l) != Value::False);
        match lits.len() {
            0 => self.unsat = true,
            1 => {
                self.enqueue(lits[0], NO_REASON);
                if self.propagate().is_some() {
                    self.unsat = true;
                }
            }
            _ => {
                self.attach(lits, false, 0);
            }
        }
    }

    fn attach(&mut self, lits: Vec<L>, learnt: bool, lbd: u32) -> u32 {
        let id = self.clauses.len() as u32;
        self.watches[lits[0].idx()].push(Watcher { clause: id, blocker: lits[1] });
        self.watches[lits[1].idx()].push(Watcher { clause: id, blocker: lits[0] });
        self.clauses.push(Clause { lits, learnt, deleted: false, lbd, activity: 0.0 });
        if learnt {
            self.learnts.push(id);
        }
        id
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: L, reason: u32) {
        let v = l.var();
        self.values[v] = if l.negated() { Value::False } else { Value::True };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Unit propagation; returns a conflicting clause if any.
    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.propagations += 1;
            let false_lit = p.neg();
            let mut ws = core::mem::take(&mut self.watches[false_lit.idx()]);
            let mut i = 0;
            let mut j = 0;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == Value::True {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cid = w.clause as usize;
                if self.clauses[cid].deleted {
                    continue;
                }
                let lits = &mut self.clauses[cid].lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let first = lits[0];
                if first != w.blocker && self.value(first) == Value::True {
                    ws[j] = Watcher { clause: w.clause, blocker: first };
                    j += 1;
                    continue;
                }
                let mut moved = false;
                let lits = &mut self.clauses[cid].lits;
                for k in 2..lits.len() {
                    let l = lits[k];
                    let val = match self.values[l.var()] {
                        Value::Unset => Value::Unset,
                        Value::True if l.negated() => Value::False,
                        Value::False if l.negated() => Value::True,
                        v => v,
                    };
                    if val != Value::False {
                        lits.swap(1, k);
                        self.watches[lits[1].idx()].push(Watcher { clause: w.clause, blocker: first });
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = Watcher { clause: w.clause, blocker: first };
                j += 1;
                if self.value(first) == Value::False {
                    conflict = Some(w.clause);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                    self.qhead = self.trail.len();
                } else {
                    self.enqueue(first, w.clause);
                }
            }
            ws.truncate(j);
            self.watches[false_lit.idx()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v, &self.activity);
    }

    fn bump_clause(&mut self, c: usize) {
        if !self.clauses[c].learnt {
            return;
        }
        self.clauses[c].activity += self.clause_inc;
        if self.clauses[c].activity > 1e20 {
            for &id in &self.learnts {
                self.clauses[id as usize].activity *= 1e-20;
            }
            self.clause_inc *= 1e-20;
        }
    }

    /// First-UIP conflict analysis. Returns the learnt clause (asserting
    /// literal first) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<L>, u32) {
        let mut learnt = vec![L(0)];
        let mut path = 0;
        let mut p: Option<L> = None;
        let mut idx = self.trail.len();
        let dl = self.decision_level();
        loop {
            self.bump_clause(confl as usize);
            let start = usize::from(p.is_some());
            for k in start..self.clauses[confl as usize].lits.len() {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] >= dl {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var()] {
                    break;
                }
            }
            let lit = self.trail[idx];
            p = Some(lit);
            confl = self.reason[lit.var()];
            self.seen[lit.var()] = false;
            path -= 1;
            if path == 0 {
                break;
            }
        }
        learnt[0] = p.expect("conflict at positive level").neg();

        // Drop literals implied by the rest of the clause.
        let keep: Vec<bool> = (0..learnt.len())
            .map(|i| {
                if i == 0 {
                    return true;
                }
                let r = self.reason[learnt[i].var()];
                if r == NO_REASON {
                    return true;
                }
                self.clauses[r as usize].lits[1..].iter().any(|q| !self.seen[q.var()] && self.level[q.var()] > 0)
            })
            .collect();
        for l in &learnt[1..] {
            self.seen[l.var()] = false;
        }
        let mut out: Vec<L> = learnt.iter().zip(keep).filter(|(_, k)| *k).map(|(l, _)| *l).collect();

        let mut bt = 0;
        if out.len() > 1 {
            let mut max_i = 1;
            for i in 2..out.len() {
                if self.level[out[i].var()] > self.level[out[max_i].var()] {
                    max_i = i;
                }
            }
            out.swap(1, max_i);
            bt = self.level[out[1].var()];
        }
        (out, bt)
    }

    fn lbd(&mut self, lits: &[L]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|l| self.level[l.var()]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let target = self.trail_lim[lvl as usize];
        for i in (target..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var();
            self.phase[v] = !l.negated();
            self.values[v] = Value::Unset;
            self.reason[v] = NO_REASON;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(target);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = target;
    }

    fn locked(&self, id: u32) -> bool {
        let c = &self.clauses[id as usize];
        let l = c.lits[0];
        self.value(l) == Value::True && self.reason[l.var()] == id
    }

    fn reduce_db(&mut self) {
        let mut ids: Vec<u32> = self.learnts.iter().copied().filter(|&id| !self.clauses[id as usize].deleted).collect();
        ids.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            cb.lbd.cmp(&ca.lbd).then(ca.activity.partial_cmp(&cb.activity).unwrap_or(core::cmp::Ordering::Equal))
        });
        let remove = ids.len() / 2;
        let mut kept = Vec::with_capacity(ids.len());
        for (i, &id) in ids.iter().enumerate() {
            let c = &self.clauses[id as usize];
            if i < remove && c.lbd > 2 && c.lits.len() > 2 && !self.locked(id) {
                let c = &mut self.clauses[id as usize];
                c.deleted = true;
                c.lits = Vec::new();
            } else {
                kept.push(id);
            }
        }
        self.learnts = kept;
    }

    fn pick_branch(&mut self) -> Option<L> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.values[v] == Value::Unset {
                return Some(L((v as u32) << 1 | u32::from(!self.phase[v])));
            }
        }
        None
    }

    /// Runs the search. `interrupt` is polled every few hundred conflicts.
    pub fn solve(&mut self, interrupt: &dyn Fn() -> bool) -> SatResult {
        if self.unsat {
            return SatResult::Unsat;
        }
        if self.propagate().is_some() {
            return SatResult::Unsat;
        }
        let mut restart = 0u32;
        loop {
            let budget = 100 * luby(restart);
            restart += 1;
            let mut local = 0u64;
            loop {
                if let Some(confl) = self.propagate() {
                    self.conflicts += 1;
                    local += 1;
                    if self.decision_level() == 0 {
                        return SatResult::Unsat;
                    }
                    let (learnt, bt) = self.analyze(confl);
                    self.cancel_until(bt);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], NO_REASON);
                    } else {
                        let lbd = self.lbd(&learnt);
                        let first = learnt[0];
                        let id = self.attach(learnt, true, lbd);
                        self.bump_clause(id as usize);
                        self.enqueue(first, id);
                    }
                    self.var_inc /= 0.95;
                    self.clause_inc /= 0.999;
                    if self.conflicts % 256 == 0 && interrupt() {
                        self.cancel_until(0);
                        return SatResult::Interrupted;
                    }
                } else {
                    if local >= budget {
                        self.cancel_until(0);
                        break;
                    }
                    if self.learnts.len() as f64 >= self.max_learnts + self.trail.len() as f64 {
                        self.reduce_db();
                        self.max_learnts *= 1.1;
                    }
                    match self.pick_branch() {
                        None => {
                            let values = self.values.iter().map(|&v| v == Value::True).collect();
                            return SatResult::Sat(Model::new(values));
                        }
                        Some(l) => {
                            self.decisions += 1;
                            self.trail_lim.push(self.trail.len());
                            self.enqueue(l, NO_REASON);
                        }
                    }
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }
}

/// The Luby sequence 1 1 2 1 1 2 4 1 1 2 ... (0-based index).
fn luby(i: u32) -> u64 {
    let mut i = u64::from(i) + 1;
    loop {
        let mut k = 1;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if i == (1u64 << k) - 1 {
            return 1 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn luby_prefix() {
        let got: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(got, [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    /// Pigeonhole with `n + 1` pigeons and `n` holes is unsatisfiable.
    fn pigeonhole(n: i32) -> CnfInstance {
        let var = |p: i32, h: i32| p * n + h + 1;
        let mut cnf = CnfInstance::new(((n + 1) * n) as u32);
        for p in 0..=n {
            cnf.add_clause((0..n).map(|h| var(p, h)).collect());
        }
        for h in 0..n {
            for p in 0..=n {
                for q in p + 1..=n {
                    cnf.add_clause(vec![-var(p, h), -var(q, h)]);
                }
            }
        }
        cnf
    }

    #[test]
    fn pigeonhole_is_unsat() {
        for n in 1..=6 {
            assert_eq!(CdclSolver::new(&pigeonhole(n)).solve(&|| false), SatResult::Unsat, "n = {n}");
        }
    }

    #[test]
    fn model_satisfies_clauses() {
        // Pigeonhole with as many holes as pigeons is satisfiable.
        let n = 6;
        let mut cnf = pigeonhole(n);
        cnf.clauses.retain(|c| c.iter().all(|&l| l.unsigned_abs() as i32 <= n * n));
        match CdclSolver::new(&cnf).solve(&|| false) {
            SatResult::Sat(m) => assert!(m.satisfies(&cnf)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn interrupt_is_honoured() {
        assert_eq!(CdclSolver::new(&pigeonhole(9)).solve(&|| true), SatResult::Interrupted);
    }
}
