//! Generators for the benchmark game families.
//!
//! Grid games tag each vertex with the player to move (`p` for Player 0,
//! `q` for Player 1) followed by a pair `(x, y)` of naturals written as
//! `b^min(x,y)` and then `x^(x-y)` or `y^(y-x)`. Evasion and follow use the
//! same encoding for the absolute displacement between the two robots.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::automata::{Nfa, State};
use crate::error::Error;
use crate::game::RationalSafetyGame;
use crate::relations::{Label, Transducer};
use crate::word::{Alphabet, Symbol};

/// Names accepted by [`generate_benchmark`].
pub const FAMILIES: &[&str] =
    &["diagonal", "box", "solitary-box", "evasion", "follow", "program-repair", "interval", "halfline"];

/// A benchmark family name with integer parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BenchmarkSpec {
    pub name: String,
    pub params: BTreeMap<String, i64>,
}

impl BenchmarkSpec {
    pub fn new(name: &str) -> Self {
        BenchmarkSpec { name: name.to_string(), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn interval(k: i64, kprime: i64) -> Self {
        BenchmarkSpec::new("interval").with("k", k).with("kprime", kprime)
    }

    fn param(&self, key: &str, default: Option<i64>, min: i64) -> Result<usize, Error> {
        let v = match (self.params.get(key), default) {
            (Some(&v), _) => v,
            (None, Some(d)) => d,
            (None, None) => return Err(Error::InvalidParams(alloc::format!("missing parameter `{key}`"))),
        };
        if v < min {
            return Err(Error::InvalidParams(alloc::format!("`{key}` must be at least {min}, got {v}")));
        }
        usize::try_from(v).map_err(|_| Error::InvalidParams(alloc::format!("`{key}` out of range")))
    }

    fn only(&self, allowed: &[&str]) -> Result<(), Error> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidParams(alloc::format!("unknown parameter `{k}` for `{}`", self.name))),
            None => Ok(()),
        }
    }
}

pub fn generate_benchmark(spec: &BenchmarkSpec) -> Result<RationalSafetyGame, Error> {
    match spec.name.as_str() {
        "diagonal" => {
            spec.only(&["margin"])?;
            let m = spec.param("margin", Some(2), 0)?;
            let all = [Op::Inc(Y), Op::Dec(Y), Op::Stay];
            let env = [Op::Inc(X), Op::Dec(X), Op::Stay];
            let safe = diagonal_band(m);
            let initial = Grid::body_nfa(P, |g, s| {
                g.b.edge(s, B, s);
                g.b.accept(s);
            });
            grid_game(&all, &env, safe, initial)
        }
        "box" | "solitary-box" => {
            spec.only(&["width"])?;
            let width = spec.param("width", Some(3), 2)?;
            let solitary = spec.name == "solitary-box";
            let (sys, env): (&[Op], &[Op]) = if solitary {
                (&[Op::Inc(X), Op::Dec(X), Op::Inc(Y), Op::Dec(Y)], &[Op::Stay])
            } else {
                (&[Op::Inc(Y), Op::Dec(Y), Op::Stay], &[Op::Inc(X), Op::Dec(X), Op::Stay])
            };
            // Initial vertices: the row y = 1, Player 0 to move.
            let initial = Grid::body_nfa(P, |g, s| {
                let (t, u) = (g.b.state(), g.b.state());
                g.b.edge(s, B, t);
                g.b.edge(t, X, t);
                g.b.edge(s, Y, u);
                g.b.accept(t);
                g.b.accept(u);
            });
            grid_game(sys, env, stripe(width), initial)
        }
        "evasion" => {
            spec.only(&[])?;
            let moves = [Op::Inc(X), Op::Dec(X), Op::Inc(Y), Op::Dec(Y), Op::Stay];
            // Safe: the robots occupy different cells.
            let safe = Grid::tagged_nfa(&[P, Q], |g, s| {
                let t = g.b.state();
                for a in [B, X, Y] {
                    g.b.edge(s, a, t);
                }
                g.any_body_from(t);
            });
            // Initial: adjacent robots, Player 0 to move.
            let initial = Grid::body_nfa(P, |g, s| {
                let t = g.b.state();
                g.b.edge(s, X, t);
                g.b.edge(s, Y, t);
                g.b.accept(t);
            });
            grid_game(&moves, &moves, safe, initial)
        }
        "follow" => {
            spec.only(&["distance"])?;
            let d = spec.param("distance", Some(2), 1)?;
            let moves = [Op::Inc(X), Op::Dec(X), Op::Inc(Y), Op::Dec(Y), Op::Stay];
            let initial = Grid::body_nfa(P, |g, s| g.b.accept(s));
            grid_game(&moves, &moves, manhattan_ball(d), initial)
        }
        "program-repair" => {
            spec.only(&["bound"])?;
            let bound = spec.param("bound", Some(3), 1)?;
            program_repair(bound)
        }
        "interval" => {
            spec.only(&["k", "kprime"])?;
            let k = spec.param("k", None, 1)?;
            let kp = spec.param("kprime", None, 1)?;
            if k >= kp {
                return Err(Error::InvalidParams(alloc::format!("need k < kprime, got k = {k}, kprime = {kp}")));
            }
            robot_line(k, Some(kp))
        }
        "halfline" => {
            spec.only(&["k"])?;
            let k = spec.param("k", Some(2), 0)?;
            robot_line(k, None)
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

struct NfaBuilder {
    count: usize,
    accepting: Vec<State>,
    trans: Vec<(State, Symbol, State)>,
}

impl NfaBuilder {
    fn new() -> Self {
        NfaBuilder { count: 1, accepting: Vec::new(), trans: Vec::new() }
    }

    fn state(&mut self) -> State {
        self.count += 1;
        self.count - 1
    }

    fn edge(&mut self, p: State, a: Symbol, q: State) {
        self.trans.push((p, a, q));
    }

    fn accept(&mut self, q: State) {
        self.accepting.push(q);
    }

    fn build(self, k: usize) -> Nfa {
        Nfa::new(k, self.count, 0, self.accepting, self.trans).expect("generator emits valid automata")
    }
}

struct TransducerBuilder {
    count: usize,
    accepting: Vec<State>,
    trans: Vec<(State, Label, Label, State)>,
}

impl TransducerBuilder {
    fn new() -> Self {
        TransducerBuilder { count: 1, accepting: Vec::new(), trans: Vec::new() }
    }

    fn state(&mut self) -> State {
        self.count += 1;
        self.count - 1
    }

    fn edge(&mut self, p: State, a: Label, b: Label, q: State) {
        self.trans.push((p, a, b, q));
    }

    fn copy(&mut self, p: State, a: Symbol, q: State) {
        self.edge(p, Some(a), Some(a), q);
    }

    fn accept(&mut self, q: State) {
        self.accepting.push(q);
    }

    fn build(self, k: usize) -> Transducer {
        Transducer::new(k, self.count, 0, self.accepting, self.trans).expect("generator emits valid transducers")
    }
}

// Grid alphabet: p q b x y
const P: Symbol = 0;
const Q: Symbol = 1;
const B: Symbol = 2;
const X: Symbol = 3;
const Y: Symbol = 4;

fn grid_alphabet() -> Alphabet {
    Alphabet::new(["p", "q", "b", "x", "y"]).expect("static alphabet")
}

#[derive(Clone, Copy)]
enum Op {
    Inc(Symbol),
    Dec(Symbol),
    Stay,
}

fn other(axis: Symbol) -> Symbol {
    if axis == X {
        Y
    } else {
        X
    }
}

struct Grid {
    b: NfaBuilder,
}

impl Grid {
    /// NFA reading `tag` and then whatever `body` builds from the state after the tag.
    fn body_nfa(tag: Symbol, body: impl FnOnce(&mut Grid, State)) -> Nfa {
        Grid::tagged_nfa(&[tag], body)
    }

    fn tagged_nfa(tags: &[Symbol], body: impl FnOnce(&mut Grid, State)) -> Nfa {
        let mut g = Grid { b: NfaBuilder::new() };
        let s = g.b.state();
        for &t in tags {
            g.b.edge(0, t, s);
        }
        body(&mut g, s);
        g.b.build(5)
    }

    /// Accepts every well-formed body `b* (x* | y*)` read from `s`.
    fn any_body_from(&mut self, s: State) {
        let (bx, by) = (self.b.state(), self.b.state());
        self.b.edge(s, B, s);
        self.b.edge(s, X, bx);
        self.b.edge(bx, X, bx);
        self.b.edge(s, Y, by);
        self.b.edge(by, Y, by);
        for q in [s, bx, by] {
            self.b.accept(q);
        }
    }

    /// All well-formed vertices with the given tag.
    fn vertices(tag: Symbol) -> Nfa {
        Grid::body_nfa(tag, |g, s| g.any_body_from(s))
    }
}

/// Bodies with `|x - y| <= m`.
fn diagonal_band(m: usize) -> Nfa {
    Grid::tagged_nfa(&[P, Q], |g, s| {
        g.b.edge(s, B, s);
        g.b.accept(s);
        for axis in [X, Y] {
            let mut prev = s;
            for _ in 0..m {
                let t = g.b.state();
                g.b.edge(prev, axis, t);
                g.b.accept(t);
                prev = t;
            }
        }
    })
}

/// Bodies with `y < width`.
fn stripe(width: usize) -> Nfa {
    Grid::tagged_nfa(&[P, Q], |g, s| {
        // After i b's (i = min(x, y)) we may still read x's freely or at most
        // width - 1 - i y's.
        let mut prev = s;
        for i in 0..width {
            g.b.accept(prev);
            let xs = g.b.state();
            g.b.edge(prev, X, xs);
            g.b.edge(xs, X, xs);
            g.b.accept(xs);
            let mut ys = prev;
            for _ in i + 1..width {
                let t = g.b.state();
                g.b.edge(ys, Y, t);
                g.b.accept(t);
                ys = t;
            }
            if i + 1 < width {
                let t = g.b.state();
                g.b.edge(prev, B, t);
                prev = t;
            }
        }
    })
}

/// Bodies with `x + y <= d`.
fn manhattan_ball(d: usize) -> Nfa {
    Grid::tagged_nfa(&[P, Q], |g, s| {
        let mut prev = s;
        let mut used = 0;
        loop {
            g.b.accept(prev);
            for axis in [X, Y] {
                let mut t0 = prev;
                for _ in used + 1..=d {
                    let t = g.b.state();
                    g.b.edge(t0, axis, t);
                    g.b.accept(t);
                    t0 = t;
                }
            }
            if used + 2 > d {
                break;
            }
            let t = g.b.state();
            g.b.edge(prev, B, t);
            prev = t;
            used += 2;
        }
    })
}

/// Transducer branch rewriting the body according to `op` after mapping
/// tag `from` to tag `to`.
fn add_move(t: &mut TransducerBuilder, from: Symbol, to: Symbol, op: Op) {
    let c = t.state();
    t.edge(0, Some(from), Some(to), c);
    t.copy(c, B, c);
    match op {
        Op::Stay => {
            t.accept(c);
            for a in [X, Y] {
                let s = t.state();
                t.copy(c, a, s);
                t.copy(s, a, s);
                t.accept(s);
            }
        }
        Op::Inc(a) => {
            // b^m a^d -> b^m a^(d+1)
            let s = t.state();
            t.edge(c, None, Some(a), s);
            t.copy(s, a, s);
            t.accept(s);
            // b^m o^d -> b^(m+1) o^(d-1) for d >= 1
            let o = other(a);
            let r = t.state();
            t.edge(c, Some(o), Some(B), r);
            t.copy(r, o, r);
            t.accept(r);
        }
        Op::Dec(a) => {
            // b^m a^d -> b^m a^(d-1) for d >= 1
            let s = t.state();
            t.edge(c, Some(a), None, s);
            t.copy(s, a, s);
            t.accept(s);
            // b^m o^d -> b^(m-1) o^(d+1) for m >= 1
            let o = other(a);
            let r = t.state();
            t.edge(c, Some(B), Some(o), r);
            t.copy(r, o, r);
            t.accept(r);
        }
    }
}

fn grid_game(sys: &[Op], env: &[Op], safe: Nfa, initial: Nfa) -> Result<RationalSafetyGame, Error> {
    let mut t = TransducerBuilder::new();
    for &op in sys {
        add_move(&mut t, P, Q, op);
    }
    for &op in env {
        add_move(&mut t, Q, P, op);
    }
    RationalSafetyGame::new(grid_alphabet(), Grid::vertices(P), Grid::vertices(Q), t.build(5), safe, initial)
}

// Line alphabet: s e l
const S: Symbol = 0;
const E: Symbol = 1;
const L: Symbol = 2;

/// The robot on a half-infinite line: Player 0 (`s`) moves right or stays,
/// Player 1 (`e`) moves left or stays. Safe positions are `[k, kp]`, or
/// `[k, ∞)` without an upper bound.
fn robot_line(k: usize, kp: Option<usize>) -> Result<RationalSafetyGame, Error> {
    let sigma = Alphabet::new(["s", "e", "l"]).expect("static alphabet");
    let player = |tag| Nfa::new(3, 2, 0, [1], [(0, tag, 1), (1, L, 1)]).expect("static automaton");

    let mut t = TransducerBuilder::new();
    let (r, rl) = (t.state(), t.state());
    t.edge(0, Some(S), Some(E), r);
    t.copy(r, L, r);
    t.edge(r, None, Some(L), rl);
    let (lft, ll) = (t.state(), t.state());
    t.edge(0, Some(E), Some(S), lft);
    t.copy(lft, L, lft);
    t.edge(lft, Some(L), None, ll);
    for q in [r, rl, lft, ll] {
        t.accept(q);
    }
    let edges = t.build(3);

    // Chain of l's counting up to `kp` (or `k` followed by a loop).
    let counter = |tags: &[Symbol], hi: Option<usize>| {
        let mut b = NfaBuilder::new();
        let mut prev = b.state();
        for &tag in tags {
            b.edge(0, tag, prev);
        }
        let top = hi.unwrap_or(k);
        for i in 0..=top {
            if i >= k {
                b.accept(prev);
            }
            if i < top {
                let next = b.state();
                b.edge(prev, L, next);
                prev = next;
            }
        }
        if hi.is_none() {
            b.edge(prev, L, prev);
        }
        b.build(3)
    };
    let safe = counter(&[S, E], kp);
    let initial = if kp.is_some() { counter(&[S], Some(k)) } else { counter(&[S], None) };
    RationalSafetyGame::new(sigma, player(S), player(E), edges, safe, initial)
}

/// A loop `while true { x += 1 or 2 (environment); x -= c (hole, c in 0..=2); assert x <= bound }`
/// with `x` in unary. `q` marks the environment location, `p` the hole.
fn program_repair(bound: usize) -> Result<RationalSafetyGame, Error> {
    let sigma = Alphabet::new(["p", "q", "l"]).expect("static alphabet");
    let (pp, qq, l) = (0, 1, 2);
    let player = |tag| Nfa::new(3, 2, 0, [1], [(0, tag, 1), (1, l, 1)]).expect("static automaton");

    let mut t = TransducerBuilder::new();
    // Environment: append one or two l's.
    let (c, s1, s2) = (t.state(), t.state(), t.state());
    t.edge(0, Some(qq), Some(pp), c);
    t.copy(c, l, c);
    t.edge(c, None, Some(l), s1);
    t.edge(s1, None, Some(l), s2);
    t.accept(s1);
    t.accept(s2);
    // Hole: drop zero, one or two trailing l's.
    let (h, d1, d2) = (t.state(), t.state(), t.state());
    t.edge(0, Some(pp), Some(qq), h);
    t.copy(h, l, h);
    t.edge(h, Some(l), None, d1);
    t.edge(d1, Some(l), None, d2);
    for q in [h, d1, d2] {
        t.accept(q);
    }
    let edges = t.build(3);

    // Safe: every hole vertex, environment vertices with x <= bound.
    let mut b = NfaBuilder::new();
    let hp = b.state();
    b.edge(0, pp, hp);
    b.edge(hp, l, hp);
    b.accept(hp);
    let mut prev = b.state();
    b.edge(0, qq, prev);
    b.accept(prev);
    for _ in 0..bound {
        let next = b.state();
        b.edge(prev, l, next);
        b.accept(next);
        prev = next;
    }
    let safe = b.build(3);
    let initial = Nfa::new(3, 3, 0, [1, 2], [(0, qq, 1), (1, l, 2)]).expect("static automaton");
    RationalSafetyGame::new(sigma, player(pp), player(qq), edges, safe, initial)
}

/// The benchmark suite used by `bench --suite paper`.
pub fn paper_suite() -> Vec<BenchmarkSpec> {
    ["diagonal", "box", "solitary-box", "evasion", "follow", "program-repair"]
        .iter()
        .map(|n| BenchmarkSpec::new(n))
        .collect()
}

/// `interval(1, k')` for each requested `k'`.
pub fn scalability_suite(kprimes: &[i64]) -> Vec<BenchmarkSpec> {
    kprimes.iter().map(|&kp| BenchmarkSpec::interval(1, kp)).collect()
}
