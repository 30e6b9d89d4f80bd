//! Propositional formulas, CNF conversion and satisfiability backends.

mod solver;

pub use solver::CdclSolver;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::Error;

/// A propositional variable, numbered from 1 as in DIMACS.
pub type Var = u32;

/// A DIMACS literal: `v` or `-v`.
pub type Lit = i32;

/// Propositional formula over DIMACS literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Lit(Lit),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(v: Var) -> Formula {
        Formula::Lit(v as Lit)
    }

    pub fn neg(v: Var) -> Formula {
        Formula::Lit(-(v as Lit))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Disjunction of literals.
    pub fn clause<I: IntoIterator<Item = Lit>>(lits: I) -> Formula {
        Formula::Or(lits.into_iter().map(Formula::Lit).collect())
    }

    /// Number of nodes in the formula tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Lit(_) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(v) | Formula::Or(v) => 1 + v.iter().map(Formula::size).sum::<usize>(),
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Largest variable mentioned.
    pub fn max_var(&self) -> Var {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Lit(l) => l.unsigned_abs(),
            Formula::Not(f) => f.max_var(),
            Formula::And(v) | Formula::Or(v) => v.iter().map(Formula::max_var).max().unwrap_or(0),
            Formula::Implies(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Evaluates under `assignment(v)`.
    pub fn eval(&self, assignment: &dyn Fn(Var) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Lit(l) => assignment(l.unsigned_abs()) == (*l > 0),
            Formula::Not(f) => !f.eval(assignment),
            Formula::And(v) => v.iter().all(|f| f.eval(assignment)),
            Formula::Or(v) => v.iter().any(|f| f.eval(assignment)),
            Formula::Implies(a, b) => !a.eval(assignment) || b.eval(assignment),
        }
    }
}

/// Negation normal form: only literals, constants, `And` and `Or`.
enum Nnf {
    True,
    False,
    Lit(Lit),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(f: &Formula, positive: bool) -> Nnf {
    match (f, positive) {
        (Formula::True, true) | (Formula::False, false) => Nnf::True,
        (Formula::True, false) | (Formula::False, true) => Nnf::False,
        (Formula::Lit(l), true) => Nnf::Lit(*l),
        (Formula::Lit(l), false) => Nnf::Lit(-*l),
        (Formula::Not(g), p) => nnf(g, !p),
        (Formula::And(v), true) | (Formula::Or(v), false) => Nnf::And(v.iter().map(|g| nnf(g, positive)).collect()),
        (Formula::Or(v), true) | (Formula::And(v), false) => Nnf::Or(v.iter().map(|g| nnf(g, positive)).collect()),
        (Formula::Implies(a, b), true) => Nnf::Or(vec![nnf(a, false), nnf(b, true)]),
        (Formula::Implies(a, b), false) => Nnf::And(vec![nnf(a, true), nnf(b, false)]),
    }
}

/// Clause list over DIMACS literals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfInstance {
    pub num_vars: Var,
    pub clauses: Vec<Vec<Lit>>,
}

impl CnfInstance {
    pub fn new(num_vars: Var) -> Self {
        CnfInstance { num_vars, clauses: Vec::new() }
    }

    pub fn add_clause(&mut self, clause: Vec<Lit>) {
        for l in &clause {
            self.num_vars = self.num_vars.max(l.unsigned_abs());
        }
        self.clauses.push(clause);
    }

    pub fn fresh_var(&mut self) -> Var {
        self.num_vars += 1;
        self.num_vars
    }

    /// DIMACS CNF text.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS CNF text. Comment lines start with `c`.
    pub fn from_dimacs(text: &str) -> Result<Self, Error> {
        let mut header: Option<(Var, usize)> = None;
        let mut cnf = CnfInstance::new(0);
        let mut current = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::Solver(alloc::format!("line {}: malformed header", no + 1)));
                }
                let v = parts[2].parse().map_err(|_| Error::Solver(alloc::format!("line {}: bad count", no + 1)))?;
                let c = parts[3].parse().map_err(|_| Error::Solver(alloc::format!("line {}: bad count", no + 1)))?;
                header = Some((v, c));
                continue;
            }
            let (vars, _) = header.ok_or_else(|| Error::Solver("clause before header".into()))?;
            for tok in line.split_whitespace() {
                let l: Lit = tok.parse().map_err(|_| Error::Solver(alloc::format!("line {}: bad literal `{tok}`", no + 1)))?;
                if l == 0 {
                    cnf.clauses.push(core::mem::take(&mut current));
                } else if l.unsigned_abs() > vars {
                    return Err(Error::Solver(alloc::format!("line {}: literal {l} exceeds header", no + 1)));
                } else {
                    current.push(l);
                }
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::Solver("missing header".into()))?;
        if !current.is_empty() {
            cnf.clauses.push(current);
        }
        if cnf.clauses.len() != count {
            return Err(Error::Solver(alloc::format!("header announces {count} clauses, found {}", cnf.clauses.len())));
        }
        cnf.num_vars = vars;
        Ok(cnf)
    }
}

/// Converts `f` to an equisatisfiable CNF. Variables of `f` keep their
/// numbers; auxiliary variables start above `f.max_var()` and `min_vars`.
///
/// Top-level conjunctions and clause-shaped conjuncts are emitted directly;
/// other subformulas get a Plaisted–Greenbaum definition (one direction only,
/// which suffices since every subformula occurs positively after NNF).
pub fn to_cnf(f: &Formula, min_vars: Var) -> CnfInstance {
    let mut cnf = CnfInstance::new(f.max_var().max(min_vars));
    let root = nnf(f, true);
    let mut stack = vec![root];
    while let Some(g) = stack.pop() {
        match g {
            Nnf::True => {}
            Nnf::And(v) => stack.extend(v),
            other => {
                let mut lits = Vec::new();
                if collect_clause(other, &mut lits, &mut cnf) {
                    cnf.clauses.push(lits);
                }
            }
        }
    }
    cnf
}

/// Flattens a disjunction into `lits`; returns false if it is trivially true.
fn collect_clause(g: Nnf, lits: &mut Vec<Lit>, cnf: &mut CnfInstance) -> bool {
    match g {
        Nnf::True => false,
        Nnf::False => true,
        Nnf::Lit(l) => {
            lits.push(l);
            true
        }
        Nnf::Or(v) => {
            let mut keep = true;
            for h in v {
                keep &= collect_clause(h, lits, cnf);
            }
            keep
        }
        Nnf::And(v) => {
            let t = define(Nnf::And(v), cnf);
            lits.push(t);
            true
        }
    }
}

/// Returns a literal `t` with clauses `t → g`.
fn define(g: Nnf, cnf: &mut CnfInstance) -> Lit {
    match g {
        Nnf::Lit(l) => l,
        Nnf::True => {
            let t = cnf.fresh_var() as Lit;
            cnf.clauses.push(vec![t]);
            t
        }
        Nnf::False => {
            let t = cnf.fresh_var() as Lit;
            cnf.clauses.push(vec![-t]);
            t
        }
        Nnf::And(v) => {
            let t = cnf.fresh_var() as Lit;
            for h in v {
                match h {
                    Nnf::True => {}
                    Nnf::Or(_) => {
                        let mut lits = vec![-t];
                        if collect_clause(h, &mut lits, cnf) {
                            cnf.clauses.push(lits);
                        }
                    }
                    other => {
                        let l = define(other, cnf);
                        cnf.clauses.push(vec![-t, l]);
                    }
                }
            }
            t
        }
        Nnf::Or(v) => {
            let t = cnf.fresh_var() as Lit;
            let mut lits = vec![-t];
            let mut keep = true;
            for h in v {
                keep &= collect_clause(h, &mut lits, cnf);
            }
            if keep {
                cnf.clauses.push(lits);
            }
            t
        }
    }
}

/// Satisfying assignment indexed by variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    /// `values[i]` is the value of variable `i + 1`.
    pub fn new(values: Vec<bool>) -> Self {
        Model { values }
    }

    pub fn value(&self, v: Var) -> bool {
        self.values.get(v as usize - 1).copied().unwrap_or(false)
    }

    pub fn lit(&self, l: Lit) -> bool {
        self.value(l.unsigned_abs()) == (l > 0)
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn satisfies(&self, cnf: &CnfInstance) -> bool {
        cnf.clauses.iter().all(|c| c.iter().any(|&l| self.lit(l)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat(Model),
    Unsat,
    Interrupted,
}

/// A satisfiability procedure. `interrupt` is polled periodically; once it
/// returns true the backend should give up with [`SatResult::Interrupted`].
pub trait SatBackend {
    fn solve(&mut self, cnf: &CnfInstance, interrupt: &dyn Fn() -> bool) -> Result<SatResult, Error>;
}

/// The built-in CDCL solver as a backend.
#[derive(Clone, Copy, Debug, Default)]
pub struct InternalBackend;

impl SatBackend for InternalBackend {
    fn solve(&mut self, cnf: &CnfInstance, interrupt: &dyn Fn() -> bool) -> Result<SatResult, Error> {
        Ok(CdclSolver::new(cnf).solve(interrupt))
    }
}

/// Solves `f` and returns a model, `None` if unsatisfiable.
pub fn solve_formula(f: &Formula, backend: &mut dyn SatBackend) -> Result<Option<Model>, Error> {
    match backend.solve(&to_cnf(f, 0), &|| false)? {
        SatResult::Sat(m) => Ok(Some(m)),
        SatResult::Unsat => Ok(None),
        SatResult::Interrupted => Err(Error::Solver("interrupted".into())),
    }
}
