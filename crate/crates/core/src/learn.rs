//! The learning loop: conjecture, query, extend the sample, repeat.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::time::Duration;

use crate::automata::{is_finite, Dfa};
use crate::error::Error;
use crate::game::RationalSafetyGame;
use crate::rpni::merge_learn;
use crate::sample::{check_contradiction, ContradictionStatus, Sample};
use crate::sat::{InternalBackend, SatBackend};
use crate::sat_learner::minimal_consistent_dfa;
use crate::teacher::{Counterexample, Teacher, TeacherResponse};

/// Monotonic time source; the core crate has no clock of its own.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// A clock that never advances, for runs without a timeout.
#[derive(Clone, Copy, Debug, Default)]
pub struct FrozenClock;

impl Clock for FrozenClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnOptions {
    pub timeout: Option<Duration>,
    /// Stop with [`Outcome::Contradiction`] as soon as the sample admits no
    /// consistent DFA (decidable while all consequents are finite).
    pub detect_contradiction: bool,
}

impl Default for LearnOptions {
    fn default() -> Self {
        LearnOptions { timeout: None, detect_contradiction: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Solved,
    Timeout,
    /// No winning set contains the initial vertices.
    Contradiction,
    CapExceeded,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Solved => "solved",
            Outcome::Timeout => "timeout",
            Outcome::Contradiction => "contradiction",
            Outcome::CapExceeded => "cap-exceeded",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LearnStats {
    pub iterations: usize,
    pub pos: usize,
    pub neg: usize,
    pub ex: usize,
    pub uni: usize,
    pub learner_time: Duration,
    pub teacher_time: Duration,
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct LearnResult {
    pub outcome: Outcome,
    /// The verified winning set when solved.
    pub dfa: Option<Dfa>,
    pub stats: LearnStats,
    pub sample: Sample,
    /// Every conjecture in order; the last one is `dfa` when solved.
    pub conjectures: Vec<Dfa>,
    /// The counterexample answered to each rejected conjecture.
    pub history: Vec<Counterexample>,
}

/// Produces a conjecture consistent with the sample.
pub trait Learner {
    fn name(&self) -> &'static str;

    fn conjecture(&mut self, s: &Sample, alphabet_len: usize, interrupt: &dyn Fn() -> bool) -> Result<Dfa, Error>;

    /// Whether implications must have finite consequents.
    fn needs_finite_consequents(&self) -> bool {
        false
    }
}

/// Minimal consistent DFAs by SAT.
pub struct SatLearner {
    backend: Box<dyn SatBackend>,
    n_cap: usize,
    last_n: usize,
}

impl SatLearner {
    pub fn new(backend: Box<dyn SatBackend>, n_cap: usize) -> Self {
        SatLearner { backend, n_cap, last_n: 1 }
    }
}

impl Default for SatLearner {
    fn default() -> Self {
        SatLearner::new(Box::new(InternalBackend), 32)
    }
}

impl Learner for SatLearner {
    fn name(&self) -> &'static str {
        "sat"
    }

    /// Samples only grow, so the least consistent size never shrinks and the
    /// search resumes from the previous size.
    fn conjecture(&mut self, s: &Sample, alphabet_len: usize, interrupt: &dyn Fn() -> bool) -> Result<Dfa, Error> {
        let d = minimal_consistent_dfa(s, alphabet_len, self.last_n, self.n_cap, self.backend.as_mut(), interrupt)?;
        self.last_n = d.state_count();
        Ok(d)
    }
}

/// State merging seeded by a positive closure.
pub struct RpniLearner {
    backend: Box<dyn SatBackend>,
}

impl RpniLearner {
    pub fn new(backend: Box<dyn SatBackend>) -> Self {
        RpniLearner { backend }
    }
}

impl Default for RpniLearner {
    fn default() -> Self {
        RpniLearner::new(Box::new(InternalBackend))
    }
}

impl Learner for RpniLearner {
    fn name(&self) -> &'static str {
        "rpni"
    }

    fn conjecture(&mut self, s: &Sample, alphabet_len: usize, _interrupt: &dyn Fn() -> bool) -> Result<Dfa, Error> {
        merge_learn(s, alphabet_len, self.backend.as_mut(), &mut |_| {})
    }

    fn needs_finite_consequents(&self) -> bool {
        true
    }
}

/// Runs the loop until the teacher accepts, the sample becomes contradictory,
/// the SAT size cap is hit or time runs out.
pub fn learn(
    game: &RationalSafetyGame,
    learner: &mut dyn Learner,
    opts: &LearnOptions,
    clock: &dyn Clock,
) -> Result<LearnResult, Error> {
    let start = clock.elapsed();
    let timed_out = || opts.timeout.is_some_and(|t| clock.elapsed().saturating_sub(start) >= t);
    let teacher = Teacher::new(game);
    let k = game.alphabet().len();
    let mut result = LearnResult {
        outcome: Outcome::Timeout,
        dfa: None,
        stats: LearnStats::default(),
        sample: Sample::new(),
        conjectures: Vec::new(),
        history: Vec::new(),
    };
    let outcome = loop {
        if timed_out() {
            break Outcome::Timeout;
        }
        result.stats.iterations += 1;
        let t0 = clock.elapsed();
        let conj = learner.conjecture(&result.sample, k, &timed_out);
        result.stats.learner_time += clock.elapsed().saturating_sub(t0);
        let conj = match conj {
            Ok(d) => d,
            Err(Error::Interrupted) => break Outcome::Timeout,
            Err(Error::CapExceeded { .. }) => break Outcome::CapExceeded,
            Err(Error::Contradiction) => break Outcome::Contradiction,
            Err(e) => return Err(e),
        };
        result.conjectures.push(conj.clone());
        if timed_out() {
            break Outcome::Timeout;
        }
        let t0 = clock.elapsed();
        let answer = teacher.query(&conj);
        result.stats.teacher_time += clock.elapsed().saturating_sub(t0);
        match answer? {
            TeacherResponse::Yes => {
                result.dfa = Some(conj);
                break Outcome::Solved;
            }
            TeacherResponse::Cex(c) => {
                if learner.needs_finite_consequents() {
                    if let Some(a) = c.consequent() {
                        if !is_finite(a) {
                            return Err(Error::InfiniteConsequent(game.alphabet().render(c.word())));
                        }
                    }
                }
                result.sample.insert(c.clone());
                result.history.push(c);
                if opts.detect_contradiction
                    && check_contradiction(&result.sample, &mut InternalBackend)? == ContradictionStatus::Contradictory
                {
                    break Outcome::Contradiction;
                }
            }
        }
    };
    result.outcome = outcome;
    let (pos, neg, ex, uni) = result.sample.sizes();
    result.stats.pos = pos;
    result.stats.neg = neg;
    result.stats.ex = ex;
    result.stats.uni = uni;
    result.stats.wall_time = clock.elapsed().saturating_sub(start);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate_benchmark, BenchmarkSpec};

    #[test]
    fn example_run_matches_the_worked_trace() {
        let g = generate_benchmark(&BenchmarkSpec::new("halfline").with("k", 2)).unwrap();
        let r = learn(&g, &mut SatLearner::default(), &LearnOptions::default(), &FrozenClock).unwrap();
        assert_eq!(r.outcome, Outcome::Solved);
        assert_eq!(r.conjectures[0].state_count(), 1);
        assert_eq!(r.history[0], Counterexample::Positive(crate::Word::from([0, 2, 2])));
        assert_eq!(r.stats.iterations, r.history.len() + 1);
        assert_eq!(Teacher::new(&g).query(r.dfa.as_ref().unwrap()).unwrap(), TeacherResponse::Yes);
    }

    #[test]
    fn both_learners_solve_small_interval() {
        let g = generate_benchmark(&BenchmarkSpec::interval(1, 4)).unwrap();
        for learner in [&mut SatLearner::default() as &mut dyn Learner, &mut RpniLearner::default()] {
            let r = learn(&g, learner, &LearnOptions::default(), &FrozenClock).unwrap();
            assert_eq!(r.outcome, Outcome::Solved, "{}", learner.name());
        }
    }

    #[test]
    fn zero_timeout_stops_immediately() {
        let g = generate_benchmark(&BenchmarkSpec::interval(1, 4)).unwrap();
        let opts = LearnOptions { timeout: Some(Duration::ZERO), ..LearnOptions::default() };
        let r = learn(&g, &mut SatLearner::default(), &opts, &FrozenClock).unwrap();
        assert_eq!(r.outcome, Outcome::Timeout);
        assert_eq!(r.stats.iterations, 0);
    }
}
