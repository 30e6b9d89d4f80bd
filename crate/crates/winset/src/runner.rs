//! Running learners on games, one at a time or over a suite.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Duration;

use winset_core::bench::{generate_benchmark, BenchmarkSpec};
use winset_core::game::RationalSafetyGame;
use winset_core::learn::{learn, LearnOptions, LearnResult, Learner, RpniLearner, SatLearner};

use crate::clock::InstantClock;
use crate::error::Error;
use crate::exec::backend_from_spec;
use crate::stats::StatsRow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LearnerKind {
    Sat,
    Rpni,
}

impl LearnerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LearnerKind::Sat => "sat",
            LearnerKind::Rpni => "rpni",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub timeout: Option<Duration>,
    /// SAT size cap.
    pub max_states: usize,
    /// `internal` or `exec:<program> [args..]`.
    pub solver: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { timeout: Some(Duration::from_secs(300)), max_states: 32, solver: "internal".into() }
    }
}

pub fn make_learner(kind: LearnerKind, cfg: &RunConfig) -> Result<Box<dyn Learner>, String> {
    let backend = backend_from_spec(&cfg.solver)?;
    Ok(match kind {
        LearnerKind::Sat => Box::new(SatLearner::new(backend, cfg.max_states)),
        LearnerKind::Rpni => Box::new(RpniLearner::new(backend)),
    })
}

/// Learns a winning set for `game` under a fresh wall clock.
pub fn run(game: &RationalSafetyGame, kind: LearnerKind, cfg: &RunConfig) -> Result<LearnResult, Error> {
    let mut learner = make_learner(kind, cfg).map_err(winset_core::Error::Solver)?;
    let opts = LearnOptions { timeout: cfg.timeout, ..LearnOptions::default() };
    Ok(learn(game, learner.as_mut(), &opts, &InstantClock::start())?)
}

/// Short name of a benchmark instance, e.g. `interval(1,100)`; parameters
/// appear in name order.
pub fn spec_label(spec: &BenchmarkSpec) -> String {
    if spec.params.is_empty() {
        return spec.name.clone();
    }
    let args: Vec<String> = spec.params.values().map(i64::to_string).collect();
    format!("{}({})", spec.name, args.join(","))
}

/// Runs every `(spec, learner)` cell on up to `jobs` threads; rows come back
/// in suite order.
pub fn run_suite(
    specs: &[BenchmarkSpec],
    kinds: &[LearnerKind],
    cfg: &RunConfig,
    jobs: usize,
) -> Result<Vec<StatsRow>, Error> {
    let games: Vec<RationalSafetyGame> = specs.iter().map(generate_benchmark).collect::<Result<_, _>>()?;
    let cells: Vec<(usize, LearnerKind)> =
        (0..specs.len()).flat_map(|i| kinds.iter().map(move |&k| (i, k))).collect();
    let results: Mutex<Vec<Option<Result<StatsRow, Error>>>> = Mutex::new((0..cells.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, cells.len().max(1)) {
            scope.spawn(|| loop {
                let c = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, kind)) = cells.get(c) else { break };
                let g = &games[i];
                let row = run(g, kind, cfg).map(|r| StatsRow::new(&spec_label(&specs[i]), g.size(), kind.as_str(), &r));
                results.lock().expect("no poisoned workers")[c] = Some(row);
            });
        }
    });
    results.into_inner().expect("no poisoned workers").into_iter().map(|r| r.expect("every cell ran")).collect()
}
