use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use winset::dot::dfa_to_dot;
use winset::format::{parse_dfa_for, parse_game, serialize_dfa, serialize_game};
use winset::runner::{run, run_suite, LearnerKind, RunConfig};
use winset::stats::{append_row, write_csv, StatsRow};
use winset::Error;
use winset_core::automata::{enumerate_finite, is_finite};
use winset_core::bench::{generate_benchmark, paper_suite, scalability_suite, BenchmarkSpec};
use winset_core::learn::Outcome;
use winset_core::sat::{CdclSolver, CnfInstance};
use winset_core::teacher::{Teacher, TeacherResponse};

const EXIT_SOLVED: u8 = 0;
const EXIT_UNSOLVED: u8 = 1;
const EXIT_CONTRADICTION: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "winset", version, about = "Learn winning sets of rational safety games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LearnerArg {
    Sat,
    Rpni,
}

impl From<LearnerArg> for LearnerKind {
    fn from(l: LearnerArg) -> Self {
        match l {
            LearnerArg::Sat => LearnerKind::Sat,
            LearnerArg::Rpni => LearnerKind::Rpni,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LearnersArg {
    Sat,
    Rpni,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Aut,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
    Scalability,
}

#[derive(clap::Args)]
struct SolverOpts {
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 300.0)]
    timeout: f64,
    /// Largest DFA the SAT learner tries.
    #[arg(long, default_value_t = 32)]
    max_states: usize,
    /// `internal` or `exec:<path>`; the program gets the CNF file as its last argument.
    #[arg(long, default_value = "internal")]
    solver: String,
}

impl SolverOpts {
    fn config(&self) -> RunConfig {
        RunConfig {
            timeout: Some(Duration::from_secs_f64(self.timeout.max(0.0))),
            max_states: self.max_states,
            solver: self.solver.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Learn a winning set for a game file.
    Solve {
        game: PathBuf,
        #[arg(long, value_enum, default_value = "sat")]
        learner: LearnerArg,
        #[command(flatten)]
        solver: SolverOpts,
        /// Where to write the learned DFA (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV file to append a statistics row to.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Accepted for compatibility; every component is deterministic.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "aut")]
        emit: Emit,
    },
    /// Check that a DFA accepts a winning set of a game.
    Verify { game: PathBuf, dfa: PathBuf },
    /// Write a benchmark game.
    Gen {
        family: String,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        kprime: Option<i64>,
        #[arg(long)]
        margin: Option<i64>,
        #[arg(long)]
        width: Option<i64>,
        #[arg(long)]
        distance: Option<i64>,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both learners over a benchmark suite and print CSV.
    Bench {
        #[arg(long, value_enum, default_value = "paper")]
        suite: Suite,
        /// Upper interval bounds for the scalability suite; give the flag
        /// without values for an empty suite.
        #[arg(long, value_delimiter = ',', num_args = 0.., default_values_t = [10, 50, 100])]
        kprime_list: Vec<i64>,
        #[arg(long, value_enum, default_value = "both")]
        learner: LearnersArg,
        #[command(flatten)]
        solver: SolverOpts,
        /// Parallel worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a DIMACS file with the built-in solver.
    #[command(hide = true)]
    DimacsSolve { cnf: PathBuf },
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e)),
    }
}

/// Exit code for an error: bad input versus a fault of our own.
fn error_code(e: &Error) -> u8 {
    use winset_core::Error as C;
    match e {
        Error::Syntax { .. } | Error::Io { .. } => EXIT_INPUT,
        Error::Core(
            C::InvalidAlphabet(_)
            | C::UnknownToken(_)
            | C::InvalidWord { .. }
            | C::AlphabetMismatch { .. }
            | C::InvalidAutomaton(_)
            | C::InvariantViolation { .. }
            | C::UnknownFamily(_)
            | C::InvalidParams(_)
            | C::InfiniteConsequent(_),
        ) => EXIT_INPUT,
        _ => EXIT_INTERNAL,
    }
}

fn game_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

#[allow(clippy::too_many_arguments)]
fn solve(
    game_path: &Path,
    learner: LearnerArg,
    solver: &SolverOpts,
    out: Option<&Path>,
    stats: Option<&Path>,
    emit: Emit,
) -> Result<u8, Error> {
    let game = parse_game(&read(game_path)?)?;
    let kind = LearnerKind::from(learner);
    let result = run(&game, kind, &solver.config())?;
    let row = StatsRow::new(&game_name(game_path), game.size(), kind.as_str(), &result);
    if let Some(p) = stats {
        append_row(p, &row)?;
    }
    eprintln!(
        "{}: {} after {} iterations in {:.3} s (pos {}, neg {}, ex {}, uni {})",
        row.game, row.outcome, row.iterations, row.time_s, row.pos, row.neg, row.ex, row.uni
    );
    Ok(match result.outcome {
        Outcome::Solved => {
            let dfa = result.dfa.expect("solved runs carry a DFA");
            let text = match emit {
                Emit::Aut => serialize_dfa(game.alphabet(), &dfa),
                Emit::Dot => dfa_to_dot(game.alphabet(), &dfa),
            };
            write_or_print(out, &text)?;
            EXIT_SOLVED
        }
        Outcome::Contradiction => {
            eprintln!("no winning set contains the initial vertices; Player 1 may win");
            EXIT_CONTRADICTION
        }
        Outcome::Timeout | Outcome::CapExceeded => EXIT_UNSOLVED,
    })
}

fn verify(game_path: &Path, dfa_path: &Path) -> Result<u8, Error> {
    let game = parse_game(&read(game_path)?)?;
    let dfa = parse_dfa_for(&read(dfa_path)?, game.alphabet())?;
    let sigma = game.alphabet();
    match Teacher::new(&game).query(&dfa)? {
        TeacherResponse::Yes => {
            println!("yes: the automaton accepts a winning set");
            Ok(EXIT_SOLVED)
        }
        TeacherResponse::Cex(c) => {
            println!("{} counterexample: {}", c.kind(), sigma.render(c.word()));
            if let Some(a) = c.consequent() {
                if is_finite(a) {
                    let succ: Vec<String> = enumerate_finite(a)?.iter().map(|w| sigma.render(w)).collect();
                    println!("successors: {}", succ.join(", "));
                } else {
                    println!("successors: infinitely many");
                }
            }
            Ok(EXIT_UNSOLVED)
        }
    }
}

fn gen(family: &str, params: &[(&str, Option<i64>)], out: Option<&Path>) -> Result<u8, Error> {
    let spec = params
        .iter()
        .filter_map(|&(k, v)| v.map(|v| (k, v)))
        .fold(BenchmarkSpec::new(family), |s, (k, v)| s.with(k, v));
    let game = generate_benchmark(&spec)?;
    write_or_print(out, &serialize_game(&game))?;
    Ok(EXIT_SOLVED)
}

fn bench(
    suite: Suite,
    kprimes: &[i64],
    learner: LearnersArg,
    solver: &SolverOpts,
    jobs: usize,
    out: Option<&Path>,
) -> Result<u8, Error> {
    let specs = match suite {
        Suite::Paper => paper_suite(),
        Suite::Scalability => scalability_suite(kprimes),
    };
    let kinds: &[LearnerKind] = match learner {
        LearnersArg::Sat => &[LearnerKind::Sat],
        LearnersArg::Rpni => &[LearnerKind::Rpni],
        LearnersArg::Both => &[LearnerKind::Sat, LearnerKind::Rpni],
    };
    let rows = run_suite(&specs, kinds, &solver.config(), jobs)?;
    match out {
        Some(p) => write_csv(fs::File::create(p).map_err(|e| Error::io(p, e))?, &rows)?,
        None => write_csv(io::stdout().lock(), &rows)?,
    }
    Ok(EXIT_SOLVED)
}

fn dimacs_solve(path: &Path) -> Result<u8, Error> {
    let cnf = CnfInstance::from_dimacs(&read(path)?)?;
    match CdclSolver::new(&cnf).solve(&|| false) {
        winset_core::sat::SatResult::Sat(m) => {
            let lits: Vec<String> =
                (1..=cnf.num_vars).map(|v| if m.value(v) { v.to_string() } else { format!("-{v}") }).collect();
            println!("SAT\n{} 0", lits.join(" "));
        }
        _ => println!("UNSAT"),
    }
    Ok(EXIT_SOLVED)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_SOLVED });
        }
    };
    let result = match &cli.command {
        Command::Solve { game, learner, solver, out, stats, seed: _, emit } => {
            solve(game, *learner, solver, out.as_deref(), stats.as_deref(), *emit)
        }
        Command::Verify { game, dfa } => verify(game, dfa),
        Command::Gen { family, k, kprime, margin, width, distance, bound, out } => gen(
            family,
            &[("k", *k), ("kprime", *kprime), ("margin", *margin), ("width", *width), ("distance", *distance), ("bound", *bound)],
            out.as_deref(),
        ),
        Command::Bench { suite, kprime_list, learner, solver, jobs, out } => {
            bench(*suite, kprime_list, *learner, solver, *jobs, out.as_deref())
        }
        Command::DimacsSolve { cnf } => dimacs_solve(cnf),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
