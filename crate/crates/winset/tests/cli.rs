mod oracle;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use oracle::maximal_winning_region;
use tempfile::TempDir;
use winset::format::{parse_dfa_for, parse_game, serialize_dfa, serialize_game};
use winset::stats::HEADER;
use winset_core::automata::{determinize, enumerate_finite, Nfa};
use winset_core::bench::{generate_benchmark, BenchmarkSpec};
use winset_core::game::{finite_restriction, RationalSafetyGame};
use winset_core::teacher::{Teacher, TeacherResponse};

fn winset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_winset")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Workspace(TempDir);

impl Workspace {
    fn new() -> Self {
        Workspace(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn halfline() -> RationalSafetyGame {
    generate_benchmark(&BenchmarkSpec::new("halfline").with("k", 2)).unwrap()
}

const SLL_ELLL: &str = "\
[alphabet]
s e l

[automaton]
states: 8
initial: 0
accepting: 3 7
0 s 1
0 e 4
1 l 2
2 l 3
3 l 3
4 l 5
5 l 6
6 l 7
7 l 7
";

#[test]
fn solve_then_verify_round_trips() {
    let ws = Workspace::new();
    let game = ws.file("interval_k2.game", &serialize_game(&halfline()));
    for learner in ["sat", "rpni"] {
        let (out, stats) = (ws.path(&format!("{learner}.aut")), ws.path("stats.csv"));
        let o = winset(&["solve", p(&game), "--learner", learner, "--out", p(&out), "--stats", p(&stats)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let v = winset(&["verify", p(&game), p(&out)]);
        assert_eq!(code(&v), 0, "{}", stdout(&v));
    }
    let mut r = csv::Reader::from_path(ws.path("stats.csv")).unwrap();
    assert!(r.headers().unwrap().iter().eq(HEADER));
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    for (row, learner) in rows.iter().zip(["sat", "rpni"]) {
        assert_eq!((&row[0], &row[2], &row[10]), ("interval_k2", learner, "solved"));
        assert!(row[6].parse::<usize>().unwrap() >= 1);
    }
}

#[test]
fn external_solver_and_dot_output() {
    let ws = Workspace::new();
    let game = ws.file("k2.game", &serialize_game(&halfline()));
    let solver = format!("exec:{} dimacs-solve", env!("CARGO_BIN_EXE_winset"));
    let out = ws.path("k2.aut");
    let o = winset(&["solve", p(&game), "--solver", &solver, "--out", p(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(code(&winset(&["verify", p(&game), p(&out)])), 0);

    let o = winset(&["solve", p(&game), "--emit", "dot"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("digraph"));

    let o = winset(&["solve", p(&game), "--solver", "exec:/nonexistent/solver"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn verify_reports_the_first_violation() {
    let ws = Workspace::new();
    let game = ws.file("k2.game", &serialize_game(&halfline()));
    let good = ws.file("good.aut", SLL_ELLL);
    assert_eq!(code(&winset(&["verify", p(&game), p(&good)])), 0);

    let s_only = SLL_ELLL.replace("accepting: 3 7", "accepting: 3");
    let o = winset(&["verify", p(&game), p(&ws.file("s.aut", &s_only))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("existential counterexample: s l l\n"), "{}", stdout(&o));
    assert!(stdout(&o).contains("successors: e l l, e l l l"));

    let empty = "[alphabet]\ns e l\n\n[automaton]\nstates: 1\ninitial: 0\naccepting:\n";
    let o = winset(&["verify", p(&game), p(&ws.file("empty.aut", empty))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("positive counterexample: s l l"), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_with_three() {
    let ws = Workspace::new();
    let text = serialize_game(&halfline());
    // v1 gains every `s l*` word, which v0 already owns.
    let bad = text.replacen("[v1]\nstates: 2\ninitial: 0\naccepting: 1\n0 e 1", "[v1]\nstates: 2\ninitial: 0\naccepting: 1\n0 e 1\n0 s 1", 1);
    assert_ne!(bad, text);
    let o = winset(&["solve", p(&ws.file("bad.game", &bad))]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("witness: s"), "{}", stderr(&o));

    let o = winset(&["solve", p(&ws.file("typo.game", &text.replacen("0 s 1", "0 q 1", 1)))]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("line 8, column 3"), "{}", stderr(&o));

    assert_eq!(code(&winset(&["solve", p(&ws.path("missing.game"))])), 3);
    assert_eq!(code(&winset(&["gen", "interval", "--k", "5", "--kprime", "3"])), 3);
    assert_eq!(code(&winset(&["gen", "tic-tac-toe"])), 3);
    assert_eq!(code(&winset(&[])), 3);
    assert_eq!(code(&winset(&["solve", "x.game", "--learner", "lstar"])), 3);
    assert_eq!(code(&winset(&["--help"])), 0);
}

#[test]
fn generated_games_parse() {
    for family in ["diagonal", "box", "solitary-box", "evasion", "follow", "program-repair"] {
        let o = winset(&["gen", family]);
        assert_eq!(code(&o), 0, "{family}");
        assert!(parse_game(&stdout(&o)).is_ok(), "{family}");
    }
}

/// The generated interval game admits the winning set computed by a fixed
/// point on its finite part.
#[test]
fn interval_game_accepts_the_oracle_winning_set() {
    let ws = Workspace::new();
    let game = ws.path("interval.game");
    assert_eq!(code(&winset(&["gen", "interval", "--k", "1", "--kprime", "10", "--out", p(&game)])), 0);
    let g = parse_game(&std::fs::read_to_string(&game).unwrap()).unwrap();
    let k = g.alphabet().len();
    let longest = enumerate_finite(g.safe()).unwrap().iter().map(|w| w.len()).max().unwrap();
    let x = finite_restriction(&g, longest + 2).unwrap();
    let win = maximal_winning_region(&x);
    let words: Vec<_> = x.vertices.iter().zip(&win).filter(|(_, &b)| b).map(|(w, _)| w).collect();
    let d = determinize(&Nfa::from_words(k, words));
    let aut = ws.file("win.aut", &serialize_dfa(g.alphabet(), &d));
    let o = winset(&["verify", p(&game), p(&aut)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let back = parse_dfa_for(&std::fs::read_to_string(&aut).unwrap(), g.alphabet()).unwrap();
    assert_eq!(Teacher::new(&g).query(&back).unwrap(), TeacherResponse::Yes);
}

#[test]
fn follow_with_rpni_may_time_out() {
    let ws = Workspace::new();
    let game = ws.path("follow.game");
    assert_eq!(code(&winset(&["gen", "follow", "--out", p(&game)])), 0);
    let o = winset(&["solve", p(&game), "--learner", "rpni", "--timeout", "5"]);
    assert!([0, 1].contains(&code(&o)), "{}", stderr(&o));
}

#[test]
fn bench_rows_are_deterministic() {
    let o = winset(&["bench", "--suite", "scalability", "--kprime-list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), format!("{}\n", HEADER.join(",")));

    let strip_time = |text: &str| -> Vec<Vec<String>> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        assert!(r.headers().unwrap().iter().eq(HEADER));
        r.records().map(|row| row.unwrap().iter().enumerate().filter(|&(i, _)| i != 3).map(|(_, c)| c.to_string()).collect()).collect()
    };
    let args = ["bench", "--suite", "paper", "--timeout", "60", "--jobs", "4"];
    let first = strip_time(&stdout(&winset(&args)));
    let second = strip_time(&stdout(&winset(&args)));
    assert_eq!(first.len(), 12);
    assert_eq!(first, second);
    let learners: Vec<&str> = first.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(learners, ["sat", "rpni"].repeat(6));
}
