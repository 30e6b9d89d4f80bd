//! External SAT solvers speaking DIMACS.
//!
//! The solver is run as `program [args..] <cnf-file>` and must print either
//! `SAT` followed by a model line of signed integers, or `UNSAT`. The
//! competition style (`s SATISFIABLE`, `v ...` lines) is accepted too.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::thread;
use std::time::Duration;

use winset_core::sat::{CnfInstance, InternalBackend, Model, SatBackend, SatResult};
use winset_core::Error as CoreError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExecBackend {
    pub program: PathBuf,
    pub args: Vec<String>,
}

impl ExecBackend {
    pub fn new(program: impl Into<PathBuf>) -> Self {
        ExecBackend { program: program.into(), args: Vec::new() }
    }

    pub fn with_args(mut self, args: impl IntoIterator<Item = String>) -> Self {
        self.args.extend(args);
        self
    }
}

fn solver_error(msg: impl std::fmt::Display) -> CoreError {
    CoreError::Solver(msg.to_string())
}

impl SatBackend for ExecBackend {
    fn solve(&mut self, cnf: &CnfInstance, interrupt: &dyn Fn() -> bool) -> Result<SatResult, CoreError> {
        let mut file = tempfile::Builder::new().suffix(".cnf").tempfile().map_err(solver_error)?;
        file.write_all(cnf.to_dimacs().as_bytes()).map_err(solver_error)?;
        file.flush().map_err(solver_error)?;
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .arg(file.path())
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| solver_error(format!("{}: {e}", self.program.display())))?;
        let mut stdout = child.stdout.take().expect("stdout is piped");
        let reader = thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });
        loop {
            if child.try_wait().map_err(solver_error)?.is_some() {
                break;
            }
            if interrupt() {
                let _ = child.kill();
                let _ = child.wait();
                return Ok(SatResult::Interrupted);
            }
            thread::sleep(Duration::from_millis(5));
        }
        let output = reader.join().map_err(|_| solver_error("reader thread panicked"))?.map_err(solver_error)?;
        parse_output(&output, cnf.num_vars as usize)
    }
}

/// Reads a verdict and, for satisfiable instances, the model.
pub fn parse_output(text: &str, num_vars: usize) -> Result<SatResult, CoreError> {
    let mut verdict = None;
    let mut values = vec![false; num_vars];
    let mut terminated = false;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('c')) {
        let line = line.strip_prefix("s ").unwrap_or(line);
        match line {
            "SAT" | "SATISFIABLE" => verdict = Some(true),
            "UNSAT" | "UNSATISFIABLE" => verdict = Some(false),
            _ => {
                let body = line.strip_prefix('v').unwrap_or(line);
                for tok in body.split_whitespace() {
                    let l: i64 = tok.parse().map_err(|_| solver_error(format!("malformed model token `{tok}`")))?;
                    if l == 0 {
                        terminated = true;
                        continue;
                    }
                    let v = l.unsigned_abs() as usize;
                    if v > num_vars {
                        return Err(solver_error(format!("model mentions variable {v} beyond {num_vars}")));
                    }
                    values[v - 1] = l > 0;
                }
            }
        }
    }
    match verdict {
        Some(true) if terminated || num_vars == 0 => Ok(SatResult::Sat(Model::new(values))),
        Some(true) => Err(solver_error("model line missing or not terminated by 0")),
        Some(false) => Ok(SatResult::Unsat),
        None => Err(solver_error("solver printed no verdict")),
    }
}

/// `internal` or `exec:<program> [args..]`.
pub fn backend_from_spec(spec: &str) -> Result<Box<dyn SatBackend + Send>, String> {
    if spec == "internal" {
        return Ok(Box::new(InternalBackend));
    }
    let Some(cmd) = spec.strip_prefix("exec:") else {
        return Err(format!("unknown solver `{spec}`, expected `internal` or `exec:<path>`"));
    };
    let mut parts = cmd.split_whitespace();
    let program = parts.next().ok_or("missing program after `exec:`")?;
    Ok(Box::new(ExecBackend::new(program).with_args(parts.map(str::to_string))))
}
