//! Per-run statistics as CSV rows.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use winset_core::learn::LearnResult;

use crate::error::Error;

/// Column names, in order.
pub const HEADER: [&str; 11] =
    ["game", "game_size", "learner", "time_s", "iterations", "dfa_size", "pos", "neg", "ex", "uni", "outcome"];

/// One `(game, learner)` run. `dfa_size` is empty unless solved.
#[derive(Clone, Debug, PartialEq)]
pub struct StatsRow {
    pub game: String,
    pub game_size: usize,
    pub learner: String,
    pub time_s: f64,
    pub iterations: usize,
    pub dfa_size: Option<usize>,
    pub pos: usize,
    pub neg: usize,
    pub ex: usize,
    pub uni: usize,
    pub outcome: String,
}

impl StatsRow {
    pub fn new(game: &str, game_size: usize, learner: &str, r: &LearnResult) -> Self {
        StatsRow {
            game: game.to_string(),
            game_size,
            learner: learner.to_string(),
            time_s: r.stats.wall_time.as_secs_f64(),
            iterations: r.stats.iterations,
            dfa_size: r.dfa.as_ref().map(|d| d.state_count()),
            pos: r.stats.pos,
            neg: r.stats.neg,
            ex: r.stats.ex,
            uni: r.stats.uni,
            outcome: r.outcome.as_str().to_string(),
        }
    }

    fn record(&self) -> [String; 11] {
        [
            self.game.clone(),
            self.game_size.to_string(),
            self.learner.clone(),
            format!("{:.6}", self.time_s),
            self.iterations.to_string(),
            self.dfa_size.map_or_else(String::new, |n| n.to_string()),
            self.pos.to_string(),
            self.neg.to_string(),
            self.ex.to_string(),
            self.uni.to_string(),
            self.outcome.clone(),
        ]
    }
}

/// Writes a header and all rows.
pub fn write_csv<W: Write>(out: W, rows: &[StatsRow]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

/// Appends `row` to the file at `path`, writing the header first if the file
/// is new or empty.
pub fn append_row(path: &Path, row: &StatsRow) -> Result<(), Error> {
    let file = OpenOptions::new().create(true).append(true).open(path).map_err(|e| Error::io(path, e))?;
    let empty = file.metadata().map_err(|e| Error::io(path, e))?.len() == 0;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if empty {
        w.write_record(HEADER)?;
    }
    w.write_record(row.record())?;
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}
