//! File formats, external solvers, statistics and the command-line driver
//! around [`winset_core`].

pub mod clock;
pub mod dot;
pub mod error;
pub mod exec;
pub mod format;
pub mod runner;
pub mod stats;

pub use error::Error;
