use std::time::{Duration, Instant};

use winset_core::learn::Clock;

/// Wall-clock time since construction.
#[derive(Clone, Copy, Debug)]
pub struct InstantClock(Instant);

impl InstantClock {
    pub fn start() -> Self {
        InstantClock(Instant::now())
    }
}

impl Clock for InstantClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}
