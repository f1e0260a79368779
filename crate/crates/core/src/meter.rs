//! Idealized time and memory accounting.
//!
//! Time is a sum of abstract operation costs, memory the maximum of the
//! snapshots taken. The unit of memory is one literal occurrence in a live
//! clause set. Costs: one per resolution, per subsumption comparison, per
//! backtracking node and per propagated literal; finding clauses through
//! the indexes is free.

use std::time::{Duration, Instant};

use crate::error::Error;
use crate::logic::Var;

/// Final or partial readings of a [`Meter`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Stats {
    pub time: u64,
    pub memory: u64,
}

/// Something an algorithm did, recorded when event logging is enabled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    /// A resolution on `pivot`.
    Resolved { pivot: Var },
    /// A closure round finished with this many clauses.
    Round { index: usize, clauses: usize },
    /// A variable was eliminated, leaving this many clauses.
    Eliminated { var: Var, clauses: usize },
    /// A backtracking node was entered at this depth (root is 0).
    Node { depth: usize },
}

#[derive(Debug, Clone, Default)]
pub struct Meter {
    time_total: u64,
    mem_peak: u64,
    mem_current: u64,
    events: Option<Vec<Event>>,
}

impl Meter {
    pub fn new() -> Meter {
        Meter::default()
    }

    /// A meter that also keeps an [`Event`] log.
    pub fn recording() -> Meter {
        Meter {
            events: Some(Vec::new()),
            ..Meter::default()
        }
    }

    pub fn tick(&mut self, cost: u64) {
        self.time_total += cost;
    }

    pub fn snapshot_memory(&mut self, live_cells: u64) {
        self.mem_current = live_cells;
        self.mem_peak = self.mem_peak.max(live_cells);
    }

    pub fn time_total(&self) -> u64 {
        self.time_total
    }

    pub fn mem_peak(&self) -> u64 {
        self.mem_peak
    }

    pub fn mem_current(&self) -> u64 {
        self.mem_current
    }

    pub fn stats(&self) -> Stats {
        Stats {
            time: self.time_total,
            memory: self.mem_peak,
        }
    }

    pub fn is_recording(&self) -> bool {
        self.events.is_some()
    }

    /// Logs an event if recording; `event` is not evaluated otherwise.
    pub fn record(&mut self, event: impl FnOnce() -> Event) {
        if let Some(log) = &mut self.events {
            log.push(event());
        }
    }

    pub fn events(&self) -> &[Event] {
        self.events.as_deref().unwrap_or_default()
    }

    /// Folds in a meter that ran concurrently: times add, peaks take the max.
    pub fn merge(&mut self, other: Meter) {
        self.time_total += other.time_total;
        self.mem_peak = self.mem_peak.max(other.mem_peak);
        if let (Some(log), Some(more)) = (&mut self.events, other.events) {
            log.extend(more);
        }
    }
}

/// Optional wall-clock limit, checked cooperatively by the algorithms.
#[derive(Debug, Clone, Copy, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Deadline {
        Deadline(None)
    }

    pub fn after(budget: Duration) -> Deadline {
        Deadline(Instant::now().checked_add(budget))
    }

    pub fn at(instant: Instant) -> Deadline {
        Deadline(Some(instant))
    }

    pub fn is_set(&self) -> bool {
        self.0.is_some()
    }

    pub fn check(&self, meter: &Meter) -> Result<(), Error> {
        match self.0 {
            Some(t) if Instant::now() >= t => Err(Error::Timeout(meter.stats())),
            _ => Ok(()),
        }
    }
}
