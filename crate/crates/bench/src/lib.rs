//! Runs the forgetting algorithms over a grid of random 3-CNF instances and
//! stores one CSV record per run.
//!
//! ```no_run
//! use forget_bench::{run_grid, GridSpec, InProcessRunner};
//!
//! let spec = GridSpec { vars: 3..=5, reps: 2, ..GridSpec::default() };
//! let mut sink = csv::Writer::from_path("results.csv").unwrap();
//! let summary = run_grid(&spec, &InProcessRunner, &mut sink).unwrap();
//! println!("{} runs, {} timeouts", summary.records, summary.timeouts);
//! ```

mod grid;
mod record;
mod runner;
mod summary;

pub use grid::{derive_seed, GridPoint, GridSpec, InvalidGrid};
pub use record::{read_records, BenchRecord, RecordSink, CSV_HEADER};
pub use runner::{InProcessRunner, RunOutcome, Runner, SubprocessRunner};
pub use summary::{fraction_bucket, summarize_timeouts, Tally, TimeoutSummary, BUCKETS};

use std::error::Error as StdError;

/// Counts over a finished grid.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GridSummary {
    pub records: usize,
    pub timeouts: usize,
    /// Runs that neither finished nor timed out.
    pub failures: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Grid(#[from] InvalidGrid),
    #[error("writing a record: {0}")]
    Sink(#[source] Box<dyn StdError + Send + Sync>),
}

/// Runs every grid point and repetition, writing one record per algorithm
/// run to `sink`.
pub fn run_grid(
    spec: &GridSpec,
    runner: &dyn Runner,
    sink: &mut dyn RecordSink,
) -> Result<GridSummary, BenchError> {
    run_grid_with(spec, runner, sink, |_, _, _| {})
}

/// Like [`run_grid`], calling `inspect` after each grid point with the input
/// formula and the outcomes of all algorithms on it.
pub fn run_grid_with(
    spec: &GridSpec,
    runner: &dyn Runner,
    sink: &mut dyn RecordSink,
    mut inspect: impl FnMut(&GridPoint, &forget_core::Formula, &[RunOutcome]),
) -> Result<GridSummary, BenchError> {
    spec.validate()?;
    let mut summary = GridSummary::default();
    for point in spec.points() {
        let formula = point.formula();
        let forget = point.forget_set();
        let outcomes: Vec<RunOutcome> = spec
            .algorithms
            .iter()
            .map(|&alg| runner.run(alg, &point, &formula, &forget, spec.timeout))
            .collect();
        for outcome in &outcomes {
            sink.write(&outcome.record).map_err(BenchError::Sink)?;
            summary.records += 1;
            if outcome.record.timed_out {
                summary.timeouts += 1;
            } else if outcome.output.is_none() {
                summary.failures += 1;
            }
        }
        inspect(&point, &formula, &outcomes);
    }
    sink.flush().map_err(BenchError::Sink)?;
    Ok(summary)
}
