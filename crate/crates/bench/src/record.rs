use std::error::Error as StdError;
use std::io;

use forget_core::Algorithm;
use serde::{Deserialize, Serialize};

/// Column order of the results file.
pub const CSV_HEADER: &str = "algorithm,vars,forget_vars,clauses,seed,real_time_s,real_mem_kb,\
self_time,self_mem,output_clauses,output_literals,timed_out";

/// One algorithm run. Absent values are written as empty fields: the
/// output size after a timeout, and everything measured after a crash.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub vars: usize,
    pub forget_vars: usize,
    pub clauses: usize,
    pub seed: u64,
    pub real_time_s: Option<f64>,
    pub real_mem_kb: Option<u64>,
    pub self_time: Option<u64>,
    pub self_mem: Option<u64>,
    pub output_clauses: Option<usize>,
    pub output_literals: Option<usize>,
    pub timed_out: bool,
}

impl BenchRecord {
    pub fn algorithm(&self) -> Option<Algorithm> {
        self.algorithm.parse().ok()
    }

    /// Forgotten share of the variables.
    pub fn forget_fraction(&self) -> f64 {
        self.forget_vars as f64 / self.vars as f64
    }
}

/// Where [`run_grid`](crate::run_grid) puts its records.
pub trait RecordSink {
    fn write(&mut self, record: &BenchRecord) -> Result<(), Box<dyn StdError + Send + Sync>>;

    fn flush(&mut self) -> Result<(), Box<dyn StdError + Send + Sync>> {
        Ok(())
    }
}

impl<W: io::Write> RecordSink for csv::Writer<W> {
    fn write(&mut self, record: &BenchRecord) -> Result<(), Box<dyn StdError + Send + Sync>> {
        Ok(self.serialize(record)?)
    }

    fn flush(&mut self) -> Result<(), Box<dyn StdError + Send + Sync>> {
        Ok(csv::Writer::flush(self)?)
    }
}

impl RecordSink for Vec<BenchRecord> {
    fn write(&mut self, record: &BenchRecord) -> Result<(), Box<dyn StdError + Send + Sync>> {
        self.push(record.clone());
        Ok(())
    }
}

pub fn read_records(reader: impl io::Read) -> csv::Result<Vec<BenchRecord>> {
    csv::Reader::from_reader(reader).deserialize().collect()
}
