use std::io::{Read, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use forget_core::{
    parse_formula, serialize_formula, Algorithm, Deadline, Error, ForgetOptions, Formula, Meter,
    Stats, VarSet,
};

use crate::grid::GridPoint;
use crate::record::BenchRecord;

/// A finished run: its record, and the output formula when there is one.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub record: BenchRecord,
    pub output: Option<Formula>,
}

pub trait Runner {
    fn run(
        &self,
        algorithm: Algorithm,
        point: &GridPoint,
        formula: &Formula,
        forget: &VarSet,
        timeout: Duration,
    ) -> RunOutcome;
}

fn blank(algorithm: Algorithm, point: &GridPoint) -> BenchRecord {
    BenchRecord {
        algorithm: algorithm.name().to_owned(),
        vars: point.vars,
        forget_vars: point.forget,
        clauses: point.clauses,
        seed: point.seed,
        real_time_s: None,
        real_mem_kb: None,
        self_time: None,
        self_mem: None,
        output_clauses: None,
        output_literals: None,
        timed_out: false,
    }
}

fn finished(mut record: BenchRecord, output: Formula, stats: Stats) -> RunOutcome {
    record.self_time = Some(stats.time);
    record.self_mem = Some(stats.memory);
    record.output_clauses = Some(output.len());
    record.output_literals = Some(output.literal_count());
    RunOutcome {
        record,
        output: Some(output),
    }
}

fn timed_out(mut record: BenchRecord, partial: Stats) -> RunOutcome {
    record.timed_out = true;
    record.self_time = Some(partial.time);
    record.self_mem = Some(partial.memory);
    RunOutcome {
        record,
        output: None,
    }
}

/// Runs the algorithm in this process. Real memory is the process's peak
/// resident set so far, which never decreases: it is an upper bound for the
/// run, and only meaningful for the first large run of a process.
#[derive(Debug, Clone, Copy, Default)]
pub struct InProcessRunner;

impl Runner for InProcessRunner {
    fn run(
        &self,
        algorithm: Algorithm,
        point: &GridPoint,
        formula: &Formula,
        forget: &VarSet,
        timeout: Duration,
    ) -> RunOutcome {
        let mut record = blank(algorithm, point);
        let mut meter = Meter::new();
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(|| {
            algorithm.forget(
                formula,
                forget,
                &ForgetOptions::default(),
                &mut meter,
                Deadline::after(timeout),
            )
        }));
        let elapsed = start.elapsed().as_secs_f64();
        match result {
            Ok(Ok(output)) => {
                record.real_time_s = Some(elapsed);
                record.real_mem_kb = peak_rss_kb();
                finished(record, output, meter.stats())
            }
            Ok(Err(Error::Timeout(partial))) => {
                record.real_time_s = Some(elapsed);
                record.real_mem_kb = peak_rss_kb();
                timed_out(record, partial)
            }
            // contract violations and panics leave a record with nothing measured
            Ok(Err(_)) | Err(_) => RunOutcome {
                record,
                output: None,
            },
        }
    }
}

#[cfg(unix)]
fn peak_rss_kb() -> Option<u64> {
    let mut usage = std::mem::MaybeUninit::<libc::rusage>::zeroed();
    // SAFETY: getrusage only writes into the struct we hand it.
    let rc = unsafe { libc::getrusage(libc::RUSAGE_SELF, usage.as_mut_ptr()) };
    if rc != 0 {
        return None;
    }
    // SAFETY: initialised by the successful call above.
    let usage = unsafe { usage.assume_init() };
    Some(maxrss_kb(usage.ru_maxrss))
}

#[cfg(not(unix))]
fn peak_rss_kb() -> Option<u64> {
    None
}

// Linux reports kilobytes, macOS bytes.
#[cfg(unix)]
fn maxrss_kb(raw: libc::c_long) -> u64 {
    let raw = raw.max(0) as u64;
    if cfg!(target_os = "macos") {
        raw / 1024
    } else {
        raw
    }
}

/// Runs each algorithm in a fresh `forget` process, so the real memory is
/// that run's own peak. `program` is the path of the `forget` binary.
#[derive(Debug, Clone)]
pub struct SubprocessRunner {
    pub program: PathBuf,
}

/// Exit status the `forget` binary uses for an exceeded timeout.
const EXIT_TIMEOUT: i32 = 4;

struct ChildReport {
    stdout: String,
    exit: Option<i32>,
    maxrss_kb: Option<u64>,
}

impl SubprocessRunner {
    fn spawn(&self, algorithm: Algorithm, forget: &VarSet, input: &str, timeout: Duration) -> std::io::Result<ChildReport> {
        let letters: String = forget.iter().map(|v| v.to_string()).collect();
        let mut child = Command::new(&self.program)
            .arg("forget")
            .args(["--algorithm", algorithm.name()])
            .arg(format!("--forget={letters}"))
            .args(["--timeout", &timeout.as_secs_f64().to_string()])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()?;
        // the child reads all of stdin before writing anything
        child.stdin.take().expect("piped").write_all(input.as_bytes())?;
        let mut stdout = String::new();
        child.stdout.take().expect("piped").read_to_string(&mut stdout)?;
        let (exit, maxrss_kb) = reap(child)?;
        Ok(ChildReport {
            stdout,
            exit,
            maxrss_kb,
        })
    }
}

#[cfg(unix)]
fn reap(child: std::process::Child) -> std::io::Result<(Option<i32>, Option<u64>)> {
    let pid = child.id() as libc::pid_t;
    let mut status = 0;
    let mut usage = std::mem::MaybeUninit::<libc::rusage>::zeroed();
    // SAFETY: pid is our unreaped child; status and usage are valid for writes.
    let rc = unsafe { libc::wait4(pid, &mut status, 0, usage.as_mut_ptr()) };
    if rc < 0 {
        return Err(std::io::Error::last_os_error());
    }
    // SAFETY: wait4 succeeded and filled the struct.
    let usage = unsafe { usage.assume_init() };
    let exit = libc::WIFEXITED(status).then(|| libc::WEXITSTATUS(status));
    Ok((exit, Some(maxrss_kb(usage.ru_maxrss))))
}

#[cfg(not(unix))]
fn reap(mut child: std::process::Child) -> std::io::Result<(Option<i32>, Option<u64>)> {
    Ok((child.wait()?.code(), None))
}

/// Splits the binary's stdout into the result formula and its meters.
fn parse_output(stdout: &str) -> Option<(Formula, Stats)> {
    let mut clauses = String::new();
    let (mut time, mut memory) = (None, None);
    for line in stdout.lines() {
        if let Some(t) = line.strip_prefix("#T=") {
            time = t.parse().ok();
        } else if let Some(m) = line.strip_prefix("#M=") {
            memory = m.parse().ok();
        } else if !line.starts_with('#') {
            clauses.push_str(line);
            clauses.push('\n');
        }
    }
    let formula = parse_formula(&clauses).ok()?;
    Some((formula, Stats { time: time?, memory: memory? }))
}

impl Runner for SubprocessRunner {
    fn run(
        &self,
        algorithm: Algorithm,
        point: &GridPoint,
        formula: &Formula,
        forget: &VarSet,
        timeout: Duration,
    ) -> RunOutcome {
        let mut record = blank(algorithm, point);
        let start = Instant::now();
        let report = self.spawn(algorithm, forget, &serialize_formula(formula), timeout);
        let elapsed = start.elapsed().as_secs_f64();
        let Ok(report) = report else {
            return RunOutcome { record, output: None };
        };
        let parsed = parse_output(&report.stdout);
        match (report.exit, parsed) {
            (Some(0), Some((output, stats))) => {
                record.real_time_s = Some(elapsed);
                record.real_mem_kb = report.maxrss_kb;
                finished(record, output, stats)
            }
            (Some(EXIT_TIMEOUT), Some((_, partial))) => {
                record.real_time_s = Some(elapsed);
                record.real_mem_kb = report.maxrss_kb;
                timed_out(record, partial)
            }
            _ => RunOutcome { record, output: None },
        }
    }
}
