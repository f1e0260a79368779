//! `forget`: propositional forgetting from the command line.
//!
//! Exit status: 0 success, 1 `check` found a mismatch, 2 usage error,
//! 3 malformed input, 4 timeout, 5 contract or enumeration-limit error,
//! 6 I/O error.

use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use forget_bench::{
    run_grid_with, summarize_timeouts, GridSpec, InProcessRunner, Runner, SubprocessRunner,
};
use forget_core::{
    emit_trace, equivalent, generate, oracle_forget, parse_formula, parse_variables,
    serialize_formula, Algorithm, Deadline, Error, Event, ForgetOptions, Formula, Meter,
    TraceLine, VarOrder, VarSet, GENERATOR_ID,
};

mod exit {
    pub const MISMATCH: u8 = 1;
    pub const PARSE: u8 = 3;
    pub const TIMEOUT: u8 = 4;
    pub const CONTRACT: u8 = 5;
    pub const IO: u8 = 6;
}

#[derive(Parser)]
#[command(name = "forget", version, about = "Forget variables from a CNF formula")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Forget variables from a formula read from FILE or stdin.
    Forget(ForgetArgs),
    /// Print a random 3-CNF formula.
    Gen(GenArgs),
    /// Compare every algorithm against brute-force enumeration.
    Check(CheckArgs),
    /// Run the experiment grid and write one CSV line per run.
    Bench(BenchArgs),
}

#[derive(Args)]
struct ForgetArgs {
    #[arg(short, long)]
    algorithm: Algorithm,
    /// Variables to forget, written together as in the input (`bd`, `&x;&y;`).
    #[arg(short, long, allow_hyphen_values = true)]
    forget: String,
    /// Formula file; stdin when absent.
    file: Option<PathBuf>,
    /// Minimize after each elimination step.
    #[arg(long)]
    minimize: bool,
    /// Variables to take first when ordering, e.g. `cb`; the rest follow
    /// in ascending order.
    #[arg(long, default_value = "")]
    order: String,
    /// Give up after this many seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Print every recorded step as a trace line.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    vars: usize,
    #[arg(long)]
    clauses: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(short, long, allow_hyphen_values = true)]
    forget: String,
    file: Option<PathBuf>,
    /// Per-algorithm limit in seconds; a timed out algorithm is reported,
    /// not counted as a mismatch.
    #[arg(long, default_value_t = 10.0)]
    timeout: f64,
}

#[derive(Args)]
struct BenchArgs {
    /// Output CSV path.
    #[arg(short, long)]
    out: PathBuf,
    /// Variable counts, `lo..hi` inclusive.
    #[arg(long, default_value = "3..10", value_parser = parse_range)]
    vars: RangeInclusive<usize>,
    /// Clause multipliers, `lo..hi` inclusive.
    #[arg(long, default_value = "1..5", value_parser = parse_range)]
    multipliers: RangeInclusive<usize>,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    /// Seconds per run.
    #[arg(long, default_value_t = 10.0)]
    timeout: f64,
    #[arg(long, value_delimiter = ',', default_value = "close,eliminate,linear,backtrack")]
    algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = GridSpec::default().base_seed)]
    seed: u64,
    /// Run each algorithm in a child process so real memory is per run.
    #[arg(long)]
    isolate: bool,
    /// Print one line per finished grid point to stderr.
    #[arg(long)]
    progress: bool,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected `lo..hi`, got `{s}`");
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo = lo.parse().map_err(|_| bad())?;
    let hi = hi.parse().map_err(|_| bad())?;
    Ok(lo..=hi)
}

fn seconds(s: f64) -> anyhow::Result<Duration> {
    Duration::try_from_secs_f64(s).context("timeout must be a non-negative number of seconds")
}

fn read_input(file: Option<&PathBuf>) -> io::Result<String> {
    match file {
        Some(path) => fs::read_to_string(path),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e {
            Error::Timeout(_) => exit::TIMEOUT,
            Error::Parse(_) => exit::PARSE,
            Error::Contract(_) | Error::GuardExceeded { .. } => exit::CONTRACT,
        };
    }
    if err.downcast_ref::<forget_core::ParseError>().is_some() {
        return exit::PARSE;
    }
    if err.downcast_ref::<io::Error>().is_some() || err.downcast_ref::<csv::Error>().is_some() {
        return exit::IO;
    }
    exit::CONTRACT
}

fn describe(event: &Event) -> String {
    match event {
        Event::Resolved { pivot } => format!("resolve on {pivot}"),
        Event::Round { index, clauses } => format!("round {index}: {clauses} clauses"),
        Event::Eliminated { var, clauses } => format!("eliminated {var}: {clauses} clauses"),
        Event::Node { depth } => format!("node at depth {depth}"),
    }
}

fn cmd_forget(args: ForgetArgs) -> anyhow::Result<()> {
    let forget: VarSet = parse_variables(&args.forget)?.into_iter().collect();
    let order = VarOrder::with_priority(parse_variables(&args.order)?);
    let input = read_input(args.file.as_ref())?;
    let formula = parse_formula(&input)?;
    let deadline = match args.timeout {
        Some(s) => Deadline::after(seconds(s)?),
        None => Deadline::none(),
    };
    let mut meter = if args.trace { Meter::recording() } else { Meter::new() };
    let options = ForgetOptions {
        order,
        minimize: args.minimize,
    };
    let result = args.algorithm.forget(&formula, &forget, &options, &mut meter, deadline);

    let mut out = io::stdout().lock();
    let header = format!(
        "{} forgetting {{{}}} from {} clauses",
        args.algorithm,
        forget.iter().map(|v| v.to_string()).collect::<String>(),
        formula.len()
    );
    emit_trace(&mut out, TraceLine::Trace(&header))?;
    for event in meter.events() {
        emit_trace(&mut out, TraceLine::Trace(&describe(event)))?;
    }
    let stats = match &result {
        Ok(output) => {
            for clause in output.clauses() {
                emit_trace(&mut out, TraceLine::Result(clause))?;
            }
            meter.stats()
        }
        Err(Error::Timeout(partial)) => {
            emit_trace(&mut out, TraceLine::Trace("timeout: partial meter readings follow"))?;
            *partial
        }
        Err(_) => {
            out.flush()?;
            return Ok(result.map(drop)?);
        }
    };
    emit_trace(&mut out, TraceLine::Time(stats.time))?;
    emit_trace(&mut out, TraceLine::Memory(stats.memory))?;
    out.flush()?;
    Ok(result.map(drop)?)
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<()> {
    if !(forget_core::MIN_VARS..=forget_core::MAX_VARS).contains(&args.vars) {
        anyhow::bail!(Error::Contract(format!(
            "--vars must lie in {}..{}",
            forget_core::MIN_VARS,
            forget_core::MAX_VARS
        )));
    }
    let f = generate(args.vars, args.clauses, args.seed);
    let mut out = io::stdout().lock();
    if !f.is_empty() {
        writeln!(out, "{}", serialize_formula(&f))?;
    }
    Ok(())
}

/// Returns whether all completed algorithms agreed with the oracle.
fn cmd_check(args: CheckArgs) -> anyhow::Result<bool> {
    let forget: VarSet = parse_variables(&args.forget)?.into_iter().collect();
    let formula = parse_formula(&read_input(args.file.as_ref())?)?;
    let expected = oracle_forget(&formula, &forget)?;
    let remembered: VarSet = formula.alphabet().difference(&forget).copied().collect();
    let limit = seconds(args.timeout)?;
    let mut out = io::stdout().lock();
    let mut outputs: Vec<(Algorithm, Formula)> = Vec::new();
    let mut all_agree = true;
    for alg in Algorithm::ALL {
        let run = alg.forget(
            &formula,
            &forget,
            &ForgetOptions::default(),
            &mut Meter::new(),
            Deadline::after(limit),
        );
        match run {
            Ok(f) => {
                let ok = equivalent(&f, &expected, &remembered)?;
                all_agree &= ok;
                let verdict = if ok { "equivalent" } else { "DIFFERENT" };
                writeln!(out, "{alg} ~ oracle: {verdict}")?;
                outputs.push((alg, f));
            }
            Err(Error::Timeout(_)) => writeln!(out, "{alg} ~ oracle: timeout")?,
            Err(e) => return Err(e.into()),
        }
    }
    for (i, (a, f)) in outputs.iter().enumerate() {
        for (b, g) in &outputs[i + 1..] {
            let verdict = if equivalent(f, g, &remembered)? { "equivalent" } else { "DIFFERENT" };
            writeln!(out, "{a} ~ {b}: {verdict}")?;
        }
    }
    Ok(all_agree)
}

fn cmd_bench(args: BenchArgs) -> anyhow::Result<()> {
    let spec = GridSpec {
        vars: args.vars,
        multipliers: args.multipliers,
        reps: args.reps,
        timeout: seconds(args.timeout)?,
        algorithms: args.algorithms,
        base_seed: args.seed,
    };
    spec.validate()?;
    let runner: Box<dyn Runner> = if args.isolate {
        Box::new(SubprocessRunner {
            program: std::env::current_exe()?,
        })
    } else {
        Box::new(InProcessRunner)
    };
    eprintln!("# generator {GENERATOR_ID}, base seed {}", spec.base_seed);
    eprintln!("# {} runs", spec.run_count());
    let mut sink = csv::Writer::from_path(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let mut linear = Vec::new();
    let summary = run_grid_with(&spec, runner.as_ref(), &mut sink, |point, _, outcomes| {
        if args.progress {
            eprintln!(
                "# vars={} forget={} clauses={} rep={}",
                point.vars, point.forget, point.clauses, point.rep
            );
        }
        linear.extend(
            outcomes
                .iter()
                .filter(|o| o.record.algorithm == Algorithm::Linear.name())
                .map(|o| o.record.clone()),
        );
    })?;
    eprintln!(
        "# {} records, {} timeouts, {} failures",
        summary.records, summary.timeouts, summary.failures
    );
    for (vars, tally) in summarize_timeouts(&linear).by_vars {
        eprintln!("# linear timeouts at {vars} variables: {:.1}%", tally.percent());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Forget(args) => cmd_forget(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Check(args) => match cmd_check(args) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::from(exit::MISMATCH),
            Err(e) => Err(e),
        },
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("forget: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
