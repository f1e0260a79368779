use std::collections::HashMap;
use std::time::Duration;

use forget_bench::{
    read_records, run_grid, run_grid_with, summarize_timeouts, BenchRecord, GridSpec,
    InProcessRunner, CSV_HEADER,
};
use forget_core::{equivalent, Algorithm, VarSet};

fn tiny() -> GridSpec {
    GridSpec {
        vars: 3..=3,
        multipliers: 1..=1,
        reps: 1,
        ..GridSpec::default()
    }
}

#[test]
fn tiny_grid_record_count() {
    let mut records = Vec::new();
    let summary = run_grid(&tiny(), &InProcessRunner, &mut records).unwrap();
    // forget 0..=3 gives 4 points, each run by 4 algorithms
    assert_eq!(records.len(), 16);
    assert_eq!(summary.records, 16);
    assert_eq!(summary.failures, 0);
    assert_eq!(tiny().run_count(), 16);
}

#[test]
fn same_formula_for_every_algorithm() {
    let mut records = Vec::new();
    run_grid(&tiny(), &InProcessRunner, &mut records).unwrap();
    for chunk in records.chunks(4) {
        let algs: Vec<&str> = chunk.iter().map(|r| r.algorithm.as_str()).collect();
        assert_eq!(algs, ["close", "eliminate", "linear", "backtrack"]);
        assert!(chunk.iter().all(|r| r.seed == chunk[0].seed && r.forget_vars == chunk[0].forget_vars));
    }
}

#[test]
fn self_metrics_are_reproducible() {
    let spec = GridSpec {
        vars: 3..=5,
        multipliers: 1..=3,
        reps: 2,
        algorithms: vec![Algorithm::Close, Algorithm::Eliminate, Algorithm::Backtrack],
        ..GridSpec::default()
    };
    let run = || {
        let mut records = Vec::new();
        run_grid(&spec, &InProcessRunner, &mut records).unwrap();
        records
            .into_iter()
            .map(|r| (r.algorithm, r.seed, r.forget_vars, r.self_time, r.self_mem, r.output_clauses))
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}

#[test]
fn completed_runs_agree() {
    let spec = GridSpec {
        vars: 3..=5,
        multipliers: 1..=5,
        reps: 1,
        timeout: Duration::from_millis(200),
        ..GridSpec::default()
    };
    let mut checked = 0;
    run_grid_with(&spec, &InProcessRunner, &mut Vec::new(), |point, input, outcomes| {
        let forget = point.forget_set();
        let remembered: VarSet = input.alphabet().difference(&forget).copied().collect();
        let done: Vec<_> = outcomes.iter().filter_map(|o| o.output.as_ref()).collect();
        for pair in done.windows(2) {
            assert!(equivalent(pair[0], pair[1], &remembered).unwrap(), "{point:?}");
            checked += 1;
        }
    })
    .unwrap();
    assert!(checked > 0);
}

#[test]
fn timeouts_leave_output_empty() {
    let spec = GridSpec {
        vars: 8..=8,
        multipliers: 5..=5,
        reps: 1,
        timeout: Duration::from_millis(20),
        algorithms: vec![Algorithm::Linear],
        ..GridSpec::default()
    };
    let mut records = Vec::new();
    let summary = run_grid(&spec, &InProcessRunner, &mut records).unwrap();
    assert!(summary.timeouts > 0);
    for r in records.iter().filter(|r| r.timed_out) {
        assert_eq!((r.output_clauses, r.output_literals), (None, None));
        assert!(r.self_time.is_some());
        // one resolution step of slack on top of the limit
        assert!(r.real_time_s.unwrap() < 0.020 + 0.25);
    }
}

fn record(vars: usize, forget: usize, timed_out: bool) -> BenchRecord {
    BenchRecord {
        algorithm: "linear".into(),
        vars,
        forget_vars: forget,
        clauses: vars,
        seed: 0,
        real_time_s: Some(0.5),
        real_mem_kb: Some(2048),
        self_time: Some(1),
        self_mem: Some(2),
        output_clauses: (!timed_out).then_some(1),
        output_literals: (!timed_out).then_some(1),
        timed_out,
    }
}

#[test]
fn timeout_summary() {
    let empty = summarize_timeouts(&[]);
    assert!(empty.by_vars.is_empty());
    assert!(empty.by_fraction.iter().all(|t| t.total == 0 && t.timeouts == 0));

    let one = summarize_timeouts(&[record(8, 4, true)]);
    assert_eq!(one.by_fraction[5].timeouts, 1);
    assert_eq!(one.by_vars[&8].timeouts, 1);

    let records = [record(4, 1, false), record(4, 2, true), record(5, 5, false)];
    let s = summarize_timeouts(&records);
    assert_eq!(s.by_vars[&4].total, 2);
    assert_eq!(s.by_vars[&4].percent(), 50.0);
    assert_eq!(s.by_fraction[10].total, 1);
    assert_eq!(s.by_fraction[3].total, 1); // 0.25 rounds up
}

#[test]
fn csv_layout() {
    let mut w = csv::Writer::from_writer(Vec::new());
    let records = [record(8, 4, true), record(3, 0, false)];
    for r in &records {
        w.serialize(r).unwrap();
    }
    let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(lines.next(), Some("linear,8,4,8,0,0.5,2048,1,2,,,true"));
    assert_eq!(lines.next(), Some("linear,3,0,3,0,0.5,2048,1,2,1,1,false"));
    assert_eq!(read_records(text.as_bytes()).unwrap(), records);
}

/// What the plotting scripts rely on, read back by column name without the
/// record type: numeric columns parse, nulls are empty strings, and timed
/// out rows carry no output size.
#[test]
fn csv_file_is_readable_by_column_name() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let spec = GridSpec {
        vars: 3..=4,
        multipliers: 1..=2,
        reps: 1,
        timeout: Duration::from_millis(100),
        ..GridSpec::default()
    };
    let mut sink = csv::Writer::from_path(&path).unwrap();
    run_grid(&spec, &InProcessRunner, &mut sink).unwrap();
    drop(sink);

    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_owned).collect();
    assert_eq!(header.join(","), CSV_HEADER);
    let mut rows = 0;
    for row in rdr.records() {
        let row = row.unwrap();
        let col: HashMap<&str, &str> = header.iter().map(String::as_str).zip(row.iter()).collect();
        assert!(col["algorithm"].parse::<Algorithm>().is_ok());
        let vars: usize = col["vars"].parse().unwrap();
        let forget: usize = col["forget_vars"].parse().unwrap();
        assert!(forget <= vars);
        assert_eq!(col["clauses"].parse::<usize>().unwrap() % vars, 0);
        col["seed"].parse::<u64>().unwrap();
        col["real_time_s"].parse::<f64>().unwrap();
        col["real_mem_kb"].parse::<u64>().unwrap();
        col["self_time"].parse::<u64>().unwrap();
        col["self_mem"].parse::<u64>().unwrap();
        match col["timed_out"] {
            "true" => assert_eq!((col["output_clauses"], col["output_literals"]), ("", "")),
            "false" => {
                col["output_clauses"].parse::<usize>().unwrap();
                col["output_literals"].parse::<usize>().unwrap();
            }
            other => panic!("timed_out = {other}"),
        }
        rows += 1;
    }
    assert_eq!(rows, spec.run_count());
}
