use std::io::Write;
use std::process::{Command, Output, Stdio};

use forget_bench::read_records;
use forget_core::{equivalent, generate, parse_formula, serialize_formula, Formula, VarSet};

fn forget(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_forget"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Result clauses of a run, ignoring `#` lines.
fn clause_lines(out: &Output) -> Vec<String> {
    stdout(out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_owned)
        .collect()
}

fn result_formula(out: &Output) -> Formula {
    parse_formula(&clause_lines(out).join("\n")).unwrap()
}

fn vars(s: &str) -> VarSet {
    s.chars().map(forget_core::Var::from_char).collect()
}

#[test]
fn eliminate_chain() {
    let out = forget(&["forget", "--algorithm", "eliminate", "--forget", "b"], "ab -bc -cd");
    assert!(out.status.success());
    assert_eq!(clause_lines(&out), ["ac", "-cd"]);
    assert!(stdout(&out).lines().any(|l| l.starts_with("# ")));
}

#[test]
fn forgetting_nothing_keeps_the_formula() {
    let out = forget(&["forget", "--algorithm", "close", "--forget", ""], "a");
    assert!(out.status.success());
    assert_eq!(clause_lines(&out), ["a"]);
}

#[test]
fn backtrack_on_implications() {
    let out = forget(&["forget", "-a", "backtrack", "-f", "b"], "a->b b->c c->d d->a");
    assert!(out.status.success());
    let expected = parse_formula("a->c c->d d->a").unwrap();
    assert!(equivalent(&result_formula(&out), &expected, &vars("acd")).unwrap());
}

#[test]
fn absent_variables_are_ignored() {
    let out = forget(&["forget", "-a", "linear", "-f", "xyz"], "ab");
    assert!(out.status.success());
    assert_eq!(clause_lines(&out), ["ab"]);
}

#[test]
fn input_file_and_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.cnf");
    std::fs::write(&path, "# a comment\nab -bc\n-cd\n").unwrap();
    let out = forget(
        &["forget", "-a", "eliminate", "-f", "bc", "--order", "cb", "--minimize", path.to_str().unwrap()],
        "",
    );
    assert!(out.status.success());
    assert_eq!(clause_lines(&out), ["ad"]);
}

#[test]
fn trace_lines_follow_events() {
    let out = forget(&["forget", "-a", "linear", "-f", "b", "--trace"], "ab -bc");
    assert!(stdout(&out).contains("# resolve on b"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], input: &str| forget(args, input).status.code().unwrap();
    assert_eq!(code(&["forget", "-a", "close", "-f", "a"], "a"), 0);
    assert_eq!(code(&["forget", "-a", "dpll", "-f", "a"], "a"), 2);
    assert_eq!(code(&["forget", "-a", "close"], "a"), 2);
    assert_eq!(code(&["forget", "-a", "close", "-f", "a"], "a- b"), 3);
    assert_eq!(code(&["forget", "-a", "close", "-f", "-a"], "a"), 3);
    assert_eq!(code(&["forget", "-a", "linear", "-f", "b", "--timeout", "0"], "ab -bc"), 4);
    assert_eq!(code(&["forget", "-a", "close", "-f", "a", "/nonexistent/f"], ""), 6);
    // 21 remembered variables is beyond the oracle's reach
    let wide: String = ('a'..='u').collect();
    assert_eq!(code(&["check", "-f", "z"], &wide), 5);
}

#[test]
fn timeout_still_reports_meters() {
    let out = forget(&["forget", "-a", "linear", "-f", "b", "--timeout", "0"], "ab -bc");
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("#T=")));
    assert!(text.lines().any(|l| l.starts_with("#M=")));
    assert!(clause_lines(&out).is_empty());
}

#[test]
fn gen_output() {
    let out = forget(&["gen", "--vars", "3", "--clauses", "1", "--seed", "7"], "");
    let text = stdout(&out);
    let tokens: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(tokens.len(), 1);
    assert_eq!(tokens[0].chars().filter(|c| c.is_alphabetic()).count(), 3);

    let again = forget(&["gen", "--vars", "3", "--clauses", "1", "--seed", "7"], "");
    assert_eq!(text, stdout(&again));
    assert_eq!(text.trim_end(), serialize_formula(&generate(3, 1, 7)));
    assert_eq!(forget(&["gen", "--vars", "2", "--clauses", "1"], "").status.code(), Some(5));
}

#[test]
fn generated_formulas_feed_forget() {
    let text = stdout(&forget(&["gen", "--vars", "6", "--clauses", "20", "--seed", "3"], ""));
    let out = forget(&["forget", "-a", "eliminate", "-f", "ab"], &text);
    assert!(out.status.success());
    result_formula(&out);
}

#[test]
fn check_reports_agreement() {
    let out = forget(&["check", "-f", "b"], "");
    assert!(out.status.success());
    let out = forget(&["check", "-f", "b"], "ab -bc -cd");
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.ends_with(": equivalent")).count(), 4 + 6);
}

#[test]
fn check_on_random_instances() {
    for seed in 0..100 {
        let f = serialize_formula(&generate(5, 5 + seed as usize % 16, seed));
        let out = forget(&["check", "-f", "ab", "--timeout", "2"], &f);
        assert!(out.status.success(), "seed {seed}: {}", stdout(&out));
        assert!(!stdout(&out).contains("DIFFERENT"));
    }
}

fn bench(dir: &std::path::Path, name: &str, extra: &[&str]) -> Vec<forget_bench::BenchRecord> {
    let path = dir.join(name);
    let mut args = vec!["bench", "--vars", "3..3", "--multipliers", "1..1", "--reps", "1", "--out"];
    args.push(path.to_str().unwrap());
    args.extend(extra);
    let out = forget(&args, "");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains(forget_core::GENERATOR_ID));
    read_records(std::fs::File::open(path).unwrap()).unwrap()
}

#[test]
fn bench_tiny_grid() {
    let dir = tempfile::tempdir().unwrap();
    let first = bench(dir.path(), "a.csv", &[]);
    assert_eq!(first.len(), 16);
    let second = bench(dir.path(), "b.csv", &[]);
    let key = |r: &forget_bench::BenchRecord| (r.algorithm.clone(), r.seed, r.self_time, r.self_mem);
    assert_eq!(
        first.iter().map(key).collect::<Vec<_>>(),
        second.iter().map(key).collect::<Vec<_>>()
    );
}

#[test]
fn bench_in_child_processes() {
    let dir = tempfile::tempdir().unwrap();
    let isolated = bench(dir.path(), "iso.csv", &["--isolate"]);
    let inline = bench(dir.path(), "in.csv", &[]);
    assert_eq!(isolated.len(), 16);
    for (a, b) in isolated.iter().zip(&inline) {
        assert!(!a.timed_out);
        assert!(a.real_mem_kb.unwrap() > 0);
        assert_eq!((a.self_time, a.self_mem), (b.self_time, b.self_mem));
        assert_eq!((a.output_clauses, a.output_literals), (b.output_clauses, b.output_literals));
    }
}
