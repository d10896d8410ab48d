use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dcfactor::Primitive;
use dcfactor_cli::bench::HEADER;
use dcfactor_cli::trace_io::{read_trace, write_trace};
use dcfactor_cli::{run, Algorithm, Format, Report, RunConfig, RunStatus};

fn dcfactor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcfactor")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    dcfactor(args).status.code().unwrap()
}

fn report_for(config: &RunConfig) -> (RunStatus, String) {
    let mut out = Vec::new();
    let status = run(config, &mut out).unwrap();
    (status, String::from_utf8(out).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["run", "--algorithm", "shor", "--n", "21", "--q", "512"]), 0);
    assert_eq!(code(&["run", "--algorithm", "fermat", "--n", "11"]), 0);
    assert_eq!(code(&["run", "--algorithm", "trial", "--n", "97"]), 0);
    // a = 4 has odd order 3 mod 21
    assert_eq!(code(&["run", "--algorithm", "shor", "--n", "21", "--base", "4"]), 2);
    assert_eq!(code(&["run", "--algorithm", "fermat", "--n", "22"]), 1);
    assert_eq!(code(&["run", "--algorithm", "naive", "--n", "15", "--base", "2"]), 1);
    assert_eq!(code(&["run", "--algorithm", "naive", "--n", "2"]), 1);
    assert_eq!(code(&["run", "--algorithm", "shor", "--n", "21", "--q", "64"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn error_messages_go_to_stderr() {
    let out = dcfactor(&["run", "--algorithm", "classical-fermat", "--n", "100"]);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("odd"), "{stderr}");
    assert!(out.stdout.is_empty());
}

#[test]
fn prime_message() {
    let out = dcfactor(&["run", "--algorithm", "fermat", "--n", "11"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("result: no representation found (prime)"), "{stdout}");
    assert!(stdout.contains("factors: none"));
}

#[test]
fn trace_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (alg, n) in [(Algorithm::Naive, 45u128), (Algorithm::Shor, 15), (Algorithm::Fermat, 91)] {
        let path = dir.path().join(format!("{alg}.jsonl"));
        let mut config = RunConfig::new(alg, n);
        config.trace_path = Some(path.clone());
        report_for(&config);

        let events = read_trace(&path).unwrap();
        assert!(!events.is_empty());
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), events.len());
        for (line, event) in text.lines().zip(&events) {
            assert_eq!(&serde_json::from_str::<dcfactor::TraceEvent>(line).unwrap(), event);
        }
        for (i, e) in events.iter().enumerate() {
            assert_eq!(e.step_index, i as u64);
        }

        let copy = dir.path().join("copy.jsonl");
        write_trace(&copy, &events).unwrap();
        assert_eq!(fs::read(&copy).unwrap(), fs::read(&path).unwrap());
    }
}

#[test]
fn naive_fifteen_trace_has_three_readouts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.jsonl");
    let mut config = RunConfig::new(Algorithm::Naive, 15);
    config.trace_path = Some(path.clone());
    let (status, text) = report_for(&config);
    assert_eq!(status, RunStatus::Conclusive);
    assert!(text.contains("factors: 3, 5"), "{text}");
    let events = read_trace(&path).unwrap();
    let readouts = events.iter().filter(|e| e.op == Primitive::Readout).count();
    assert_eq!(readouts, 3);
    assert!(events.iter().all(|e| e.label.starts_with("naive#")));
}

#[test]
fn seeds_reproduce() {
    let dir = tempfile::tempdir().unwrap();
    let run_once = |seed: u64, tag: &str| {
        let path = dir.path().join(format!("{tag}.jsonl"));
        let mut config = RunConfig::new(Algorithm::Shor, 33);
        config.seed = seed;
        config.format = Format::Json;
        config.trace_path = Some(path.clone());
        (report_for(&config).1, fs::read(&path).unwrap())
    };
    assert_eq!(run_once(11, "a"), run_once(11, "b"));
    let (report_a, _) = run_once(11, "c");
    let (report_b, _) = run_once(12, "d");
    assert_ne!(report_a, report_b, "seed should appear in the report");
}

fn text_field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

#[test]
fn text_and_json_agree() {
    for (alg, n) in [
        (Algorithm::Naive, 105u128),
        (Algorithm::Shor, 21),
        (Algorithm::Fermat, 221),
        (Algorithm::Trial, 1001),
        (Algorithm::ClassicalFermat, 1001),
    ] {
        let mut config = RunConfig::new(alg, n);
        let (_, text) = report_for(&config);
        config.format = Format::Json;
        let (_, json) = report_for(&config);
        let report: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(report.to_text(), text);

        let factors = report.factors.iter().map(u128::to_string).collect::<Vec<_>>().join(", ");
        assert_eq!(text_field(&text, "factors"), Some(factors.as_str()).filter(|f| !f.is_empty()).or(Some("none")));
        assert_eq!(text_field(&text, "period").map(str::to_owned), report.period.map(|p| p.to_string()));
        assert_eq!(
            text_field(&text, "success_probability").map(|p| p.parse::<f64>().unwrap()),
            report.success_probability
        );
    }
}

fn bench(args: &[&str], dir: &Path) -> (i32, String) {
    let out = dir.join("bench.csv");
    let mut full = vec!["bench"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let code = code(&full);
    (code, fs::read_to_string(out).unwrap_or_default())
}

#[test]
fn bench_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let (code, csv) = bench(&["--min", "21", "--max", "21"], dir.path());
    assert_eq!(code, 0);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), HEADER.join(","));
    assert_eq!(lines.next().unwrap(), "21,7,6,5,1,2");
    assert!(lines.next().is_none());
}

#[test]
fn bench_rejects_bad_ranges() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bench(&["--min", "30", "--max", "20"], dir.path()), (1, String::new()));
    assert_eq!(bench(&["--min", "9", "--max", "2000000"], dir.path()).0, 1);
}
