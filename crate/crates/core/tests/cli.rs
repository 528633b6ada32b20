use std::path::Path;
use std::process::{Command, Output};

use planarmatch::montecarlo::{ExperimentReport, SweepReport};

fn planarmatch(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planarmatch"))
        .args(args)
        .current_dir(dir)
        .env_remove("PLANARMATCH_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dependent_run_writes_identical_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let args = |tag: &str| {
        vec![
            "dependent-sim".to_owned(),
            "--n".into(),
            "100".into(),
            "--k".into(),
            "200".into(),
            "--t".into(),
            "sqrt".into(),
            "--trials".into(),
            "300".into(),
            "--seed".into(),
            "7".into(),
            "--out".into(),
            format!("{tag}.json"),
            "--csv".into(),
            format!("{tag}.csv"),
            "--svg".into(),
            format!("{tag}.svg"),
        ]
    };
    for tag in ["a", "b"] {
        let a = args(tag);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        let o = planarmatch(&refs, dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for ext in ["json", "csv", "svg"] {
        let a = std::fs::read(dir.path().join(format!("a.{ext}"))).unwrap();
        let b = std::fs::read(dir.path().join(format!("b.{ext}"))).unwrap();
        assert_eq!(a, b, "{ext} differs");
    }

    let json = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
    let report: ExperimentReport = serde_json::from_str(&json).unwrap();
    assert_eq!(report.schema_version, 1);
    assert_eq!(report.config.trials, 300);
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", json);
    let seg = report.segment.unwrap();
    assert_eq!((seg.t, seg.s), (10, 20));

    let mut rdr = csv::Reader::from_path(dir.path().join("a.csv")).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["trial", "n", "k", "t", "s", "T_n", "X_t"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 300);
    for row in &rows {
        let t_n: usize = row[5].parse().unwrap();
        let x_t: usize = row[6].parse().unwrap();
        assert!(x_t <= t_n);
    }
}

#[test]
fn worker_cap_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_planarmatch"))
            .args(["rainbow-sim", "--n", "7", "--r", "7", "--trials", "200", "--seed", "3"])
            .current_dir(dir.path())
            .env("PLANARMATCH_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let many = run("8");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn rainbow_sweep_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = planarmatch(
        &["rainbow-sim", "--n", "4,6,8", "--alpha", "1.0", "--trials", "50", "--seed", "1", "--csv", "r.csv", "--svg", "r.svg"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let sweep: SweepReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(sweep.reports.len(), 3);
    assert_eq!(sweep.reports[2].config.colours().unwrap(), 8);
    let mut rdr = csv::Reader::from_path(dir.path().join("r.csv")).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["trial", "n", "r", "R_n", "solver_exact"]);
    assert_eq!(rdr.records().count(), 150);
    let svg = std::fs::read_to_string(dir.path().join("r.svg")).unwrap();
    assert!(svg.contains(r#"version="1.1""#));
    assert_eq!(svg.matches("<circle").count(), 150);
}

#[test]
fn exact_prints_a_rainbow_witness() {
    let dir = tempfile::tempdir().unwrap();
    let o = planarmatch(&["exact", "--mode", "rainbow", "--n", "4", "--r", "4", "--seed", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("R_n = "));
    assert!(text.contains("witness: ("));
    let o = planarmatch(&["exact", "--mode", "dependent", "--n", "12", "--k", "20", "--seed", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("T_n = "));
}

#[test]
fn oracle_check_counts() {
    let dir = tempfile::tempdir().unwrap();
    let o = planarmatch(&["oracle-check", "--suite", "a1c", "--kmax", "9"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "a1c: verified 285 instances, 0 mismatches");
}

#[test]
fn bounds_prints_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = planarmatch(&["bounds", "--which", "tail", "--n", "100000", "--b", "4"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tail_threshold"));
    let o = planarmatch(&["bounds", "--which", "tail", "--n", "10000", "--b", "3"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no admissible b"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| planarmatch(args, dir.path()).status.code();
    assert_eq!(code(&["--bogus"]), Some(2));
    assert_eq!(code(&["dependent-sim"]), Some(2));
    assert_eq!(code(&["dependent-sim", "--n", "10", "--k", "15", "--t", "3", "--trials", "5"]), Some(2));
    assert_eq!(code(&["rainbow-sim", "--n", "20", "--r", "8", "--trials", "2"]), Some(5));
    assert_eq!(code(&["dependent-sim", "--n", "10", "--trials", "5", "--out", "missing/dir/x.json"]), Some(4));
    // a failing check only changes the exit code under --check
    let failing = ["dependent-sim", "--n", "400", "--t", "20", "--trials", "2000", "--seed", "1", "--out", "f.json"];
    assert_eq!(code(&failing), Some(0));
    let mut with_check = failing.to_vec();
    with_check.push("--check");
    assert_eq!(code(&with_check), Some(3));
}
