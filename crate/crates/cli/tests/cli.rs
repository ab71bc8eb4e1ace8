use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn jchm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jchm")).args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> Output {
    let out = jchm(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out
}

fn error_report(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON object")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let args = ["fluct", "--out", path_str(&csv), "--set", "solver.kgrid_points=8"];
    run_ok(&args);
    let first = (
        std::fs::read(&csv).unwrap(),
        std::fs::read(dir.path().join("f.csv.json")).unwrap(),
    );
    run_ok(&args);
    let second = (
        std::fs::read(&csv).unwrap(),
        std::fs::read(dir.path().join("f.csv.json")).unwrap(),
    );
    assert_eq!(first, second);
}

#[test]
fn sequential_and_parallel_tables_agree() {
    let dir = tempfile::tempdir().unwrap();
    let read = |mode: &str| {
        let csv = dir.path().join(format!("{mode}.csv"));
        run_ok(&[
            "tc",
            "--out",
            path_str(&csv),
            "--set",
            &format!("execution={mode}"),
            "--set",
            "ranges.mu_d.count=8",
        ]);
        std::fs::read(csv).unwrap()
    };
    assert_eq!(read("sequential"), read("parallel"));
}

#[test]
fn csv_has_header_and_lf_endings() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("o.csv");
    run_ok(&["onsite", "--out", path_str(&csv)]);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    assert_eq!(
        text.lines().next().unwrap(),
        "n,delta_over_g,branch,energy_over_g,mixing_angle,chi_n_over_g,f_to_lower,hubbard_u_over_g,error"
    );
    assert_eq!(text.lines().count(), 1 + 3 * 9 * 2);
}

#[test]
fn rows_are_complete_or_carry_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    run_ok(&["boundary", "--out", path_str(&csv), "--set", "ranges.n.values=[0,1,2]"]);
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    let width = reader.headers().unwrap().len();
    let (mut ok, mut failed) = (0, 0);
    for rec in reader.records() {
        let rec = rec.unwrap();
        let error = &rec[width - 1];
        let values: Vec<&str> = rec.iter().take(width - 1).collect();
        if error.is_empty() {
            assert!(values.iter().all(|v| !v.is_empty()), "{rec:?}");
            ok += 1;
        } else {
            assert!(values[4..].iter().all(|v| v.is_empty()), "{rec:?}");
            failed += 1;
        }
    }
    assert!(ok > 0 && failed > 0);
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("b.csv.json")).unwrap()).unwrap();
    assert_eq!(meta["failed_rows"], failed);
    assert_eq!(meta["rows"], ok + failed);
}

#[test]
fn sidecar_records_resolved_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(
        &cfg,
        r#"{"params": {"delta": 0.25, "dim": 3}, "ranges": {"J": {"values": [0.01]}}}"#,
    )
    .unwrap();
    let csv = dir.path().join("s.csv");
    let out = run_ok(&[
        "fluct",
        "--config",
        path_str(&cfg),
        "--set",
        "params.dim=1",
        "--set",
        "solver.kgrid_points=6",
        "--out",
        path_str(&csv),
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("wrote 15 rows"));
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.csv.json")).unwrap()).unwrap();
    assert_eq!(meta["command"], "fluct");
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(meta["config"]["params"]["delta"], 0.25);
    // --set beats the file, the file beats the defaults.
    assert_eq!(meta["config"]["params"]["dim"], 1);
    assert_eq!(meta["config"]["params"]["n"], 1);
    assert_eq!(meta["config"]["ranges"]["J"]["values"][0], 0.01);
    assert_eq!(meta["tolerances"]["kgrid_points"], 6);
    assert_eq!(meta["columns"].as_array().unwrap().last().unwrap(), "error");
}

#[test]
fn gnuplot_script_references_the_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    run_ok(&["dicke-spectrum", "--out", path_str(&csv), "--gnuplot"]);
    let gp = std::fs::read_to_string(dir.path().join("d.csv.gp")).unwrap();
    assert!(gp.contains("'d.csv' using 2:4"));
    assert!(gp.contains("'d.csv' using 2:5"));
}

#[test]
fn config_errors_exit_2() {
    for args in [
        vec!["fluct"],
        vec!["not-a-command"],
        vec!["fluct", "--out", "x.csv", "--set", "params.unknown=1"],
        vec!["fluct", "--out", "x.csv", "--set", "ranges.k.values=[1]"],
        vec!["fluct", "--out", "x.csv", "--set", "params.dim=4"],
        vec!["fluct", "--out", "x.csv", "--set", "noequals"],
    ] {
        let out = jchm(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let report = error_report(&out);
        assert_eq!(report["error"]["kind"], "config");
        assert_eq!(report["error"]["code"], 2);
    }
}

#[test]
fn io_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/o.csv");
    let out = jchm(&["onsite", "--out", path_str(&missing)]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_report(&out)["error"]["kind"], "io");

    let out = jchm(&[
        "onsite",
        "--config",
        path_str(&dir.path().join("absent.json")),
        "--out",
        "x.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn sweep_wide_solver_failure_exits_3() {
    let out = jchm(&["spectrum", "--out", "unused.csv", "--set", "params.n=0"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_report(&out)["error"]["kind"], "solver");
    assert!(!Path::new("unused.csv").exists());
}

#[test]
fn help_and_version_succeed() {
    let out = run_ok(&["--help"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("ed-check"));
    let out = run_ok(&["--version"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains(env!("CARGO_PKG_VERSION")));
}
