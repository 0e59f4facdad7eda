use std::path::Path;
use std::process::{Command, Output};

use esslab::cli::{emit_plot_data, parse_plot_data, ResultCell};

fn esslab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esslab"))
        .args(args)
        .current_dir(dir)
        .env_remove("ESSLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

#[test]
fn ess_writes_the_frozen_schema_and_a_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = esslab(
        &["ess", "--dist", "cauchy", "--n", "200", "--trials", "50", "--seed", "7", "--out", "r.csv"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "r.csv");
    assert_eq!(
        csv.lines().next().unwrap(),
        "seed,dist,n,trials,mean_S1,mean_S2,stderr_S2,P_exist_le2"
    );
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().nth(1).unwrap().starts_with("7,cauchy,200,50,"));
    let meta: serde_json::Value = serde_json::from_str(&read(dir.path(), "r.csv.meta.json")).unwrap();
    assert!(meta["created_unix"].as_u64().unwrap() > 0);
    // one summary line per cell
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

#[test]
fn outputs_are_byte_identical_across_runs_and_thread_caps() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["exist", "--dist", "normal,sym(exp)", "--n", "20,60", "--trials", "200", "--seed", "3"];
    let mut bodies = Vec::new();
    for (i, threads) in ["1", "8", "8"].iter().enumerate() {
        let name = format!("r{i}.csv");
        let mut args = base.to_vec();
        args.extend(["--threads", threads, "--out", &name]);
        assert!(esslab(&args, dir.path()).status.success());
        bodies.push(read(dir.path(), &name));
    }
    assert_eq!(bodies[0], bodies[1]);
    assert_eq!(bodies[1], bodies[2]);
    assert_eq!(bodies[0].lines().count(), 5);
}

#[test]
fn env_thread_cap_is_a_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_esslab"));
        c.args(["gamma", "--dist", "uniform", "--n", "6", "--trials", "5000", "--seed", "2"])
            .current_dir(dir.path());
        match env {
            Some(v) => c.env("ESSLAB_THREADS", v),
            None => c.env_remove("ESSLAB_THREADS"),
        };
        c.output().unwrap()
    };
    let (a, b) = (run(None), run(Some("3")));
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(Some("0")).status.code(), Some(2));
}

#[test]
fn sweep_of_uniform_increases() {
    let dir = tempfile::tempdir().unwrap();
    let out = esslab(
        &["sweep", "--dist", "uniform", "--n", "10,100,1000", "--trials", "300", "--seed", "7", "--out", "s.csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let mu = column(&read(dir.path(), "s.csv"), "mu");
    assert_eq!(mu.len(), 3);
    assert!(mu[0] < mu[1] && mu[1] < mu[2], "{mu:?}");
}

#[test]
fn hull_row_has_vertex_statistics_and_plot_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = esslab(
        &[
            "hull", "--dist", "sym(weibull:0.5)", "--n", "100,1000,10000", "--trials", "20", "--seed", "7",
            "--out", "h.csv", "--plot", "p.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = read(dir.path(), "h.csv");
    assert!(csv.lines().next().unwrap().contains("P_V_eq_4"));
    let plot = parse_plot_data(&read(dir.path(), "p.csv")).unwrap();
    assert_eq!(plot.len(), 12);
    let keys: Vec<(String, usize)> = plot.iter().map(|r| (r.statistic.clone(), r.n)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn json_mirrors_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let common = ["chenstein", "--dist", "cauchy", "--n", "40", "--trials", "200", "--seed", "1"];
    let csv = esslab(&common, dir.path());
    let mut args = common.to_vec();
    args.extend(["--format", "json"]);
    let json = esslab(&args, dir.path());
    assert!(csv.status.success() && json.status.success());
    let csv = String::from_utf8(csv.stdout).unwrap();
    let rows: Vec<serde_json::Map<String, serde_json::Value>> = serde_json::from_slice(&json.stdout).unwrap();
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    assert_eq!(rows[0].keys().map(String::as_str).collect::<Vec<_>>(), header);
    let csv_bound = column(&csv, "bound")[0];
    assert_eq!(rows[0]["bound"].as_f64().unwrap(), csv_bound);
}

#[test]
fn config_errors_exit_two_and_name_the_token() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["ess", "--dist", "weibul:2", "--seed", "1"],
        &["ess", "--dist", "sym(normal)", "--seed", "1"],
        &["ess", "--dist", "uniform"],
        &["ess", "--seed", "1", "--n", "ten"],
        &["ess", "--seed", "1", "--frobnicate"],
        &["ess", "--seed", "1", "--trials", "0"],
        &["fu", "--seed", "1", "--trials", "10"],
        &["teleport", "--seed", "1"],
    ];
    for args in cases {
        let out = esslab(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let err = String::from_utf8(esslab(cases[0], dir.path()).stderr).unwrap();
    assert!(err.contains("weibul"), "{err}");
}

#[test]
fn unwritable_output_is_a_runtime_failure() {
    let dir = tempfile::tempdir().unwrap();
    let out = esslab(
        &["gamma", "--n", "3", "--trials", "10", "--seed", "1", "--out", "missing/dir/r.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fu_command_reports_the_quadrant_mass() {
    let dir = tempfile::tempdir().unwrap();
    let out = esslab(&["fu", "--dist", "exp", "--n", "20", "--trials", "4000", "--seed", "5"], dir.path());
    assert!(out.status.success());
    let f = column(&String::from_utf8(out.stdout).unwrap(), "F_U_below_one")[0];
    assert!((f - 0.25).abs() < 0.03, "{f}");
}

#[test]
fn plot_data_round_trips_exactly() {
    let cell = ResultCell {
        seed: 1,
        dist: "cauchy".into(),
        n: 10,
        trials: 3,
        columns: vec![],
        statistics: vec![("mu".into(), 1.0 / 3.0, 0.1 + 0.2, std::f64::consts::PI)],
    };
    let text = emit_plot_data(std::slice::from_ref(&cell)).unwrap();
    let rows = parse_plot_data(&text).unwrap();
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    assert_eq!((r.n, r.statistic.as_str()), (10, "mu"));
    assert_eq!((r.value, r.ci_lo, r.ci_hi), (1.0 / 3.0, 0.1 + 0.2, std::f64::consts::PI));
}
