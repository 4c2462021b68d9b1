use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use assert_cmd::Command;
use phaselab::records::{RUN_HEADER, SWEEP_HEADER};
use serde_json::Value;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn phaselab() -> Command {
    Command::cargo_bin("phaselab").unwrap()
}

fn dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn read(path: &Path) -> Table {
        let mut r = csv::Reader::from_path(path).unwrap();
        let header = r.headers().unwrap().iter().map(String::from).collect();
        let rows = r
            .records()
            .map(|rec| rec.unwrap().iter().map(String::from).collect())
            .collect();
        Table { header, rows }
    }

    fn col(&self, name: &str) -> usize {
        self.header.iter().position(|h| h == name).unwrap()
    }

    fn num(&self, row: usize, name: &str) -> f64 {
        self.rows[row][self.col(name)].parse().unwrap()
    }
}

fn run_csv(schedule: &str, steps: usize) -> (Table, String) {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("run.csv");
    let assert = phaselab()
        .arg("run")
        .arg(data(schedule))
        .args(["--steps", &steps.to_string(), "--out"])
        .arg(&out)
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    (Table::read(&out), stdout)
}

fn breakdown_json(schedule: &str, steps: usize) -> Value {
    let assert = phaselab()
        .arg("breakdown")
        .arg(data(schedule))
        .args(["--steps", &steps.to_string()])
        .assert()
        .success();
    serde_json::from_slice(&assert.get_output().stdout).unwrap()
}

#[test]
fn run_mes_minus() {
    let (t, stdout) = run_csv("mes_minus.sched", 2000);
    assert_eq!(t.header, RUN_HEADER);
    assert_eq!(t.rows.len(), 1 + 4 * 1999);
    let last = t.rows.len() - 1;
    assert!(dist(t.num(last, "phase_total_principal"), PI) < 1e-10);
    let flags: usize = (0..t.rows.len())
        .map(|i| t.num(i, "crossing_flag") as usize)
        .sum();
    assert_eq!(flags, 1);
    assert!(stdout.contains("crossings: 1 (odd)"), "{stdout}");
    // The overlap vanishes at the crossing, so the phase there is undefined.
    let nan_rows = t
        .rows
        .iter()
        .filter(|r| r[t.col("phase_total_principal")] == "nan")
        .count();
    assert!(nan_rows <= 1);
}

#[test]
fn run_builtins_at_lambda_04() {
    let (minus, _) = run_csv("minus_04.sched", 2000);
    let last = minus.rows.len() - 1;
    assert!(dist(minus.num(last, "phase_total_principal"), PI) < 1e-6);
    let (plus, _) = run_csv("plus_04.sched", 2000);
    assert!(plus.num(plus.rows.len() - 1, "phase_total_principal").abs() < 1e-6);
}

#[test]
fn run_empty_schedule_has_one_row() {
    let (t, _) = run_csv("identity.sched", 2000);
    assert_eq!(t.rows.len(), 1);
    assert_eq!(t.num(0, "t"), 0.0);
    assert_eq!(t.num(0, "phase_total_principal"), 0.0);
}

#[test]
fn run_final_phase_matches_breakdown() {
    for name in [
        "mes_minus.sched",
        "minus_04.sched",
        "plus_04.sched",
        "z_turn_03.sched",
        "equator.sched",
    ] {
        let (t, _) = run_csv(name, 500);
        let b = breakdown_json(name, 500);
        let last = t.num(t.rows.len() - 1, "phase_total_principal");
        assert!((last - b["total"].as_f64().unwrap()).abs() < 1e-10, "{name}");
    }
}

#[test]
fn run_json_format() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("run.json");
    phaselab()
        .arg("run")
        .arg(data("plus_04.sched"))
        .args(["--steps", "3", "--format", "json", "--out"])
        .arg(&out)
        .assert()
        .success();
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let keys: Vec<&str> = rows[0].as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = RUN_HEADER.to_vec();
    expected.sort_unstable();
    let mut keys_sorted = keys.clone();
    keys_sorted.sort_unstable();
    assert_eq!(keys_sorted, expected);
}

#[test]
fn run_warns_but_succeeds_when_not_cyclic() {
    let dir = TempDir::new().unwrap();
    let assert = phaselab()
        .arg("run")
        .arg(data("not_cyclic.sched"))
        .arg("--out")
        .arg(dir.path().join("r.csv"))
        .assert()
        .success();
    assert_stderr_contains(assert, "not cyclic");
}

fn assert_stderr_contains(assert: assert_cmd::assert::Assert, needle: &str) {
    let stderr = String::from_utf8_lossy(&assert.get_output().stderr).into_owned();
    assert!(stderr.contains(needle), "stderr: {stderr}");
}

#[test]
fn breakdown_mes_minus() {
    let b = breakdown_json("mes_minus.sched", 2000);
    let keys: Vec<&str> = b.as_object().unwrap().keys().map(String::as_str).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(
        sorted,
        [
            "closure_residual",
            "crossings",
            "degenerate",
            "dynamical",
            "geometric",
            "parity",
            "total"
        ]
    );
    assert!(dist(b["total"].as_f64().unwrap(), PI) < 1e-10);
    assert_eq!(b["dynamical"].as_f64().unwrap(), 0.0);
    assert_eq!(b["geometric"].as_f64().unwrap(), 0.0);
    assert_eq!(b["crossings"], 1);
    assert_eq!(b["parity"], "odd");
    assert_eq!(b["degenerate"], true);
}

#[test]
fn breakdown_fixed_axis_examples() {
    let b = breakdown_json("z_turn_03.sched", 2000);
    assert!(dist(b["total"].as_f64().unwrap(), PI) < 1e-10);
    assert!(b["closure_residual"].as_f64().unwrap() < 1e-4);

    let b = breakdown_json("equator.sched", 2000);
    assert!(b["dynamical"].as_f64().unwrap().abs() < 1e-12);
    assert!(dist(b["geometric"].as_f64().unwrap(), PI) < 1e-4);
}

#[test]
fn exit_codes() {
    let assert = phaselab()
        .arg("breakdown")
        .arg(data("not_cyclic.sched"))
        .assert()
        .code(3);
    assert_stderr_contains(assert, "not cyclic");
    let assert = phaselab()
        .arg("breakdown")
        .arg(data("bad_axis.sched"))
        .assert()
        .code(2);
    assert_stderr_contains(assert, "line 4");
    phaselab()
        .arg("readout")
        .arg(data("does_not_exist.sched"))
        .assert()
        .code(2);
    phaselab().arg("run").assert().code(1);
    phaselab().arg("frobnicate").assert().code(1);
    phaselab()
        .args(["breakdown", "--steps", "1"])
        .arg(data("mes_minus.sched"))
        .assert()
        .code(1);
    phaselab().arg("--help").assert().success();
}

fn readout(schedule: &str) -> (f64, f64) {
    let assert = phaselab().arg("readout").arg(data(schedule)).assert().success();
    let out = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    let value = |key: &str| -> f64 {
        out.lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .trim()
            .parse()
            .unwrap()
    };
    (value("P:"), value("|cos phi_t|:"))
}

#[test]
fn readout_examples() {
    let (p, c) = readout("identity.sched");
    assert!(p.abs() < 1e-12 && (c - 1.0).abs() < 1e-12);
    let (p, c) = readout("mes_minus.sched");
    assert!((p - 1.0).abs() < 1e-10 && (c - 1.0).abs() < 1e-10);
    let (p, _) = readout("mes_plus.sched");
    assert!(p.abs() < 1e-10);
}

fn sweep(dir: &TempDir, name: &str, args: &[&str], threads: &str) -> PathBuf {
    let out = dir.path().join(name);
    phaselab()
        .arg("sweep")
        .args(args)
        .arg("--out")
        .arg(&out)
        .env("RAYON_NUM_THREADS", threads)
        .assert()
        .success();
    out
}

#[test]
fn sweep_rows_follow_closed_forms() {
    let dir = TempDir::new().unwrap();
    let out = sweep(
        &dir,
        "s.csv",
        &["--lambda0", "0:1:5", "--theta", "0:3.141592653589793:9"],
        "2",
    );
    let t = Table::read(&out);
    assert_eq!(t.header, SWEEP_HEADER);
    assert_eq!(t.rows.len(), 45);
    for i in 0..t.rows.len() {
        let (l0, theta) = (t.num(i, "lambda0"), t.num(i, "theta"));
        assert_eq!(l0, [0.0, 0.25, 0.5, 0.75, 1.0][i / 9]);
        let (geo, dyn_) = (t.num(i, "phi_geo"), t.num(i, "phi_dyn"));
        if l0 == 0.5 {
            // Degenerate: the π is carried by the single crossing instead.
            assert_eq!((geo, dyn_), (0.0, 0.0));
            assert_eq!(t.num(i, "crossings"), 1.0);
        } else {
            assert!(dist(geo + dyn_, PI) < 1e-4);
        }
        if l0 == 1.0 {
            assert!(dist(geo, -PI * (1.0 - theta.cos())) < 1e-4);
        }
        if l0 == 0.0 {
            assert!(dist(geo, -PI * (1.0 + theta.cos())) < 1e-4);
        }
    }
}

#[test]
fn sweep_rejects_bad_ranges() {
    let dir = TempDir::new().unwrap();
    for (l, t) in [
        ("0:1", "0:1:2"),
        ("0:1:0", "0:1:2"),
        ("0:2:3", "0:1:2"),
        ("0:1:2", "x:1:2"),
    ] {
        phaselab()
            .args(["sweep", "--lambda0", l, "--theta", t, "--out"])
            .arg(dir.path().join("s.csv"))
            .assert()
            .code(2);
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = [
        "--lambda0",
        "0:1:4",
        "--theta",
        "0:3:4",
        "--axis",
        "y",
        "--turns",
        "2",
        "--steps",
        "300",
    ];
    let a = sweep(&dir, "a.csv", &args, "1");
    let b = sweep(&dir, "b.csv", &args, "4");
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());

    let mut files = Vec::new();
    for name in ["r1.csv", "r2.csv"] {
        let out = dir.path().join(name);
        phaselab()
            .arg("run")
            .arg(data("z_turn_03.sched"))
            .args(["--steps", "300", "--out"])
            .arg(&out)
            .assert()
            .success();
        files.push(fs::read(out).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

/// Same header, same shape, every number within 1e-12 of the stored file.
fn assert_matches_golden(actual: &Path, golden: &Path) {
    let a = Table::read(actual);
    let g = Table::read(golden);
    assert_eq!(a.header, g.header);
    assert_eq!(a.rows.len(), g.rows.len());
    for (ra, rg) in a.rows.iter().zip(&g.rows) {
        for (x, y) in ra.iter().zip(rg) {
            let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
            assert!((x.is_nan() && y.is_nan()) || (x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }
}

#[test]
fn golden_run() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("run.csv");
    phaselab()
        .arg("run")
        .arg(data("plus_04.sched"))
        .args(["--steps", "5", "--out"])
        .arg(&out)
        .assert()
        .success();
    assert_matches_golden(&out, &golden("plus_04_steps5.csv"));
}

#[test]
fn golden_sweep() {
    let dir = TempDir::new().unwrap();
    let args = [
        "--lambda0",
        "0:1:5",
        "--theta",
        "0:3.141592653589793:5",
        "--axis",
        "x",
        "--steps",
        "200",
    ];
    let out = sweep(&dir, "s.csv", &args, "3");
    assert_matches_golden(&out, &golden("sweep_x_5x5.csv"));
}
