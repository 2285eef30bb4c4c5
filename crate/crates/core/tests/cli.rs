use std::process::{Command, Output};

use kgstep::output::{parse_csv, parse_ndjson, Token};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgstep"))
        .args(args)
        .output()
        .expect("spawn kgstep")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_rows(out: &Output) -> Vec<serde_json::Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn num(v: &serde_json::Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} not a number in {v}"))
}

#[test]
fn classify_regime_c() {
    let out = run(&["classify", "--energy", "2", "--v0", "4", "--gt", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json_rows(&out)[0];
    assert_eq!(row["regime"], "C");
    assert_eq!(num(row, "v_c"), 3.0);
    assert_eq!(num(row, "v_m"), 2.0);
}

#[test]
fn classify_infinite_threshold_as_string() {
    let out = run(&["classify", "--energy", "2", "--v0", "4", "--gt", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json_rows(&out)[0];
    assert_eq!(row["regime"], "B");
    assert_eq!(row["v_c"], "inf");
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        &["classify", "--energy", "0.5", "--v0", "1", "--gt", "1"][..],
        &["classify", "--energy", "2", "--v0", "0", "--gt", "1"],
        &["classify", "--energy", "2", "--v0", "1", "--gt", "1.5"],
        &["scatter", "--energy", "1", "--v0", "1", "--gt", "1"],
        &["sweep", "--param", "energy", "--start", "3", "--stop", "2", "--points", "5", "--v0", "1", "--gt", "1"],
        &["classify", "--energy", "nope", "--v0", "1", "--gt", "1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} gave no diagnostic");
    }
}

#[test]
fn scatter_regime_a_fixture() {
    let out = run(&["scatter", "--energy", "3", "--v0", "1", "--gt", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json_rows(&out)[0];
    assert!((num(row, "R") - 0.057796105403).abs() < 1e-11);
    assert!((num(row, "R") + num(row, "T") - 1.0).abs() < 1e-11);
}

#[test]
fn scatter_klein_paradox() {
    let out = run(&["scatter", "--energy", "2", "--v0", "5", "--gt", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = parse_csv(&stdout(&out)).unwrap();
    let r = recs[0]["R"].as_f64().unwrap();
    let t = recs[0]["T"].as_f64().unwrap();
    assert!((r - 17.3022038946).abs() < 1e-9 && (t + 16.3022038946).abs() < 1e-9);
    assert!((r - 17.31).abs() < 1e-2 && (t + 16.31).abs() < 1e-2);
}

#[test]
fn scatter_pole_exit_3_structured() {
    let out = run(&["scatter", "--energy", "2", "--v0", "4", "--gt", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let row = &json_rows(&out)[0];
    assert_eq!(row["status"], "pole");
    assert!(row["error"].as_str().unwrap().contains("k = kappa"));
}

#[test]
fn scatter_boundary_exit_3() {
    let out = run(&["scatter", "--energy", "2", "--v0", "3", "--gt", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_rows(&out)[0]["status"], "boundary");
}

#[test]
fn sweep_gt_single_transition_at_pair_threshold() {
    let out = run(&[
        "sweep", "--param", "g_t", "--start", "0", "--stop", "1", "--points", "101",
        "--energy", "2", "--v0", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_rows(&out);
    assert_eq!(rows.len(), 101);
    let regimes: Vec<_> = rows.iter().map(|r| r["regime"].as_str().unwrap().to_owned()).collect();
    let first_c = regimes.iter().position(|r| r == "C").unwrap();
    assert!(regimes[..first_c - 1].iter().all(|r| r == "B"));
    assert_eq!(regimes[first_c - 1], "boundary");
    assert!((num(&rows[first_c - 1], "gt") - 0.8).abs() < 1e-12);
    assert!(regimes[first_c..].iter().all(|r| r == "C"));
    for row in rows.iter().filter(|r| r["status"] == "ok") {
        assert!((num(row, "R") + num(row, "T") - 1.0).abs() < 1e-9);
    }
}

#[test]
fn sweep_step_height_delta_x_minimum() {
    // (ε−1, v_c) = (1, 3) at ε = 2, g_t = 1
    let out = run(&[
        "sweep", "--param", "v0", "--start", "1.01", "--stop", "2.99", "--points", "199",
        "--energy", "2", "--gt", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_rows(&out);
    let (u, _) = rows
        .iter()
        .map(|r| (num(r, "v0"), num(r, "delta_x")))
        .fold((f64::NAN, f64::INFINITY), |acc, (u, d)| if d < acc.1 { (u, d) } else { acc });
    assert!((u - 2.0).abs() < 1e-9, "argmin {u}");
}

#[test]
fn sweep_two_points() {
    let out = run(&[
        "sweep", "--param", "energy", "--start", "2", "--stop", "3", "--points", "2",
        "--v0", "1", "--gt", "1", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(parse_csv(&stdout(&out)).unwrap().len(), 2);
}

#[test]
fn profile_regime_c_negative_density() {
    let out = run(&[
        "profile", "--energy", "2", "--v0", "5", "--gt", "1", "--xmin", "-5", "--xmax", "5",
        "--samples", "201",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_rows(&out);
    let j0 = num(&rows[0], "J");
    for r in &rows {
        if num(r, "x") > 0.0 {
            assert!(num(r, "rho") < 0.0);
        }
        assert!((num(r, "J") - j0).abs() < 1e-9);
    }
}

#[test]
fn profile_regime_b_zero_current() {
    let out = run(&[
        "profile", "--energy", "2", "--v0", "2", "--gt", "1", "--xmin", "-5", "--xmax", "5",
        "--samples", "101", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for r in parse_csv(&stdout(&out)).unwrap() {
        assert!(r["J"].as_f64().unwrap().abs() <= 1e-12);
    }
}

#[test]
fn profile_free_plane_wave() {
    let out = run(&[
        "profile", "--energy", "2.5", "--v0", "0", "--gt", "1", "--xmin", "-3", "--xmax", "3",
        "--samples", "13",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for r in json_rows(&out) {
        assert!((num(&r, "rho") - 2.5).abs() < 1e-12);
    }
}

#[test]
fn oracle_compare_regime_a() {
    let out = run(&[
        "oracle-compare", "--energy", "3", "--v0", "1", "--gt", "1", "--widths", "0.1,0.01,0.001",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_rows(&out);
    let errs: Vec<f64> = rows.iter().map(|r| num(r, "abs_error")).collect();
    assert!(errs.windows(2).all(|w| w[1] <= w[0]));
    assert!(errs[2] <= 1e-3);
}

#[test]
fn oracle_compare_regime_b_reflects_fully() {
    let out = run(&[
        "oracle-compare", "--energy", "2", "--v0", "2", "--gt", "1", "--widths", "0.1,0.01",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for r in json_rows(&out) {
        assert!((num(&r, "R_numeric") - 1.0).abs() <= 1e-6);
    }
}

#[test]
fn oracle_compare_increasing_widths_exit_2() {
    let out = run(&[
        "oracle-compare", "--energy", "3", "--v0", "1", "--gt", "1", "--widths", "0.001,0.01",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn threshold_sweeps_energy() {
    let out = run(&[
        "threshold", "--v0", "4", "--gt", "1", "--start", "1.5", "--stop", "3", "--points", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_rows(&out);
    assert_eq!(rows.len(), 4);
    for r in &rows {
        assert!((num(r, "v_c") - (num(r, "energy") + 1.0)).abs() < 1e-12);
    }
}

#[test]
fn output_is_byte_deterministic() {
    let args = [
        "sweep", "--param", "energy", "--start", "1.1", "--stop", "10", "--points", "257",
        "--v0", "3.3", "--gt", "0.7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn csv_rows_round_trip_through_json() {
    let base = [
        "sweep", "--param", "g_t", "--start", "0", "--stop", "1", "--points", "21",
        "--energy", "2", "--v0", "5",
    ];
    let json = run(&base);
    let csv = run(&[&base[..], &["--format", "csv"]].concat());
    let from_json = parse_ndjson(&stdout(&json)).unwrap();
    let from_csv = parse_csv(&stdout(&csv)).unwrap();
    assert_eq!(from_json.len(), from_csv.len());
    for (j, c) in from_json.iter().zip(&from_csv) {
        assert_eq!(j, c);
    }
    assert!(from_csv.iter().any(|r| r.get("R") == Some(&Token::Null)));
}

#[test]
fn si_display_scales_outputs_not_inputs() {
    let out = run(&["--unit-system", "si", "classify", "--energy", "2", "--v0", "4", "--gt", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json_rows(&out)[0];
    assert_eq!(row["regime"], "C");
    assert!(num(row, "v_c") < 1e-12 && num(row, "v_c") > 0.0);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("kgstep-cli-{}.csv", std::process::id()));
    let out = run(&[
        "--out", path.to_str().unwrap(), "--format", "csv", "classify", "--energy", "2", "--v0",
        "4", "--gt", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("energy,"));
}
