use std::process::{Command, Output};

use qdot_cli::output::{parse_csv, parse_json, RecordKind, Table};

fn qdot(args: &[&str]) -> Output {
    qdot_env(args, &[])
}

fn qdot_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qdot"));
    cmd.args(args);
    for var in ["QDOT_RMIN", "QDOT_RMAX", "QDOT_STEPS", "QDOT_TOL"] {
        cmd.env_remove(var);
    }
    cmd.envs(env.iter().copied());
    cmd.output().expect("qdot runs")
}

fn tables(out: &Output) -> Vec<Table> {
    parse_csv(&String::from_utf8_lossy(&out.stdout)).expect("valid csv")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn poly_n1() {
    let out = qdot(&["poly", "--n", "1", "--l", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let t = tables(&out);
    assert_eq!(t[0].kind, RecordKind::HeunRoot);
    assert!((t[0].column("t")[0] - std::f64::consts::SQRT_2).abs() < 1e-11);
    assert_eq!(t[0].column("omega"), vec![0.5]);
    assert_eq!(t[0].column("eta"), vec![2.0]);
    assert_eq!(t[1].column("coefficient"), vec![1.0, 1.0]);
}

#[test]
fn poly_even_degree_mentions_asymptotic_root() {
    let out = qdot(&["poly", "--n", "2", "--l", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("t = 0"));
    assert!(tables(&out)[0].metadata.contains_key("asymptotic"));
}

#[test]
fn poly_samples_follow_the_default_grid() {
    let out = qdot(&[
        "poly",
        "--n",
        "3",
        "--l",
        "0",
        "--root-index",
        "1",
        "--samples",
        "--stride",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let t = tables(&out);
    assert_eq!(t.len(), 3);
    assert_eq!(t[2].kind, RecordKind::WavefunctionSample);
    assert_eq!(t[2].rows.len(), 200);
    assert!(t[2].column("u").iter().all(|u| *u >= 0.0));
}

#[test]
fn poly_usage_errors() {
    assert_eq!(qdot(&["poly", "--n", "0", "--l", "0"]).status.code(), Some(2));
    assert_eq!(qdot(&["poly", "--n", "21", "--l", "0"]).status.code(), Some(2));
    assert_eq!(
        qdot(&["poly", "--n", "3", "--l", "0", "--root-index", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qdot(&["poly", "--l", "0"]).status.code(), Some(2));
}

#[test]
fn spectrum_coulomb() {
    let out = qdot(&[
        "spectrum",
        "--potential",
        "coulomb",
        "--omega",
        "0.01",
        "--l",
        "0",
        "--eta-min",
        "0",
        "--eta-max",
        "0.3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let t = tables(&out);
    let eta = t[0].column("eta");
    assert!((eta[0] / 0.1053 - 1.0).abs() < 0.01);
    assert_eq!(
        t[0].column("nodes"),
        (0..eta.len()).map(|k| k as f64).collect::<Vec<_>>()
    );
    assert_eq!(t[0].metadata["potential"], "coulomb");
}

#[test]
fn spectrum_oscillator_is_evenly_spaced() {
    let out = qdot(&[
        "spectrum",
        "--potential",
        "none",
        "--omega",
        "0.01",
        "--l",
        "0",
        "--eta-min",
        "0",
        "--eta-max",
        "0.2",
    ]);
    let eta = tables(&out)[0].column("eta");
    assert_eq!(eta.len(), 5);
    for pair in eta.windows(2) {
        assert!((pair[1] - pair[0] - 0.04).abs() < 1e-6);
    }
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let args = [
        "spectrum",
        "--potential",
        "log",
        "--omega",
        "0.1",
        "--l",
        "1",
        "--eta-min",
        "0",
        "--eta-max",
        "3",
        "--wavefunctions",
        "--stride",
        "500",
    ];
    let csv = tables(&qdot(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json = parse_json(&String::from_utf8_lossy(&qdot(&json_args).stdout)).unwrap();
    assert_eq!(csv, json);
    assert_eq!(csv[1].kind, RecordKind::WavefunctionSample);
}

#[test]
fn empty_spectrum_is_not_an_error() {
    let out = qdot(&[
        "spectrum",
        "--potential",
        "none",
        "--omega",
        "0.1",
        "--l",
        "0",
        "--eta-min",
        "0.21",
        "--eta-max",
        "0.59",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(tables(&out)[0].rows.is_empty());
    assert!(stderr(&out).contains("no eigenvalue"));
}

#[test]
fn spectrum_usage_and_numerical_errors() {
    let base = [
        "spectrum",
        "--omega",
        "0.1",
        "--l",
        "0",
        "--eta-min",
        "0",
        "--eta-max",
        "1",
    ];
    let mut bad = base.to_vec();
    bad.extend(["--potential", "yukawa"]);
    assert_eq!(qdot(&bad).status.code(), Some(2));
    let mut coarse = base.to_vec();
    coarse.extend(["--potential", "none", "--steps", "10"]);
    assert_eq!(qdot(&coarse).status.code(), Some(2));
    let mut tight = base.to_vec();
    tight.extend(["--potential", "none", "--tol", "1e-300"]);
    assert_eq!(qdot(&tight).status.code(), Some(4));
}

#[test]
fn flags_override_environment() {
    let args = [
        "spectrum",
        "--potential",
        "none",
        "--omega",
        "1",
        "--l",
        "0",
        "--eta-min",
        "0",
        "--eta-max",
        "3",
    ];
    let from_env = tables(&qdot_env(&args, &[("QDOT_STEPS", "5000"), ("QDOT_RMAX", "30")]));
    assert_eq!(from_env[0].metadata["grid"], "r_min=0.001 r_max=30 steps=5000");
    let mut with_flag = args.to_vec();
    with_flag.extend(["--steps", "6000"]);
    let flagged = tables(&qdot_env(&with_flag, &[("QDOT_STEPS", "5000")]));
    assert!(flagged[0].metadata["grid"].ends_with("steps=6000"));
}

#[test]
fn bound_rejects_angular_momentum() {
    let out = qdot(&["bound", "--potential", "coulomb", "--omega", "0.01", "--l", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("l = 0"));
}

#[test]
fn bound_at_calibrated_cutoff() {
    let out = qdot(&[
        "bound",
        "--potential",
        "coulomb",
        "--omega",
        "0.01",
        "--rmin",
        "1.954442e-3",
        "--stride",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let t = tables(&out);
    assert_eq!(t[0].metadata["inner_boundary"], "cutoff-seed");
    let eta = t[0].column("eta");
    assert!((eta[0] / -63.92 - 1.0).abs() < 1e-3, "{eta:?}");
    assert_eq!(t[1].kind, RecordKind::WavefunctionSample);
}

#[test]
fn validate_table1() {
    let out = qdot(&["validate", "--table", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let t = tables(&out);
    assert_eq!(t[0].rows.len(), 27);
    assert!(stderr(&out).contains("PASS table1: 27/27"));
}

#[test]
fn validate_table2_annotates_misprint() {
    let out = qdot(&["validate", "--table", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let t = &tables(&out)[0];
    let annotated: Vec<_> = t
        .rows
        .iter()
        .filter(|r| r[8] != qdot_cli::output::Value::text(""))
        .collect();
    assert_eq!(annotated.len(), 1);
    assert_eq!(annotated[0][1], qdot_cli::output::Value::text("n=10"));
}

#[test]
fn validate_exit_code_reflects_failures() {
    let dir = std::env::temp_dir().join(format!("qdot-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = qdot_core::validation::Expectations::embedded_text();
    let wrong = dir.join("wrong.txt");
    std::fs::write(&wrong, good.replace("table1/n=1/l=0 = sqrt(2)", "table1/n=1/l=0 = 1.5")).unwrap();
    let out = qdot(&["validate", "--table", "1", "--expectations", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let broken = dir.join("broken.txt");
    std::fs::write(&broken, "table1/n=1/l=0 sqrt(2)\n").unwrap();
    let out = qdot(&["validate", "--table", "1", "--expectations", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"));

    let missing = dir.join("does-not-exist.txt");
    assert_eq!(
        qdot(&["validate", "--expectations", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qdot(&["validate", "--table", "7"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unreachable_calibration_is_inconclusive() {
    let dir = std::env::temp_dir().join(format!("qdot-cli-bound-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("deep.txt");
    let text =
        qdot_core::validation::Expectations::embedded_text().replace("bound/coulomb = -63.92", "bound/coulomb = -1e7");
    std::fs::write(&path, text).unwrap();
    let out = qdot(&["validate", "--table", "bound", "--expectations", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let t = tables(&out);
    assert!(t[0].metadata["status"].starts_with("inconclusive"));
    assert_eq!(t[1].kind, RecordKind::CutoffScan);
    assert_eq!(t[1].rows.len(), qdot_core::validation::SCAN_POINTS);
    std::fs::remove_dir_all(&dir).ok();
}
