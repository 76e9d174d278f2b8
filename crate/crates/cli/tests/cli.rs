use std::process::{Command, Output};

use moving_qubits_cli::presets::{preset, PresetKind, PRESET_IDS};
use moving_qubits_cli::RunConfig;

fn mqe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mqe")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mqe(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').filter(|c| !c.is_empty()).map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn presets_are_deterministic_and_thread_independent() {
    let a = stdout(&["preset", "fig9b"]);
    assert_eq!(a, stdout(&["preset", "fig9b"]));
    assert_eq!(a, stdout(&["--sequential", "preset", "fig9b"]));
}

#[test]
fn every_preset_emits_concurrences_in_unit_interval() {
    for id in PRESET_IDS {
        let csv = stdout(&["preset", id]);
        let rows = data_rows(&csv);
        assert!(!rows.is_empty(), "{id}");
        let skip = match preset(id).unwrap().kind {
            PresetKind::Curves { .. } => 1,
            PresetKind::Surface { .. } => 3,
            PresetKind::Graph { .. } => 2,
        };
        for r in rows {
            assert!(r[skip..].iter().all(|v| (0.0..=1.0).contains(v)), "{id}: {r:?}");
        }
    }
}

#[test]
fn config_echo_round_trips() {
    for id in PRESET_IDS {
        let PresetKind::Curves { configs, .. } = preset(id).unwrap().kind else { continue };
        let csv = stdout(&["preset", id]);
        let echoed: Vec<RunConfig> = csv
            .lines()
            .filter_map(|l| l.strip_prefix("# config["))
            .map(|l| RunConfig::from_json(l.split_once("]: ").unwrap().1).unwrap())
            .collect();
        assert_eq!(echoed, configs, "{id}");
    }
}

#[test]
fn fig4a_has_three_velocity_curves() {
    let csv = stdout(&["preset", "fig4a"]);
    let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "tau,beta=0,beta=2e-9,beta=4e-9");
    assert!(csv.contains("\"R\":0.1") && csv.contains("\"s\":0.0") && csv.contains("\"r1\":0.87"));
}

#[test]
fn fig13b_is_a_star() {
    let rows = data_rows(&stdout(&["preset", "fig13b"]));
    let n = 5.0;
    assert_eq!(rows.len(), 10);
    for r in rows {
        let expected = if r[0] == 0.0 { 2.0 * (n - 1.0) / (n * n) } else { 2.0 / (n * n) };
        assert!((r[2] - expected).abs() < 1e-15, "{r:?}");
    }
}

#[test]
fn usage_errors_exit_with_one() {
    let out = mqe(&["preset", "fig99"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("fig2a") && err.contains("fig13b"));
    assert_eq!(mqe(&["sweep", "--r1-range", "0.2:0.1:5"]).status.code(), Some(1));
    assert_eq!(mqe(&["sweep", "--tau-steps", "1", "--mode", "dynamic"]).status.code(), Some(1));
    assert_eq!(mqe(&["stationary-table", "--n-range", "7:3"]).status.code(), Some(1));
    assert_eq!(mqe(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn stationary_sweep_reports_maxima() {
    let zero = stdout(&["sweep", "--r1-range", "0:1:21", "--s-range", "-1:1:21"]);
    let line = zero.lines().find(|l| l.starts_with("# refined max")).unwrap();
    let value: f64 = line.split_whitespace().nth(3).unwrap().parse().unwrap();
    assert!((value - 3.0 * 3f64.sqrt() / 8.0).abs() < 1e-9, "{line}");
    let pi = stdout(&["sweep", "--phi", "3.141592653589793", "--r1-range", "0:1:21", "--s-range", "-1:1:21"]);
    let line = pi.lines().find(|l| l.starts_with("# refined max")).unwrap();
    let value: f64 = line.split_whitespace().nth(3).unwrap().parse().unwrap();
    assert!((value - 1.0).abs() < 1e-9, "{line}");
}

#[test]
fn dynamic_sweep_long_format() {
    let csv = stdout(&[
        "sweep",
        "--mode",
        "dynamic",
        "--r1-range",
        "0:1:3",
        "--s-range",
        "-1:1:3",
        "--betas",
        "0,2e-9",
        "--tau-steps",
        "4",
        "--tau-max",
        "3",
        "--R",
        "10",
    ]);
    assert_eq!(data_rows(&csv).len(), 3 * 3 * 2 * 4);
}

#[test]
fn oracle_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("vol.json");
    let out = mqe(&["oracle-compare", "--preset", "fig4a", "--tau-max", "50", "--out", report.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["max_abs_error"].as_f64().unwrap() < 1e-4);
    assert!(v["rms_error"].as_f64().is_some() && v["runtime"].as_f64().is_some());

    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"scenario":"oracle-compare","R":0.0,"tau_max":5.0,"betas":[0.0]}"#).unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["oracle-compare", "--config", cfg.to_str().unwrap()])).unwrap();
    assert!(v["max_abs_error"].as_f64().unwrap() < 1e-12);

    // A coarse step in the good cavity misses the contract: report plus exit code 2.
    let out = mqe(&["oracle-compare", "--R", "10", "--oracle-dt", "0.1", "--tau-max", "20", "--betas", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(false));
}

#[test]
fn discrete_oracle_meets_contract_on_fig4a() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "oracle-compare",
        "--preset",
        "fig4a",
        "--oracle",
        "discrete",
        "--tau-max",
        "20",
        "--betas",
        "2e-9",
    ]))
    .unwrap();
    assert!(v["max_abs_error"].as_f64().unwrap() < 5e-2);
}

#[test]
fn table_and_graph() {
    let rows = data_rows(&stdout(&["stationary-table", "--scenario", "one-excitation", "--n-range", "3:5"]));
    for r in rows {
        let n = r[0];
        assert!((r[1] - 2.0 * (n - 1.0) / (n * n)).abs() < 1e-15);
    }
    let rows = data_rows(&stdout(&["graph", "--n", "6"]));
    assert_eq!(rows.len(), 15);
    assert!((rows[0][2] - 4.0 / 9.0).abs() < 1e-15);
}
