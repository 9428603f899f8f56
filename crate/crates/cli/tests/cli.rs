use std::fs;
use std::process::{Command, Output};

fn fopa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fopa")).args(args).env_remove("FOPA_WORKERS").output().expect("spawn fopa")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sweep_writes_csv_with_header() {
    let out = fopa(&["sweep", "--param", "R", "--from", "0", "--to", "0.2", "--steps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "R,qcrb-single-ideal,status");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,0.098"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",ok")));
}

#[test]
fn total_loss_is_reported_per_row() {
    let out = fopa(&["sweep", "--eta", "0", "--quantity", "qcrb-two-loss", "--steps", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert_eq!(row["status"], "InfiniteBound");
    }
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.json");
    let target = dir.path().join("out.csv");
    fs::write(&config, r#"{"param": "alpha", "from": 1, "to": 2, "steps": 5, "m": 1, "n": 1}"#).unwrap();
    let out = fopa(&["sweep", "--config", config.to_str().unwrap(), "--steps", "2", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&target).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "alpha,qcrb-single-ideal,status");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,") && lines[2].starts_with("2,"));
}

#[test]
fn invalid_specs_exit_with_usage_code() {
    for args in [
        &["sweep", "--steps", "1"][..],
        &["sweep", "--eta", "1.5"],
        &["sweep", "--quantity", "nonsense"],
        &["figure", "fig99"],
        &["r-opt", "--g", "-1"],
    ] {
        let out = fopa(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }

    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    fs::write(&config, r#"{"stpes": 10}"#).unwrap();
    let out = fopa(&["sweep", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quick_verification_passes() {
    let out = fopa(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));
}

#[test]
fn injected_fault_fails_verification() {
    let out = fopa(&["verify", "--inject-fault", "loss-sign", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], false);
    let failed: Vec<_> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(failed, ["loss-reductions"]);
}

#[test]
fn r_opt_prints_closed_form() {
    let out = fopa(&["r-opt", "--g", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r: f64 = stdout(&out).trim().parse().unwrap();
    assert!((r - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
}

#[test]
fn figure_subpanel_columns() {
    let out = fopa(&["figure", "fig13", "--m", "1", "--n", "1", "--steps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("eta,R0,R0.17,R0.3,R0.4"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn worker_count_does_not_change_output() {
    let args = ["sweep", "--quantity", "qcrb-two-loss", "--eta", "0.8", "--steps", "7"];
    let one = fopa(&[&["--workers", "1"][..], &args].concat());
    let four = fopa(&[&["--workers", "4"][..], &args].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}
