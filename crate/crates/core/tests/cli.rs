use std::process::{Command, Output};

fn spinxy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinxy")).args(args).env_remove("SPINXY_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn sweep_writes_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ef.csv");
    let o = spinxy(&["sweep", "--gamma", "0", "--lambda", "1.5:2:3", "--pairs", "1,2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let parsed = spinxy::SweepResult::parse_csv(&text).unwrap();
    assert_eq!(parsed.rows.len(), 3);
    assert_eq!(parsed.rows[2].value, 0.0);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(&path, r#"{"lattice":"chain7","gamma":0.5,"lambda_grid":{"min":0,"max":1,"steps":2},"pairs":[[1,2]],"quantities":["EF"]}"#).unwrap();
    let o = spinxy(&["sweep", "--config", path.to_str().unwrap(), "--gamma", "1", "--threads", "2"]);
    assert!(o.status.success());
    let parsed = spinxy::SweepResult::parse_csv(&stdout(&o)).unwrap();
    assert_eq!(parsed.config.gamma, 1.0);
    assert_eq!(parsed.config.lattice, spinxy::LatticeKind::Chain7);
}

#[test]
fn threshold_and_ge_subcommands() {
    let o = spinxy(&["threshold", "--lambda", "20", "--pairs", "1,2"]);
    assert!(o.status.success());
    let t = spinxy::SweepResult::parse_csv(&stdout(&o)).unwrap();
    assert!((t.rows[0].value - 9.1).abs() < 0.05);

    let o = spinxy(&["ge", "--lambda", "5", "--ge-samples", "4096", "--ge-refine", "50", "--seed", "3"]);
    assert!(o.status.success());
    let g = spinxy::SweepResult::parse_csv(&stdout(&o)).unwrap();
    assert_eq!(g.rows.len(), 1);
    assert_eq!(g.config.ge.refine_iters, 50);
    assert_eq!(g.meta.seed, 3);
}

#[test]
fn convert_prints_kelvin_and_tesla() {
    let o = spinxy(&["convert", "--kt", "1", "--field", "1", "--j-mev", "0.001"]);
    assert!(o.status.success());
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
    assert!((cols[4] - 1.16e-2).abs() < 1e-4);
    assert!((cols[5] - 1.73e-2).abs() < 1e-4);
}

#[test]
fn oracle_subcommand_passes() {
    let o = spinxy(&["oracle"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("name,max_abs_error,tolerance,passed"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn exit_codes() {
    assert_eq!(spinxy(&["sweep", "--gamma", "3", "--lambda", "1"]).status.code(), Some(1));
    assert_eq!(spinxy(&["sweep", "--pairs", "1,2"]).status.code(), Some(1));
    assert_eq!(spinxy(&["sweep", "--config", "/nonexistent.json", "--lambda", "1"]).status.code(), Some(1));
    assert_eq!(spinxy(&["convert", "--j-mev", "0"]).status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_spinxy"))
        .args(["sweep", "--lambda", "1"])
        .env("SPINXY_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn chain_alpha_warns() {
    let o = spinxy(&["sweep", "--lattice", "chain", "--alpha", "0.5", "--lambda", "1"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}
