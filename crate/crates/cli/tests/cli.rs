use std::process::{Command, Output};

fn hyperball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperball")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn heat_on_a_radial_grid() {
    let o = hyperball(&["eval", "heat", "--t", "0.5", "--z", "0", "--w-grid", "radial:0:0.8:9"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# hyperball"));
    let header = lines.next().unwrap();
    assert!(header.contains("value_re") && header.contains("diag_flag"));
    assert_eq!(lines.count(), 9);
}

#[test]
fn json_output_has_rows() {
    let o = hyperball(&["eval", "resolvent", "--xi", "2", "--z", "0.1+0.2i", "--w", "-0.3+0.1i", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "resolvent");
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn density_vanishes_below_zero() {
    let o = hyperball(&["eval", "density", "--s", "-1", "--z", "0", "--w", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    let header: Vec<&str> = lines[1].split(',').collect();
    let row: Vec<&str> = lines[2].split(',').collect();
    for col in ["value_re", "value_im"] {
        let i = header.iter().position(|h| *h == col).unwrap();
        assert_eq!(row[i].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn wave_outside_its_regime_is_refused() {
    let o = hyperball(&["eval", "wave", "--t", "0.1", "--z", "0", "--w", "0.9+0i"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(hyperball(&["eval", "nope", "--z", "0", "--w", "0"]).status.code(), Some(1));
    assert_eq!(hyperball(&["verify", "nope"]).status.code(), Some(1));
    assert_eq!(hyperball(&["eval", "heat", "--bogus"]).status.code(), Some(1));
    assert_eq!(hyperball(&["eval", "heat", "--z", "0", "--w", "0"]).status.code(), Some(1));
    assert_eq!(hyperball(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_rejects_unknown_keys() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("bad_config.json");
    std::fs::write(&path, r#"{"params": {"n": 1, "nu": 2.5}, "colour": "blue"}"#).unwrap();
    let o = hyperball(&["eval", "heat", "--t", "1", "--z", "0", "--w", "0", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn degenerate_time_passes_and_writes_report() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("prop61_t0");
    let o = hyperball(&["verify", "prop61", "--t", "0", "--x", "0.1", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("prop61.json")).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 7);
}
