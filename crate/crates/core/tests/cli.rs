use std::fs;
use std::process::{Command, Output};

use tmcc::sweep::{render_csv, render_json, run_preset, Dataset, CSV_HEADER};

fn tmcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmcc")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn lists_presets() {
    let out = tmcc(&["--list-presets"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["fig1", "fig8", "fig10a", "fig10b"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{text}");
    }
}

#[test]
fn unknown_preset_exits_2() {
    let out = tmcc(&["--preset", "fig99"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fig1"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tmcc(&["--bogus"]).status.code(), Some(2));
    assert_eq!(tmcc(&["--preset", "fig1", "--config", "x.cfg"]).status.code(), Some(2));
    assert_eq!(tmcc(&["--set", "spin.Q=1"]).status.code(), Some(2));
}

#[test]
fn bad_config_names_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    fs::write(&path, "[spin]\nJ = 1\nJz = 2\n").unwrap();
    let out = tmcc(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("Jz"), "{err}");
}

#[test]
fn domain_error_exits_3() {
    let out = tmcc(&["--set", "spin.T=-1", "--steps", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_config_and_unwritable_output_exit_4() {
    assert_eq!(tmcc(&["--config", "/nonexistent/run.cfg"]).status.code(), Some(4));
    let out = tmcc(&["--steps", "3", "--out", "/nonexistent/dir/out.csv"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn grid_options_and_overrides() {
    let out = tmcc(&["--preset", "fig1", "--steps", "4", "--tmax", "3", "--set", "sweep.values=2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 5);
    let times: Vec<_> = lines[1..].iter().map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(times, ["0", "1", "2", "3"]);
    assert!(lines[1..].iter().all(|l| l.starts_with("Delta_Q,2,")));
}

#[test]
fn config_file_and_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "[spin]\nT = 0.5\n[sweep]\nvaried = B; values = 1, 5\nsteps = 3\nmeasures = NG, FID2\n").unwrap();
    let out_path = dir.path().join("out.json");
    let out = tmcc(&["--config", cfg.to_str().unwrap(), "--format", "json", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let d: Dataset = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(d.rows.len(), 6);
    assert_eq!(d.metadata.spin.temperature, 0.5);
    assert_eq!(d.metadata.channel.delta_o, 1.0);
    assert!(d.rows.iter().all(|r| r.record.ng.is_some() && r.record.eu.is_none() && r.record.fid2.is_some()));
}

#[test]
fn csv_marks_absent_measures_empty() {
    let out = tmcc(&["--preset", "fig10b", "--steps", "2"]);
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<_> = row.split(',').collect();
    assert_eq!(fields.len(), 9);
    assert!(fields[3..8].iter().all(|f| f.is_empty()));
    assert!(!fields[8].is_empty());
}

#[test]
fn binary_matches_library() {
    let out = tmcc(&["--preset", "fig10a", "--steps", "5"]);
    let spec = tmcc::sweep::preset_spec("fig10a", &["sweep.steps=5"]).unwrap();
    let d = tmcc::sweep::run_preset_with("fig10a", &spec).unwrap();
    assert_eq!(stdout(&out), render_csv(&d));
}

#[test]
fn json_round_trip_is_exact() {
    let d = run_preset("fig8").unwrap();
    let text = render_json(&d);
    let back: Dataset = serde_json::from_str(&text).unwrap();
    assert!(back == d, "JSON round trip changed the dataset");
    assert_eq!(back.metadata.notes, d.metadata.notes);
    assert_eq!(back.metadata.preset.as_deref(), Some("fig8"));
}
