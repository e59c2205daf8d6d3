// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use symdepol::scenario::{ScenarioConfig, ScenarioName};
use symdepol::zoo::depolarizing_qubit_cpm;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symdepol"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn shipped_config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{name}.json"))
}

fn stderr_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().expect("stderr has an error line");
    serde_json::from_str(line).expect("stderr is JSON")
}

#[test]
fn shipped_configs_are_the_templates() {
    for name in ScenarioName::ALL {
        let cfg = ScenarioConfig::from_path(&shipped_config(name.as_str())).unwrap();
        assert_eq!(cfg, ScenarioConfig::template(name));
    }
}

#[test]
fn every_default_scenario_passes() {
    let dir = tempfile::tempdir().unwrap();
    for name in ScenarioName::ALL {
        let cfg = shipped_config(name.as_str());
        let out = run(&[
            "scenario",
            name.as_str(),
            "--config",
            cfg.to_str().unwrap(),
            "--out-dir",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["scenario"], name.as_str());
        assert_eq!(report["pass"], true);
        let on_disk = fs::read_to_string(dir.path().join(format!("{name}_report.json"))).unwrap();
        assert_eq!(on_disk.as_bytes(), out.stdout.as_slice());
        assert!(dir.path().join(format!("{name}.csv")).exists());
    }
}

#[test]
fn bloch_shrink_writes_bloch_columns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = shipped_config("bloch_shrink");
    let out = run(&["scenario", "bloch_shrink", "--config", cfg.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("bloch_shrink.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("t,sx,sy,sz"));
    assert!(!csv.contains('\r'));
}

#[test]
fn malformed_config_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, "{\"version\": 1,").unwrap();
    let out = run(&["scenario", "bloch_shrink", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "parse");

    fs::write(&path, r#"{"version": 1, "scenario": "bloch_shrink", "surprise": true}"#).unwrap();
    let out = run(&["scenario", "bloch_shrink", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["scenario", "bloch_shrink", "--config", "/nonexistent/c.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "io");

    let out = run(&["scenario", "nope", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "usage");
}

#[test]
fn tight_tolerance_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = shipped_config("bloch_shrink");
    let out = run(&[
        "scenario", "bloch_shrink", "--config", cfg.to_str().unwrap(),
        "--out-dir", dir.path().to_str().unwrap(), "--tol", "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn unreachable_convergence_is_a_numerical_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ScenarioConfig::template(ScenarioName::BlockDepolarize);
    cfg.initial_state = symdepol::scenario::StateSpec::Pure {
        amplitudes: vec![[0.5, 0.0], [0.5, 0.1], [0.3, -0.2], [0.4, 0.0]],
    };
    cfg.tolerances.convergence = Some(1e-300);
    let path = dir.path().join("c.json");
    fs::write(&path, cfg.to_json_pretty()).unwrap();
    let out = run(&["scenario", "block_depolarize", "--config", path.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stderr_json(&out)["error"], "convergence");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for name in ScenarioName::ALL {
        let cfg = shipped_config(name.as_str());
        let outputs: Vec<Vec<u8>> = (0..2)
            .map(|_| {
                let dir = tempfile::tempdir().unwrap();
                let out = run(&["scenario", name.as_str(), "--config", cfg.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
                assert_eq!(out.status.code(), Some(0));
                fs::read(dir.path().join(format!("{name}.csv"))).unwrap()
            })
            .collect();
        assert_eq!(outputs[0], outputs[1], "{name}");
    }
}

#[test]
fn channel_verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("dep.json");
    fs::write(&good, serde_json::to_string(&depolarizing_qubit_cpm(0.4).unwrap()).unwrap()).unwrap();
    let out = run(&["channel", "verify", "--input", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["pass"], true);

    let bad = dir.path().join("leaky.json");
    fs::write(&bad, r#"{"dim":1,"kraus_ops":[[[[0.5,0.0]]]]}"#).unwrap();
    let out = run(&["channel", "verify", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(serde_json::from_slice::<Value>(&out.stdout).unwrap()["pass"], false);
}

#[test]
fn evolve_and_fixed_points() {
    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("g.json");
    let gen_doc = serde_json::to_string(&symdepol::zoo::depolarizing_qubit_lindblad(1.0).unwrap()).unwrap();
    fs::write(&gen, gen_doc).unwrap();
    let state = dir.path().join("s.json");
    fs::write(&state, "[[[1,0],[0,0]],[[0,0],[0,0]]]").unwrap();

    let csv_path = dir.path().join("traj.csv");
    let states_path = dir.path().join("states.json");
    let out = run(&[
        "evolve", "--generator", gen.to_str().unwrap(), "--state", state.to_str().unwrap(),
        "--tmax", "0.6931471805599453", "--samples", "2",
        "--out", csv_path.to_str().unwrap(), "--states-out", states_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,p0,p1,purity"));
    let last: Vec<f64> = lines.nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    // s_z = 1/2 at t = ln 2, so p0 = 3/4
    assert!((last[1] - 0.75).abs() < 1e-12);
    let states: Value = serde_json::from_str(&fs::read_to_string(&states_path).unwrap()).unwrap();
    assert_eq!(states["states"].as_array().unwrap().len(), 2);

    let out = run(&["fixed-points", "--generator", gen.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let fp: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(fp["dimension"], 1);

    fs::write(&state, "[[[2,0],[0,0]],[[0,0],[0,0]]]").unwrap();
    let out = run(&["evolve", "--generator", gen.to_str().unwrap(), "--state", state.to_str().unwrap(), "--tmax", "1", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "invalid_state");
}

#[test]
fn config_template_prints_valid_config() {
    let out = run(&["config-template", "driven_rwa"]);
    assert_eq!(out.status.code(), Some(0));
    let cfg = ScenarioConfig::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(cfg.scenario, ScenarioName::DrivenRwa);
}

#[test]
fn library_entry_point_returns_codes() {
    assert_eq!(symdepol::cli::cli_main(["symdepol", "--version"]), 0);
    assert_eq!(symdepol::cli::cli_main(["symdepol", "config-template", "nope"]), 2);
}
