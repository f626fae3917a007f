use hyperstress::cli::{emit_report, parse_config, prepare, run_cli, to_json, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use hyperstress::experiments::CSV_HEADER;
use std::path::{Path, PathBuf};
use std::process::Command;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperstress"))
}

fn run_in(dir: &Path, args: &[&str]) -> i32 {
    let out = bin().args(args).current_dir(dir).output().expect("binary runs");
    out.status.code().expect("exit code")
}

#[test]
fn identities_config_passes_and_writes_reports() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let cfg = configs().join("identities.json");
    let code = run_in(
        tmp.path(),
        &["run", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()],
    );
    assert_eq!(code, EXIT_PASS);
    let csv = std::fs::read_to_string(out.join("report.csv")).unwrap();
    assert!(csv.starts_with(CSV_HEADER));
    assert!(csv.lines().count() > 7);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["seed"], 7);
    assert_eq!(summary["pass"], true);
}

#[test]
fn bounded_expectation_on_raw_edge_forces_fails() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("groove_bounded.json");
    let code = run_in(tmp.path(), &["run", cfg.to_str().unwrap(), "--out", "o"]);
    assert_eq!(code, EXIT_FAIL);
}

#[test]
fn malformed_and_missing_files_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    std::fs::write(&bad, "{ nope").unwrap();
    assert_eq!(run_in(tmp.path(), &["run", bad.to_str().unwrap()]), EXIT_INPUT);
    assert_eq!(run_in(tmp.path(), &["run", "missing.json"]), EXIT_INPUT);
    assert_eq!(run_in(tmp.path(), &["run"]), EXIT_INPUT);
    assert_eq!(run_in(tmp.path(), &["frobnicate"]), EXIT_INPUT);
}

#[test]
fn config_flag_is_equivalent_to_positional_path() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("probe.json");
    assert_eq!(
        run_in(tmp.path(), &["probe", "--config", cfg.to_str().unwrap()]),
        EXIT_PASS
    );
}

#[test]
fn empty_experiment_list_is_a_no_op_run() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("empty.json");
    std::fs::write(&cfg, r#"{"experiments": []}"#).unwrap();
    let out = tmp.path().join("o");
    assert_eq!(
        run_cli([
            "hyperstress",
            "run",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ]),
        EXIT_PASS
    );
    assert_eq!(
        std::fs::read_to_string(out.join("report.csv")).unwrap(),
        format!("{CSV_HEADER}\n")
    );
}

#[test]
fn degenerate_wedge_dihedron_is_named() {
    let text = r#"{"experiments": [{"kind": "wedge_limit",
        "dihedral": {"n1": [0, 0, 1], "n2": [0, 0, 1], "tau": [1, 0, 0]}}]}"#;
    let err = parse_config(text).unwrap_err();
    assert_eq!(err.0.len(), 1);
    assert_eq!(err.0[0].path, "experiments[0].dihedral");
    assert!(err.0[0].message.contains("flat or folded"));
}

#[test]
fn every_issue_is_reported() {
    let text = r#"{
        "tolerance_scale": -1,
        "velocity": [{"indices": [0, 1], "exponents": [0, 0, 0], "coefficient": 1}],
        "experiments": [
            {"kind": "tetrahedron_limit", "normal": [0, 0, 2]},
            {"kind": "mollifier_limit", "gamma": 3, "grid": [5, 0.1]},
            {"kind": "noll_check", "phi": [{"exponents": [1, 0, 0], "coefficient": 1}]},
            {"kind": "divergence_identity", "grid": [0.5, 0.25]}
        ],
        "extra": true
    }"#;
    let err = parse_config(text).unwrap_err();
    let paths: Vec<&str> = err.0.iter().map(|i| i.path.as_str()).collect();
    for p in [
        "extra",
        "tolerance_scale",
        "velocity[0].indices",
        "experiments[0].normal",
        "experiments[1].gamma",
        "experiments[1].grid",
        "experiments[2].phi",
        "experiments[3].grid",
        "domain",
    ] {
        assert!(paths.contains(&p), "missing {p} in {paths:?}");
    }
}

#[test]
fn quadrature_capacity_is_checked_before_running() {
    let text = r#"{
        "stress_state": {"c": [{"indices": [0, 0, 0], "exponents": [12, 0, 0], "coefficient": 1}]},
        "velocity": [{"indices": [0], "exponents": [0, 12, 0], "coefficient": 1}],
        "domain": {"kind": "graph_patch_box",
                   "phi": [{"exponents": [0, 0, 0], "coefficient": 1}, {"exponents": [4, 0, 0], "coefficient": 0.1}],
                   "lo": [0, 0], "hi": [1, 1], "z0": 0},
        "experiments": [{"kind": "divergence_identity"}]
    }"#;
    let err = parse_config(text).unwrap_err();
    assert!(
        err.0.iter().any(|i| i.message.contains("degree/quadrature mismatch")),
        "{err}"
    );
}

#[test]
fn config_round_trips() {
    for name in ["identities.json", "groove_bounded.json", "probe.json"] {
        let text = std::fs::read_to_string(configs().join(name)).unwrap();
        let cfg = parse_config(&text).unwrap();
        let again = parse_config(&to_json(&cfg)).unwrap();
        assert_eq!(cfg, again, "{name}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let text = std::fs::read_to_string(configs().join("identities.json")).unwrap();
    let plan = prepare(&parse_config(&text).unwrap()).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    emit_report(&plan.run().unwrap(), &a, Some(7), 1.0).unwrap();
    emit_report(&plan.run().unwrap(), &b, Some(7), 1.0).unwrap();
    let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 9);
    for n in names {
        assert_eq!(std::fs::read(a.join(&n)).unwrap(), std::fs::read(b.join(&n)).unwrap());
    }
}

#[test]
fn tolerance_scale_flag_is_validated() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("groove_bounded.json");
    let code = run_in(tmp.path(), &["run", cfg.to_str().unwrap(), "--tolerance-scale", "0"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn verify_writes_seeded_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let code = run_in(tmp.path(), &["verify", "--seed", "3", "--out", "v"]);
    assert_eq!(code, EXIT_PASS);
    let s = std::fs::read_to_string(tmp.path().join("v/summary.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["experiments"].as_array().unwrap().len(), 10);
}
