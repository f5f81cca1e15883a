//! End-to-end tests of the binary: exit codes, report determinism, CSV
//! headers, machine-readable errors.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_helixlab"))
}

fn write_scene(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const CONE_SCENE: &str = r#"{"schema":1,"name":"cone","dim":3,"surface":{"gallery":"cone"}}"#;
const HELICOID_SCENE: &str =
    r#"{"schema":1,"name":"helicoid","dim":3,"surface":{"gallery":"helicoid"}}"#;

#[test]
fn gallery_list_mentions_every_builtin() {
    let out = run(&["gallery-list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "hyperplane",
        "sphere",
        "cylinder",
        "cone",
        "generalized-cylinder-e4",
        "helicoid",
        "plane-curve-cylinder",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn verify_cone_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "cone.json", CONE_SCENE);
    let out = run(&["verify", scene.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = reports.as_array().unwrap();
    assert!(!arr.is_empty());
    assert!(arr.iter().all(|r| r["conclusion"].as_str() != Some("fail")));
}

#[test]
fn verify_helicoid_exits_zero_all_vacuous() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "helicoid.json", HELICOID_SCENE);
    let out = run(&["verify", scene.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for r in reports.as_array().unwrap() {
        assert_eq!(r["hypothesis"].as_str(), Some("vacuous"), "{r}");
        assert!(r["conclusion"].is_null());
    }
}

#[test]
fn verify_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "cone.json", CONE_SCENE);
    let a = run(&["verify", scene.to_str().unwrap(), "--seed", "7"]);
    let b = run(&["verify", scene.to_str().unwrap(), "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn scene_error_exits_two_with_json_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(
        dir.path(),
        "bad.json",
        r#"{"dim":3,"surface":{"gallery":"moebius"}}"#,
    );
    let out = run(&["verify", scene.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"]["kind"].as_str(), Some("scene"));
    assert!(err["error"]["message"]
        .as_str()
        .unwrap()
        .contains("/surface/gallery"));
}

#[test]
fn numerical_error_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    // an absurdly large step trips the per-step drift budget
    let scene = write_scene(
        dir.path(),
        "coarse.json",
        r#"{
            "dim": 3,
            "surface": {"gallery": "sphere"},
            "curves": [{"name": "g", "kind": "geodesic", "start": [0.0, 0.0],
                        "direction": [1.0, 0.7], "length": 1.0, "step": 0.5}]
        }"#,
    );
    let out = run(&["geodesic", scene.to_str().unwrap(), "--name", "g"]);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"]["kind"].as_str(), Some("step_too_large"));
}

#[test]
fn missing_scene_file_exits_two() {
    let out = run(&["verify", "/nonexistent/scene.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_failure_exits_one() {
    // a tolerance below the floating-point floor forces concluded failures
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "cone.json", CONE_SCENE);
    let out = run(&["verify", scene.to_str().unwrap(), "--tol", "5e-17"]);
    assert_eq!(out.status.code(), Some(1));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(reports
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["conclusion"].as_str() == Some("fail")));
}

#[test]
fn analyze_surface_reports_direction_space() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "cone.json", CONE_SCENE);
    let normals = dir.path().join("normals.csv");
    let out = run(&[
        "analyze-surface",
        scene.to_str().unwrap(),
        "--dump-normals",
        normals.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["is_helix"].as_bool(), Some(true));
    assert_eq!(report["r"].as_u64(), Some(1));
    assert_eq!(report["space"]["basis"].as_array().unwrap().len(), 1);
    let csv = std::fs::read_to_string(&normals).unwrap();
    assert!(csv.starts_with("u1,u2,x1,x2,x3,N1,N2,N3\n"));
    assert!(csv.lines().count() > 10);
}

#[test]
fn frenet_emits_samples_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "cone.json", CONE_SCENE);
    let csv_path = dir.path().join("frenet.csv");
    let out = run(&[
        "frenet",
        scene.to_str().unwrap(),
        "--curve",
        "circle",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["samples"].as_array().unwrap().len() > 10);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("t,x1,x2,x3,k1,k2\n"));

    // single-parameter query
    let out = run(&[
        "frenet",
        scene.to_str().unwrap(),
        "--curve",
        "circle",
        "--at",
        "1.0",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["samples"].as_array().unwrap().len(), 1);
}

#[test]
fn geodesic_emits_diagnostics_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "cone.json", CONE_SCENE);
    let csv_path = dir.path().join("trace.csv");
    let out = run(&[
        "geodesic",
        scene.to_str().unwrap(),
        "--name",
        "g1",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["domain_exit"].as_bool(), Some(false));
    assert!(report["max_speed_drift"].as_f64().unwrap() < 1e-7);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("s,u1,u2,x1,x2,x3,v1,v2,v3\n"));
}

#[test]
fn report_flag_writes_the_same_json() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "helicoid.json", HELICOID_SCENE);
    let report_path = dir.path().join("out.json");
    let out = run(&[
        "verify",
        scene.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let on_disk = std::fs::read_to_string(&report_path).unwrap();
    assert_eq!(stdout(&out).trim_end(), on_disk);
}

#[test]
fn unknown_curve_name_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(dir.path(), "cone.json", CONE_SCENE);
    let out = run(&["frenet", scene.to_str().unwrap(), "--curve", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}
