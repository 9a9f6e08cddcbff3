use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use weylindex::cli::{StructuredOutput, StructuredValue};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weylindex"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn structured(out: &Output) -> StructuredOutput {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn integers(out: &StructuredOutput) -> Vec<String> {
    out.reports
        .iter()
        .filter_map(|r| match &r.value {
            StructuredValue::Integer(v) => Some(v.clone()),
            _ => None,
        })
        .collect()
}

#[test]
fn bundled_configs_compute() {
    let expected: [(&str, &[&str]); 3] = [
        ("a1_family.json", &["54", "54", "36", "12", "30"]),
        ("a2_hexagon.json", &["1854", "3708", "3708", "2340", "972", "252", "36", "-270"]),
        ("torus.json", &["5", "0", "-5", "2"]),
    ];
    for (name, values) in expected {
        let out = bin()
            .args(["compute", "--format", "structured"])
            .arg(configs().join(name))
            .output()
            .unwrap();
        assert_eq!(integers(&structured(&out)), values, "{name}");
    }
}

#[test]
fn check_accepts_bundled_configs() {
    for name in ["a1_family.json", "a2_hexagon.json", "torus.json"] {
        let out = bin().arg("check").arg(configs().join(name)).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn method_override_and_flag_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        &dir,
        "b2.json",
        r#"{"group": {"factors": [{"type": "B", "rank": 2}]}, "lattice": "adjoint",
            "representation": {"highest_weight": [2, 2]}, "tasks": ["chern:2"]}"#,
    );
    let out = bin()
        .args(["compute", "--method", "both", "--flag-path", "--format", "structured"])
        .arg(&path)
        .output()
        .unwrap();
    let parsed = structured(&out);
    let paths = &parsed.reports[0].paths_used;
    for p in ["integral:monomial", "integral:polarization", "flags"] {
        assert!(paths.iter().any(|x| x == p), "{paths:?}");
    }
}

#[test]
fn invalid_configs_exit_with_validation_status() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.json", "{\"group\": "),
        (
            "range.json",
            r#"{"group": {"factors": [{"type": "A", "rank": 1}]},
                "representation": {"highest_weight": [1]}, "tasks": ["chern:99"]}"#,
        ),
        (
            "unknown.json",
            r#"{"group": {"factors": [{"type": "A", "rank": 1}]},
                "representation": {"highest_weight": [1]}, "tasks": ["degree"], "extra": 1}"#,
        ),
    ];
    for (name, text) in cases {
        let path = write(&dir, name, text);
        for sub in ["check", "compute"] {
            let out = bin().arg(sub).arg(&path).output().unwrap();
            assert_eq!(out.status.code(), Some(1), "{sub} {name}");
            assert!(!out.stderr.is_empty());
        }
    }
    let out = bin().args(["compute", "/nonexistent/job.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn weight_outside_lattice_names_the_weight() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        &dir,
        "a2.json",
        r#"{"group": {"factors": [{"type": "A", "rank": 2}]}, "lattice": "adjoint",
            "representation": {"weights": [[0, 0], [1, 0]]}, "tasks": ["degree"]}"#,
    );
    let out = bin().arg("compute").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("(1, 0)") && err.contains("adjoint"), "{err}");
}

#[test]
fn selftest_succeeds() {
    let out = bin().arg("selftest").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 6);
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        bin()
            .env("WEYLINDEX_THREADS", threads)
            .args(["compute", "--format", "structured"])
            .arg(configs().join("a2_hexagon.json"))
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}
