use std::path::PathBuf;
use std::process::{Command, Output};

fn mps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mps")).args(args).output().expect("binary runs")
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mps-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cusp_entry_passes() {
    let o = mps(&["catalog", "run", "--filter", "cusp", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("\"N_2\""));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let checks = &v["reports"][0]["checks"];
    assert_eq!(checks["N_2"]["computed"], serde_json::json!(["x", "y"]));
    assert!(checks.as_object().unwrap().values().all(|c| c["status"] == "PASS"));
}

#[test]
fn t345_keeps_its_expected_false_verdict() {
    let o = mps(&["catalog", "run", "--filter", "t345", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = &v["reports"][0]["checks"];
    assert_eq!(checks["fitt0_is_image"]["status"], "PASS");
    assert_eq!(checks["fitt0_is_image"]["computed"], false);
    assert_eq!(checks["adjoint"]["status"], "HYPOTHESIS_VIOLATED");
}

#[test]
fn reports_are_byte_stable() {
    let a = mps(&["catalog", "run", "--all", "--format", "json", "--jobs", "1"]);
    let b = mps(&["catalog", "run", "--all", "--format", "json", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failing_expectation_exits_one_and_shows_both_sides() {
    let cat = fixture(
        "bad.json",
        r#"{"entries": [{"name": "wrong", "kind": "map",
            "map": {"target": {"vars": ["x", "y"]}, "source": {"vars": ["t"]}, "images": {"x": "t^2", "y": "t^3"}},
            "expect": {"N_2": {"value": ["x", "y^2"], "basis": "trivial"}}}]}"#,
    );
    let o = mps(&["catalog", "run", "--file", cat.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains(r#"N_2: ["x","y"] (expected ["x","y^2"])"#), "{text}");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(mps(&["catalog", "run", "--filter", "no-such-entry"]).status.code(), Some(2));
    let bad = fixture("bad-ideal.json", r#"{"ring": {"vars": ["x"]}, "gens": ["x +* 1"]}"#);
    assert_eq!(mps(&["gb", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(mps(&["gb", "/nonexistent/ideal.json"]).status.code(), Some(2));
    assert_eq!(mps(&["strong-perfection", "--p", "3", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn subcommands_answer() {
    let id = fixture("cusp.json", r#"{"ring": {"vars": ["x", "y"]}, "gens": ["y^2 - x^3", "x*y"]}"#);
    let o = mps(&["gb", id.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["gb"], serde_json::json!(["x*y", "x^3 - y^2", "y^3"]));

    let o = mps(&["length", id.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // standard monomials 1, x, x^2, y, y^2
    assert_eq!(v["length"], 5);

    let m = fixture("cusp-matrix.json", r#"{"ring": {"vars": ["x", "y"]}, "rows": [["y", "-x^2"], ["-x", "y"]]}"#);
    let o = mps(&["linkage", m.to_str().unwrap(), "--p", "1", "--conductor", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["delta"], "-x");
    assert_eq!(v["conductor"]["self_linked"], true);

    let out = std::env::temp_dir().join(format!("mps-cli-{}-sp.json", std::process::id()));
    let o = mps(&["strong-perfection", "--p", "1", "--n", "2", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["grade_in_quotient"], 1);
}

#[test]
fn catalog_lists_entries() {
    let o = mps(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("triple-planes\t")));
}
