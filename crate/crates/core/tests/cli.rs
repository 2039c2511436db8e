use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twisted-jacquet"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Vec<Value> {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = run(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str::<Value>(&out)
        .unwrap()
        .as_array()
        .unwrap()
        .clone()
}

fn without_timing(mut records: Vec<Value>) -> Vec<Value> {
    for r in &mut records {
        r.as_object_mut().unwrap().remove("wall_ms");
    }
    records
}

#[test]
fn dim_reports_theorem_values() {
    for (p, n, count, dim) in [("2", "2", 3, "1"), ("3", "2", 18, "4"), ("2", "3", 9, "9")] {
        let recs = json(&["dim", "--p", p, "--n", n]);
        assert_eq!(recs.len(), 2 * count);
        for r in &recs {
            assert_eq!(r["verdict"], "pass");
            assert_eq!(r["computed"], dim);
        }
    }
}

#[test]
fn main_passes_and_is_deterministic_across_jobs() {
    let one = json(&["main", "--p", "3", "--n", "2", "--jobs", "1"]);
    let many = json(&["main", "--p", "3", "--n", "2", "--jobs", "4"]);
    assert_eq!(one.len(), 18);
    assert!(one.iter().all(|r| r["verdict"] == "pass"));
    assert_eq!(without_timing(one.clone()), without_timing(many));
    let table = one[0]["details"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 72);
    assert!(table.iter().all(|row| row["jacquet"] == row["model"]));

    let (code, out, _) = run(&["main", "--p", "3", "--n", "2", "--theta", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("pass"));
    let w = json(&["main", "--p", "2", "--n", "1"]);
    assert_eq!(w.len(), 1);
    assert_eq!(w[0]["verdict"], "pass");
}

#[test]
fn lemmas_identity_and_char() {
    assert!(json(&["lemmas", "--p", "2", "--n", "2"])
        .iter()
        .all(|r| r["verdict"] == "pass"));
    let id = json(&["identity", "--n", "2", "--a", "5", "--q", "7"]);
    assert_eq!(id[0]["expected"], id[0]["computed"]);
    let c = json(&[
        "char", "--p", "2", "--n", "1", "--theta", "1", "--matrix", "0,1;1,1",
    ]);
    assert_eq!(c[0]["computed"], "1");
    let c = json(&["char", "--p", "2", "--theta", "1", "--matrix", "1,1;0,1"]);
    assert_eq!(c[0]["computed"], "-1");
}

#[test]
fn twist_from_file_and_zero() {
    let dir = std::env::temp_dir().join(format!("tj-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.txt");
    std::fs::write(&path, "1,1\n;1,1\n").unwrap();
    let recs = json(&[
        "dim",
        "--p",
        "3",
        "--n",
        "2",
        "--theta",
        "0",
        "--twist",
        path.to_str().unwrap(),
    ]);
    assert!(recs.iter().all(|r| r["computed"] == "4"));
    let z = json(&["dim", "--p", "2", "--n", "3", "--twist", "zero"]);
    assert!(z
        .iter()
        .all(|r| r["computed"] == "0" && r["verdict"] == "pass"));
    std::fs::write(&path, "1,0;0,1").unwrap();
    let full = json(&[
        "dim",
        "--p",
        "2",
        "--n",
        "2",
        "--theta",
        "0",
        "--twist",
        path.to_str().unwrap(),
    ]);
    assert_eq!(full[0]["verdict"], "info");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["dim", "--p", "4", "--n", "2"],
        vec!["dim", "--p", "2", "--n", "2", "--theta", "17"],
        vec![
            "dim",
            "--p",
            "2",
            "--n",
            "2",
            "--twist",
            "/nonexistent/a.txt",
        ],
        vec!["main", "--p", "2", "--n", "2", "--twist", "zero"],
        vec!["char", "--p", "3", "--theta", "4", "--matrix", "1,0;0,1"],
        vec!["char", "--p", "2", "--theta", "1", "--matrix", "1,2;0,1"],
        vec!["identity", "--n", "3", "--a", "4", "--q", "2"],
        vec!["dim", "--p", "2"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn bench_runs() {
    let recs = json(&["bench", "--p", "2", "--n", "2"]);
    assert!(recs.iter().any(|r| r["check"] == "bench-main"));
}
