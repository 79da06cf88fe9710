use std::path::Path;
use std::process::{Command, Output};

fn skelsnub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skelsnub")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn list_has_eighteen_rows() {
    let o = skelsnub(&["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 19);
    let row = |name: &str| text.lines().find(|l| l.starts_with(name)).unwrap().to_string();
    assert!(row("{4,3}_3 ").contains(" 24 ") && row("{4,3}_3 ").ends_with("plane reflection"));
    assert!(row("{3,5} ").contains(" 60 ") && row("{3,5} ").contains("true"));
}

#[test]
fn seed_snub_record() {
    let o = skelsnub(&["snub", "--poly", "{4,3}_3", "--vertex", "seed"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["analysis"]["euler"], 2);
    assert_eq!(v["analysis"]["fvector"]["f0"], 24);
    assert_eq!(v["analysis"]["fvector"]["f2"], serde_json::json!([24, 6, 8]));
    assert_eq!(v["analysis"]["orientable"], true);
}

#[test]
fn degenerate_record() {
    let o = skelsnub(&["snub", "--poly", "4-3_3", "--vertex", "0.5,0.3,0.1414213562", "--degenerate", "s0"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["analysis"]["symbol"], "4_s.3.4_s.3");
    assert_eq!(json(&o)["typeSet"], serde_json::json!([1, 2]));
}

#[test]
fn uniform_snub_cube_is_equilateral() {
    let o = skelsnub(&["snub", "--poly", "{4,3}", "--vertex", "uniform"]);
    assert!(o.status.success());
    let v = json(&o);
    let pts: Vec<[f64; 3]> = serde_json::from_value(v["vertices"].clone()).unwrap();
    let lengths: Vec<f64> = v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let (a, b) = (&pts[e["a"].as_u64().unwrap() as usize], &pts[e["b"].as_u64().unwrap() as usize]);
            ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
        })
        .collect();
    assert_eq!(lengths.len(), 60);
    assert!(lengths.iter().all(|l| (l - lengths[0]).abs() < 1e-9));
    assert_eq!(v["analysis"]["symbol"], "4_c.3.3.3.3");
}

#[test]
fn exit_codes() {
    assert_eq!(skelsnub(&["snub", "--poly", "{9,3}"]).status.code(), Some(2));
    assert_eq!(skelsnub(&["snub", "--poly", "{4,3}", "--vertex", "1,2"]).status.code(), Some(2));
    assert_eq!(skelsnub(&["snub", "--poly", "{4,3}", "--vertex", "uniform:7"]).status.code(), Some(1));
    assert_eq!(skelsnub(&["snub", "--poly", "{4,3}_3", "--degenerate", "s1"]).status.code(), Some(1));
    assert_eq!(skelsnub(&["reproduce", "--section", "9"]).status.code(), Some(2));
    assert_eq!(skelsnub(&["analyze", "/nonexistent.json"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_skelsnub")).arg("list").env("SKELSNUB_TOL", "-1").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_skelsnub")).arg("list").env("SKELSNUB_TOL", "1e-8").output().unwrap();
    assert!(o.status.success());
}

#[test]
fn reproduce_sections() {
    for section in ["7", "8"] {
        let o = skelsnub(&["reproduce", "--section", section]);
        assert!(o.status.success());
        assert!(stdout(&o).ends_with("9 rows, 0 mismatches\n"));
    }
}

#[test]
fn corrupted_expected_file_gives_row_diff() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    let text = include_str!("../data/degenerate.json").replacen("\"4_s.3.4_s.3\"", "\"4_c.3.4_c.3\"", 1);
    std::fs::write(&path, text).unwrap();
    let o = skelsnub(&["reproduce", "--section", "8", "--expected", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("MISMATCH {4,3}_3\n    symbol: expected Some(\"4_c.3.4_c.3\"), got Some(\"4_s.3.4_s.3\")"));
    assert!(out.ends_with("9 rows, 1 mismatches\n"));
}

fn write_record(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut all = vec!["snub"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--json", &path]);
    assert!(skelsnub(&all).status.success());
    path
}

#[test]
fn analyze_export_and_reconstruct() {
    let dir = tempfile::tempdir().unwrap();
    let hemi = write_record(dir.path(), "h.json", &["--poly", "{4,3}_3"]);
    let o = skelsnub(&["analyze", &hemi]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("fvector: (24,12,24,24,24,6,8)"));

    let obj = dir.path().join("h.obj");
    assert!(skelsnub(&["export", &hemi, "--obj", obj.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 24);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 38);
    assert!(text.contains("# skew\nf "));

    let o = skelsnub(&["reconstruct", &hemi]);
    assert_eq!(o.status.code(), Some(1));

    let cube = write_record(dir.path(), "c.json", &["--poly", "{4,3}", "--vertex", "uniform"]);
    let o = skelsnub(&["reconstruct", &cube]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("parent: 8 vertices, 12 edges, 6 faces"));
}

#[test]
fn broken_record_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_record(dir.path(), "c.json", &["--poly", "{4,3}"]);
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["faces"].as_array_mut().unwrap().pop();
    std::fs::write(&path, v.to_string()).unwrap();
    let o = skelsnub(&["analyze", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("valid: false"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["list"][..],
        &["snub", "--poly", "{10,5}_3"],
        &["uniformity", "--poly", "{3,5}"],
        &["reproduce", "--section", "7"],
    ] {
        assert_eq!(skelsnub(args).stdout, skelsnub(args).stdout, "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let objs: Vec<Vec<u8>> = (0..2)
        .map(|k| {
            let p = dir.path().join(format!("{k}.obj"));
            skelsnub(&["snub", "--poly", "{6,5}", "--obj", p.to_str().unwrap()]);
            std::fs::read(p).unwrap()
        })
        .collect();
    assert_eq!(objs[0], objs[1]);
}
