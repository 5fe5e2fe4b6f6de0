use assert_cmd::Command;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::cargo_bin("steinberg").unwrap().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, text) = run(&all);
    assert_eq!(code, 0, "{text}");
    serde_json::from_str(&text).unwrap()
}

fn column(v: &Value, table: &str, col: &str) -> Vec<String> {
    v["tables"][table]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[col].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn growth_rows_agree() {
    let v = json(&["growth", "--type", "A1~", "--K", "6"]);
    let expected: Vec<String> = [1, 2, 2, 2, 2, 2, 2].iter().map(ToString::to_string).collect();
    assert_eq!(column(&v, "growth", "enumerated"), expected);
    assert_eq!(column(&v, "growth", "closed_form"), expected);
    let v = json(&["growth", "--type", "A2~", "--K", "4"]);
    assert_eq!(column(&v, "growth", "enumerated"), ["1", "3", "6", "9", "12"]);
}

#[test]
fn bad_label_is_a_usage_error() {
    let (code, _) = run(&["growth", "--type", "Z9~"]);
    assert_eq!(code, 2);
}

#[test]
fn period_closed_forms() {
    for t in ["A1~", "A2~"] {
        let v = json(&["period", "--type", t, "--q", "2", "--K", "10"]);
        assert_eq!(v["detail"]["closedForm"], serde_json::json!({"num": "1", "den": "3"}));
        assert_eq!(v["detail"]["certified"], true);
    }
    let (code, _) = run(&["period", "--type", "A1~", "--q", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn period_geometric_cross_check() {
    let v = json(&["period", "--type", "A2~", "--q", "2", "--K", "4", "--R", "2"]);
    assert_eq!(column(&v, "geometric", "shell_enumerated"), ["1", "6", "24"]);
    assert_eq!(column(&v, "geometric", "S_k_geometric"), column(&v, "geometric", "S_k_algebraic"));
}

#[test]
fn harmonic_scan_reports_no_defects() {
    let (code, text) = run(&["harmonic", "--n", "2", "--p", "2", "--R", "8"]);
    assert_eq!(code, 0);
    assert!(text.contains("defects: 0 nonzero / 510 faces"), "{text}");
}

#[test]
fn ball_shells() {
    let v = json(&["ball", "--n", "3", "--p", "2", "--R", "2"]);
    assert_eq!(column(&v, "shells", "enumerated"), ["1", "6", "24"]);
    assert_eq!(v["detail"]["chambers"].as_array().unwrap().len(), 31);
    let (code, _) = run(&["ball", "--n", "4", "--p", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn hecke_checks_pass() {
    let (code, text) = run(&["hecke", "--type", "A2~", "--q", "3"]);
    assert_eq!(code, 0);
    assert!(text.contains("all checks passed"));
    let (code, _) = run(&["hecke", "--type", "C2~", "--q", "7/2"]);
    assert_eq!(code, 0);
}

#[test]
fn boundary_checks_pass() {
    let v = json(&["boundary", "--p", "2", "--R", "2"]);
    assert_eq!(column(&v, "counts", "enumerated"), ["10", "6"]);
}

#[test]
fn csv_cells_are_exact() {
    let (code, text) = run(&["period", "--type", "A1~", "--q", "2", "--K", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("table,k,S_k,source\n"));
    assert!(text.contains("partial_sums,4,3/8,enumerated"));
    assert!(!text.contains('.'));
}

#[test]
fn output_is_deterministic() {
    let args = ["ball", "--n", "2", "--p", "3", "--R", "3", "--format", "json"];
    let (_, a) = run(&args);
    let (_, b) = run(&args);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let (_, c) = run(&seq);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("growth.json");
    let (code, stdout) = run(&[
        "growth", "--type", "G2~", "--K", "5", "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["ok"], true);
}
