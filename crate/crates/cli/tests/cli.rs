use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cmvscat::{CircleFunction, CircleGrid, Complex64};
use serde_json::Value;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmvscat"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn read_csv(path: &Path) -> CircleFunction {
    CircleFunction::read_csv(std::io::BufReader::new(fs::File::open(path).unwrap())).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "free.json", r#"{"a_minus1":[1,0],"a":[]}"#);
    write(
        dir.path(),
        "a05.json",
        r#"{"a_minus1":[-1,0],"a":[[0.5,0]]}"#,
    );
    dir
}

fn complex(v: &Value) -> Complex64 {
    Complex64::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn forward_free_is_constant() {
    let dir = setup();
    let out = run(
        dir.path(),
        &["forward", "--input", "free.json", "--out", "s.csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    let s = read_csv(&dir.path().join("s.csv"));
    let first = s.samples()[0];
    assert!(s.samples().iter().all(|z| (z - first).norm() < 1e-14));
    let side = read_json(&dir.path().join("s.json"));
    assert_eq!(side["D0"].as_f64(), Some(1.0));
    assert_eq!(side["config"]["command"], "forward");
}

#[test]
fn forward_half_matches_closed_form() {
    let dir = setup();
    let out = run(
        dir.path(),
        &[
            "forward", "--input", "a05.json", "--grid", "4096", "--out", "s.csv", "--weight",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let s = read_csv(&dir.path().join("s.csv"));
    let w = read_csv(&dir.path().join("s.weight.csv"));
    for (j, t) in s.grid().nodes().into_iter().enumerate() {
        let expect = (t - 0.5) / (t * (1.0 - t / 2.0));
        assert!((s.samples()[j] - expect).norm() < 1e-8);
        assert!((w.samples()[j].re - 0.75 / (1.0 - t / 2.0).norm_sqr()).abs() < 1e-8);
    }
    let text = fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert!(text.starts_with("# config: {"));
}

#[test]
fn forward_jacobi_is_near_t_squared() {
    let dir = setup();
    let a: Vec<String> = (0..200)
        .map(|n| format!("[{},0]", -2.0 / (n as f64 + 3.0)))
        .collect();
    write(
        dir.path(),
        "jacobi2.json",
        &format!(r#"{{"a_minus1":[-1,0],"a":[{}]}}"#, a.join(",")),
    );
    let out = run(
        dir.path(),
        &["forward", "--input", "jacobi2.json", "--out", "s.csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    let s = read_csv(&dir.path().join("s.csv"));
    let g = s.grid();
    let far = (0..g.size()).filter(|&j| g.theta(j).cos() <= 0.5);
    let worst = far
        .map(|j| (s.samples()[j] - g.node(j).powi(2)).norm())
        .fold(0.0, f64::max);
    assert!(worst < 0.08, "{worst}");
}

#[test]
fn inverse_of_forward() {
    let dir = setup();
    for (input, a0) in [("free.json", 0.0), ("a05.json", 0.5)] {
        let csv = format!("{input}.s.csv");
        assert_eq!(
            run(dir.path(), &["forward", "--input", input, "--out", &csv])
                .status
                .code(),
            Some(0)
        );
        let out = run(
            dir.path(),
            &["inverse", "--input", &csv, "--out", "rep.json"],
        );
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let rep = read_json(&dir.path().join("rep.json"));
        let coeffs = rep["a"].as_array().unwrap();
        assert!((complex(&coeffs[0]) - a0).norm() < 1e-8);
        assert!(coeffs[1..].iter().all(|z| complex(z).norm() < 1e-8));
        assert_eq!(rep["regular"], true);
        assert!(rep["residual"].as_f64().unwrap() < 1e-8);
        assert!(rep["consistency"].is_array());
        assert!(rep["sidecar_a_minus1_gap"].as_f64().unwrap() < 1e-8);
        assert_eq!(rep["config"]["command"], "inverse");
    }
}

#[test]
fn inverse_of_monomial_is_flagged_under_strict() {
    let dir = setup();
    let s = CircleFunction::from_fn(CircleGrid::new(4096).unwrap(), |t| t * t);
    let mut buf = Vec::new();
    s.write_csv(&mut buf, None).unwrap();
    fs::write(dir.path().join("t2.csv"), buf).unwrap();
    let out = run(
        dir.path(),
        &[
            "inverse", "--input", "t2.csv", "--strict", "--out", "rep.json",
        ],
    );
    assert_eq!(out.status.code(), Some(4));
    let rep = read_json(&dir.path().join("rep.json"));
    assert_eq!(rep["regular"], false);
    assert!(!rep["warnings"].as_array().unwrap().is_empty());
    let relaxed = run(dir.path(), &["inverse", "--input", "t2.csv"]);
    assert_eq!(relaxed.status.code(), Some(0));
}

#[test]
fn widom_gap_column() {
    let dir = setup();
    let out = run(
        dir.path(),
        &["widom", "--input", "a05.json", "--trunc", "64,128,256"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config:"));
    assert_eq!(lines.next(), Some("M,det,product,gap"));
    let gaps: Vec<f64> = lines
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(gaps.len(), 3);
    assert!(*gaps.last().unwrap() <= 1e-6);
}

#[test]
fn glm_residual() {
    let dir = setup();
    let out = run(
        dir.path(),
        &[
            "glm", "--input", "a05.json", "--order", "8", "--trunc", "128",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rep["residual"].as_f64().unwrap() <= 1e-6);
    assert!(rep["diagonal_gap"].as_f64().unwrap() <= 1e-6);
    assert_eq!(rep["diagonal"].as_array().unwrap().len(), 8);
}

#[test]
fn classify_sequence_and_symbol() {
    let dir = setup();
    let out = run(
        dir.path(),
        &["classify", "--input", "a05.json", "--trunc", "128"],
    );
    assert_eq!(out.status.code(), Some(0));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["gi_member"], true);
    assert_eq!(rep["index"], 0);

    run(
        dir.path(),
        &["forward", "--input", "a05.json", "--out", "s.csv"],
    );
    let out = run(
        dir.path(),
        &["classify", "--input", "s.csv", "--trunc", "128", "--strict"],
    );
    assert_eq!(out.status.code(), Some(0));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["regular"], true);
}

#[test]
fn roundtrip_reports_errors() {
    let dir = setup();
    let out = run(
        dir.path(),
        &["roundtrip", "--input", "a05.json", "--order", "8"],
    );
    assert_eq!(out.status.code(), Some(0));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rep["coefficient_error"].as_f64().unwrap() < 1e-8);
    assert_eq!(rep["config"]["n_max"], 8);
}

#[test]
fn demo_difference_decreases() {
    let dir = setup();
    let out = run(
        dir.path(),
        &["demo-nonunique", "--grid", "2048", "--trunc", "128"],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("truncation"))
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 2);
    let sup = |r: &Vec<&str>| r[1].parse::<f64>().unwrap();
    assert!(sup(&rows[1]) < sup(&rows[0]));
    assert!(rows.iter().all(|r| r[4] == "2" && r[5] == "2"));
    assert!(text.contains("regular false"));
}

#[test]
fn outputs_are_deterministic() {
    let dir = setup();
    for name in ["one.csv", "two.csv"] {
        run(
            dir.path(),
            &["forward", "--input", "a05.json", "--out", name],
        );
    }
    let read = |n: &str| fs::read(dir.path().join(n)).unwrap();
    assert_eq!(read("one.csv"), read("two.csv"));
    let first = run(
        dir.path(),
        &["classify", "--input", "a05.json", "--trunc", "64"],
    )
    .stdout;
    let second = run(
        dir.path(),
        &["classify", "--input", "a05.json", "--trunc", "64"],
    )
    .stdout;
    assert_eq!(first, second);
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = setup();
    write(
        dir.path(),
        "bad.json",
        r#"{"a_minus1":[1,0],"a":[[1.0,0]]}"#,
    );
    let cases: [&[&str]; 5] = [
        &["forward", "--input", "bad.json", "--out", "x.csv"],
        &["forward", "--input", "missing.json", "--out", "x.csv"],
        &["forward", "--input", "a05.json"],
        &["widom", "--input", "a05.json", "--grid", "100"],
        &["inverse", "--input", "a05.json"],
    ];
    for args in cases {
        assert_eq!(run(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}
