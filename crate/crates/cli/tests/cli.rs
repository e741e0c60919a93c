use std::path::Path;
use std::process::{Command, Output};

use lagrange_forest_cli::document::ResultDocument;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lagrange-forest"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

const CAYLEY: &str = r#"{
  "colors": ["a"],
  "order": 5,
  "kernels": [{"n": 1, "entries": [{"q": "a", "x": ["a"], "value": "1"}]}]
}
"#;

#[test]
fn cayley_inverse_with_determinant() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "cayley.json", CAYLEY);
    let out_path = dir.path().join("out.json");
    let o = run(&["invert", &config, "--det", "-o", out_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: ResultDocument = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let values: Vec<String> = doc.zeta.iter().map(|r| r.tree.to_string()).collect();
    assert_eq!(values, ["1", "2", "9", "64", "625"]);
    assert!(doc.zeta.iter().all(|r| r.equal == Some(true)));
}

#[test]
fn zero_kernel_gives_identity() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "zero.json",
        r#"{"colors": ["b", "a"], "order": 3, "kernels": [], "B": ["a"]}"#,
    );
    let o = run(&["invert", &config, "--det"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: ResultDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.colors, ["a", "b"]);
    let nonzero: Vec<_> = doc.zeta.iter().filter(|r| r.tree.to_string() != "0").collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0].x, ["a"]);
    assert!(doc.all_equal());
}

#[test]
fn output_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "two.json",
        r#"{
  "colors": ["a", "b"],
  "order": 3,
  "kernels": [
    {"n": 1, "entries": [{"q": "a", "x": ["b"], "value": "1/2"}, {"q": "b", "x": ["a"], "value": "-1"}]},
    {"n": 2, "entries": [{"q": "a", "x": ["b", "a"], "value": "2/3"}]}
  ],
  "phi": [{"x": [], "value": "1"}, {"x": ["a", "b"], "value": "3"}]
}"#,
    );
    let o = run(&["invert", &config, "--det"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let doc: ResultDocument = serde_json::from_str(&text).unwrap();
    assert!(doc.psi.is_some());
    assert_eq!(doc.to_json(), text);
}

#[test]
fn malformed_rational_is_line_anchored() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "bad.json",
        "{\n  \"colors\": [\"a\"],\n  \"order\": 2,\n  \"kernels\": [{\"n\": 1, \"entries\": [{\"q\": \"a\", \"x\": [\"a\"], \"value\": \"1/0\"}]}]\n}\n",
    );
    let o = run(&["invert", &config]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.json:4:"), "{err}");
    assert!(err.contains("1/0"), "{err}");
}

#[test]
fn invariant_violations_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write(
        dir.path(),
        "unknown.json",
        r#"{"colors": ["a"], "order": 2, "kernels": [{"n": 1, "entries": [{"q": "z", "x": ["a"], "value": "1"}]}]}"#,
    );
    assert_eq!(run(&["invert", &unknown]).status.code(), Some(3));
    let duplicate = write(
        dir.path(),
        "dup.json",
        r#"{"colors": ["a", "b"], "order": 2, "kernels": [{"n": 2, "entries": [
            {"q": "a", "x": ["a", "b"], "value": "1"}, {"q": "a", "x": ["b", "a"], "value": "2"}]}]}"#,
    );
    assert_eq!(run(&["invert", &duplicate]).status.code(), Some(3));
}

#[test]
fn order_can_only_be_lowered() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "cayley.json", CAYLEY);
    assert_eq!(run(&["invert", &config, "--order", "6"]).status.code(), Some(2));
    let o = run(&["invert", &config, "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: ResultDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.order, 3);
    assert_eq!(doc.zeta.len(), 3);
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(run(&["invert", "/nonexistent/problem.json"]).status.code(), Some(2));
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "all", "--seed", "1", "--d", "2", "--N", "4", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 6);
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_magic_small() {
    assert_eq!(run(&["verify", "magic", "--d", "1", "--N", "3"]).status.code(), Some(0));
}

#[test]
fn verify_rejects_bad_input() {
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "magic", "--d", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "magic", "--pool", "1/0"]).status.code(), Some(2));
}

#[test]
fn verify_json_is_deterministic() {
    let args = ["verify", "round-trip", "--seed", "4", "--d", "2", "--N", "3", "--trials", "2", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let reports: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 2);
}

#[test]
fn enumerate_counts() {
    assert_eq!(stdout(&run(&["enumerate", "partitions", "--n", "4"])), "15\n");
    assert_eq!(stdout(&run(&["enumerate", "trees", "--n", "1"])), "1\n");
    assert_eq!(stdout(&run(&["enumerate", "crowns", "--n", "1"])), "1\n");
    assert_eq!(stdout(&run(&["enumerate", "maps", "--n", "1", "--sinks", "1"])), "2\n");
}

#[test]
fn enumerate_listing_is_canonical() {
    let o = run(&["enumerate", "maps", "--n", "1", "--sinks", "1", "--list"]);
    assert_eq!(stdout(&o), "2\n1->1 | 1:{1}\n1->∘ | ∘:{1}\n");
    let p = run(&["enumerate", "partitions", "--n", "2", "--list"]);
    assert_eq!(stdout(&p), "2\n{1,2}\n{1} {2}\n");
}

#[test]
fn enumerate_respects_cap() {
    let o = run(&["enumerate", "maps", "--n", "6", "--sinks", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("cap"));
    assert_eq!(run(&["enumerate", "partitions", "--n", "3", "--cap", "2"]).status.code(), Some(2));
}
