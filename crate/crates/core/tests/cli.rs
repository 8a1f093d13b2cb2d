use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

fn bei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bei")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Graph JSON written to a temporary file, removed on drop.
struct TempGraph(PathBuf);

static NEXT: AtomicUsize = AtomicUsize::new(0);

impl TempGraph {
    fn as_str(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for TempGraph {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

fn graph_file(json: &str) -> TempGraph {
    let k = NEXT.fetch_add(1, Ordering::SeqCst);
    let path = std::env::temp_dir().join(format!("bei-cli-{}-{k}.json", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(json.as_bytes()).unwrap();
    TempGraph(path)
}

#[test]
fn betti_both_matches_on_c4() {
    let o = bei(&["betti", "--family", "cycle", "--n", "4", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("match"));
}

#[test]
fn betti_formula_example_table() {
    let o = bei(&["betti", "--family", "t3", "--r", "2", "--s", "1", "--t", "1", "--method", "formula"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total: 1 3 4 2\n    0: 1 . . .\n    1: . 3 . .\n    2: . . 4 2\n"));
}

#[test]
fn betti_window_from_file() {
    let g = graph_file(r#"{"n": 4, "edges": [[1,2],[2,3],[3,4],[1,4],[1,3]]}"#);
    let o = bei(&["--json", "betti", "--graph", g.as_str(), "--method", "oracle", "--max-j", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows: Vec<u64> = v["oracle"]["entries"].as_array().unwrap().iter().map(|e| e["j"].as_u64().unwrap()).collect();
    assert!(rows.iter().all(|&j| j <= 1));
    // two triangles
    assert!(v["oracle"]["entries"].as_array().unwrap().iter().any(|e| e["i"] == 2 && e["j"] == 1 && e["b"] == 4));
}

#[test]
fn hilbert_forms() {
    let o = bei(&["hilbert", "--family", "g3", "--r", "1", "--s", "1", "--t", "1", "--form", "reduced"]);
    assert_eq!(stdout(&o).trim(), "(1 + 2t)/(1-t)^4");
    let path5 = graph_file(r#"{"n": 5, "edges": [[1,2],[2,3],[3,4],[4,5]]}"#);
    let o = bei(&["hilbert", "--graph", path5.as_str(), "--form", "reduced"]);
    assert_eq!(stdout(&o).trim(), "(1 + 4t + 6t^2 + 4t^3 + t^4)/(1-t)^6");
    let o = bei(&["hilbert", "--family", "cycle", "--n", "4", "--form", "closed"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bei(&["--json", "hilbert", "--family", "cycle", "--n", "4", "--form", "raw"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["denomPow"], 8);
}

#[test]
fn primes_of_c4() {
    let o = bei(&["--json", "primes", "--family", "cycle", "--n", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["primes"].as_array().unwrap().len(), 3);
    assert_eq!(v["dim"], 5);
}

#[test]
fn bounds_names_witness() {
    let o = bei(&["bounds", "--family", "t3", "--r", "3", "--s", "2", "--t", "2"]);
    assert!(stdout(&o).starts_with("lower=5 via induced T3(3,2,2) on vertices {1,2,3,4,5,6,7}"));
    let g = graph_file(r#"{"n": 3, "edges": [[1,2],[2,3],[1,3]]}"#);
    let o = bei(&["--json", "bounds", "--graph", g.as_str()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(1), Some(2)));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "betti", "--family", "g3", "--r", "2", "--s", "1", "--t", "1", "--method", "both"];
    let a = bei(&args);
    let b = bei(&["--jobs", "1", "--json", "betti", "--family", "g3", "--r", "2", "--s", "1", "--t", "1", "--method", "both"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(bei(&["betti", "--family", "line"]).status.code(), Some(2));
    assert_eq!(bei(&["betti", "--graph", "/nonexistent/g.json"]).status.code(), Some(2));
    let bad = graph_file(r#"{"n": 3, "edges": [[1,1]]}"#);
    assert_eq!(bei(&["primes", "--graph", bad.as_str()]).status.code(), Some(2));
    let o = bei(&["betti", "--family", "cycle", "--n", "5", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains('?'));
    // no closed form for a star with four leaves
    let star = graph_file(r#"{"n": 5, "edges": [[1,2],[1,3],[1,4],[1,5]]}"#);
    assert_eq!(bei(&["betti", "--graph", star.as_str(), "--method", "formula"]).status.code(), Some(2));
}

#[test]
fn verify_small_sweep() {
    let o = bei(&["verify", "--families", "cycle,g3", "--n", "3..4"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    for c in 1..=10 {
        assert!(out.contains(&format!("PASS criterion {c}:")), "criterion {c} missing:\n{out}");
    }
    assert!(!out.contains("FAIL"));
    let o = bei(&["verify", "--families", "cycle", "--n", "4", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("SKIPPED"));
    assert_eq!(bei(&["verify", "--families", "star"]).status.code(), Some(2));
    assert_eq!(bei(&["verify", "--n", "5..3"]).status.code(), Some(2));
}
