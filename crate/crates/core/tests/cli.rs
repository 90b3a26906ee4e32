use std::path::Path;
use std::process::{Command, Output};

use rigidcert::graph::{graph6_encode, Graph};
use serde_json::Value;

fn rigidcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigidcert")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn g6(g: &Graph) -> String {
    graph6_encode(g).unwrap()
}

#[test]
fn rank_and_circuit_of_k5() {
    let k5 = g6(&Graph::complete(5));
    let out = rigidcert(&["rank", &k5]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["rank"], 9);

    let out = rigidcert(&["circuit", &k5]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["is_circuit"], true);
    assert_eq!(v["certified"], true);

    let v = json(&rigidcert(&["circuit", "--dim", "2", &g6(&Graph::complete(5))]));
    assert_eq!(v["is_circuit"], false);
}

#[test]
fn exact_stress_of_k55_is_balanced() {
    let out = rigidcert(&["stress", "--exact", "--seed", "4", &g6(&Graph::k55())]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["stress_space_dim"], 1);
    assert_eq!(v["stress_sums"][0], "0");
}

#[test]
fn reports_pass() {
    for cmd in ["prop1", "lemma-br"] {
        let out = rigidcert(&[cmd, "--seed", "9"]);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        assert!(json(&out)["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    }
    let out = rigidcert(&["cm-poly"]);
    assert_eq!(json(&out).as_array().unwrap().len(), 600);
}

#[test]
fn bad_input_exits_with_2() {
    assert_eq!(rigidcert(&["rank", "~~"]).status.code(), Some(2));
    assert_eq!(rigidcert(&["prop2", "--seed", "1", "--input", "/nonexistent/x.g6"]).status.code(), Some(2));
    assert_eq!(rigidcert(&["prop3", "--seed", "1", "--geng-path", "/nonexistent/geng"]).status.code(), Some(2));
    assert_eq!(rigidcert(&["prop2", "--seed", "1", "--dim", "2", "--input", "/dev/null"]).status.code(), Some(2));
}

fn write_lines(dir: &Path, name: &str, lines: &[String]) -> String {
    let p = dir.join(name);
    std::fs::write(&p, lines.join("\n")).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn pipeline_output_verifies_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_lines(dir.path(), "in.g6", &[g6(&Graph::k55()), g6(&Graph::complete(6))]);
    let out_path = dir.path().join("out.jsonl");
    let out = rigidcert(&["prop2", "--seed", "3", "--input", &input, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(summary["open"], 0);
    assert_eq!(summary["skipped"], 1);

    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("isomorphic-to-K55"));
    assert_eq!(rigidcert(&["verify", "--input", out_path.to_str().unwrap()]).status.code(), Some(0));

    let forged = lines[0].replace("isomorphic-to-K55", "unbalanced-stress");
    assert_eq!(rigidcert(&["verify", &forged]).status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let out = rigidcert(&["selftest", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
