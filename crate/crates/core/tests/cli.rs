use std::process::{Command, Output};

use serde_json::Value;

fn shepkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shepkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_inline() {
    let o = shepkit(&["classify", "--inline", "3[3]3[3]3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "A3(3): finite\n");
}

#[test]
fn classify_file() {
    let dir = std::env::temp_dir().join(format!("shepkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d4.txt");
    std::fs::write(&path, "# D4(3)\nvertex o 3\nvertex x 3\nvertex y 3\nvertex z 3\nedge o x 3\nedge o y 3\nedge o z 3\n").unwrap();
    let o = shepkit(&["classify", "--require-finite", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).ends_with(": infinite\n"));
    let o = shepkit(&["classify", dir.join("missing").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn moussong_rejects_a4_3() {
    let o = shepkit(&["certify", "moussong", "--format", "json", "--inline", "3[3]3[3]3[3]3"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks_version"], "shepkit-checks/1");
    assert_eq!(v["verdict"], "fail");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["status"] == "fail" && c["witness"].as_str().unwrap().contains("A4(3)")));
}

#[test]
fn hessian_verify_passes() {
    let o = shepkit(&["hessian-verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("verdict: pass\n"));
}

#[test]
fn cube_certificate_names_witness() {
    let o = shepkit(&["certify", "cube", "--inline", "2[inf]2[4]2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let tri = "vertex a 2\nvertex b 2\nvertex c 2\nedge a b 3\nedge b c 3\nedge a c 3\n";
    let dir = std::env::temp_dir().join(format!("shepkit-tri-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tri.txt");
    std::fs::write(&path, tri).unwrap();
    let o = shepkit(&["certify", "cube", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL FC"));
}

#[test]
fn exports_are_stable() {
    let args = ["complex", "k", "--format", "json", "--inline", "2[3]2"];
    let (a, b) = (shepkit(&args), shepkit(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["kind"], "cubical");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    let o = shepkit(&["complex", "theta", "--format", "dot", "--inline", "2[3]2"]);
    assert_eq!(stdout(&o).matches(" -- ").count(), 6);
    let o = shepkit(&["complex", "polytope", "--format", "dot", "--inline", "3[3]3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn orders_and_girth() {
    assert_eq!(stdout(&shepkit(&["order", "--inline", "2[4]3[3]3"])), "1296\n");
    assert_eq!(shepkit(&["order", "--inline", "3[3]3[3]3[3]3"]).status.code(), Some(1));
    assert_eq!(stdout(&shepkit(&["order", "--inline", "3[inf]3"])), "infinite\n");
    let o = shepkit(&["girth", "--format", "json", "--inline", "3[5]3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["girth"].as_u64(), v["matches_2m"].as_bool()), (Some(10), Some(true)));
}

#[test]
fn form_reports_definiteness() {
    let o = shepkit(&["form", "--inline", "3[3]3[3]3"]);
    assert!(stdout(&o).contains("positive definite: yes"));
    let o = shepkit(&["form", "--inline", "3[inf]3"]);
    assert_eq!(o.status.code(), Some(1));
}
