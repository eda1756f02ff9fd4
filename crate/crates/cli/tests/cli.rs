use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn pbw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(file: &str, args: &[&str]) -> (i32, String) {
    let path = fixture(file);
    let mut all = vec![path.to_str().unwrap()];
    all.extend_from_slice(args);
    let out = pbw(&all);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn normal_form_of_a_long_relation() {
    let (code, out) = run("pre1.txt", &["nf", "--expr", "R(y R(y))"]);
    assert_eq!((code, out.as_str()), (0, "1/2 P^1(y) P^1(y)\n"));
}

#[test]
fn basis_counts() {
    let (code, out) = run("pre1.txt", &["basis", "--max-degree", "4", "--count-only"]);
    assert_eq!((code, out.as_str()), (0, "1,1,1,1\n"));
    let (_, out) = run("post1.txt", &["basis", "--max-degree", "3", "--count-only"]);
    assert_eq!(out, "1,2,5\n");
}

#[test]
fn basis_words_are_listed_by_degree() {
    let (code, out) = run("post1.txt", &["basis", "--max-degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "a\na P^1(a)\na a\n");
}

#[test]
fn zero_weight_post_is_an_input_error() {
    let (code, out) = run("post_zero_weight.txt", &["nf", "--expr", "a"]);
    assert_eq!(code, 2);
    assert!(out.contains("weight 0"), "{out}");
}

#[test]
fn invalid_algebra_names_the_triple() {
    let (code, out) = run("pre_bad.txt", &["nf", "--expr", "a"]);
    assert_eq!(code, 2);
    assert!(out.contains("(a, b, b)"), "{out}");
}

#[test]
fn missing_higher_bracket_exits_3() {
    let (code, out) = run("pre_sq_strict.txt", &["nf", "--expr", "R(P(P(y)) y)"]);
    assert_eq!(code, 3);
    assert!(out.contains("[y, P^2(y)]"), "{out}");
    let (code, _) = run("pre_sq.txt", &["nf", "--expr", "R(P(P(y)) y)"]);
    assert_eq!(code, 0);
}

#[test]
fn perturbed_relations_leave_residuals() {
    let args = ["check", "gs", "--perturb", "--max-breadth", "2"];
    let (code, out) = run("pre1.txt", &args);
    assert_eq!(code, 1);
    assert!(out.contains("-R(y y)"), "{out}");
    assert!(out.ends_with("result: FAIL\n"));
}

#[test]
fn closure_of_a_nontrivial_product() {
    let (code, out) = run("pre_sq.txt", &["closure", "--max-degree", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("result: PASS\n"));
}

#[test]
fn seeded_checks_report_their_seed() {
    let args = [
        "check",
        "identities",
        "--which",
        "eq4",
        "--trials",
        "10",
        "--seed",
        "7",
    ];
    let (code, out) = run("pre1.txt", &args);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("seed: 7\n"));
    let (code, out) = run("post1.txt", &["check", "doubling", "--trials", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("6 inputs checked, 0 failed"));
}

#[test]
fn dendriform_needs_the_pre_case() {
    let (code, _) = run(
        "post1.txt",
        &["check", "identities", "--which", "dendriform"],
    );
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--json",
        "check",
        "identities",
        "--which",
        "assoc",
        "--trials",
        "10",
    ];
    let a = run("pre_sq.txt", &args);
    let b = run("pre_sq.txt", &args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["config"]["seed"], 1);
    assert_eq!(v["status"], "ok");
}

#[test]
fn syntax_errors_point_at_the_line() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "case = pre\nweight = 0\ngenerators = y\n[prodct]").unwrap();
    let out = pbw(&["--json", f.path().to_str().unwrap(), "nf", "--expr", "y"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["location"]["line"], 4);
}

#[test]
fn unreadable_file_is_an_input_error() {
    let (code, out) = run("no_such_file.txt", &["nf", "--expr", "y"]);
    assert_eq!(code, 2);
    assert!(out.starts_with("error: cannot read"));
}
