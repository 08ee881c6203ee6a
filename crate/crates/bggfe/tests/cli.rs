//! End-to-end runs of the command-line binary.

use std::process::{Command, Output};

fn bggfe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bggfe")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn element_summaries() {
    let out = bggfe(&["element", "--family", "ij_W", "--n", "3", "--k", "2", "--l", "2", "--p", "1", "--r", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("HHJ: dim 6, nn DoF 1/face, PASS"));

    let out = bggfe(&["element", "--family", "ijp_W", "--n", "3", "--k", "2", "--l", "1", "--p", "2", "--r", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("MCS: dim 8"));

    let out = bggfe(&["element", "--family", "ii_W", "--n", "3", "--k", "1", "--l", "1"]);
    assert!(stdout(&out).starts_with("Regge: dim 6, tt DoF 1/edge, PASS"));
}

#[test]
fn four_dimensional_element_reports_proxy() {
    let out = bggfe(&["--format", "tsv", "element", "--family", "ij_W", "--n", "4", "--k", "3", "--l", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("4D HHJ: dim 10"));
    assert!(text.lines().any(|l| l.starts_with("constant proxy\t")), "{text}");
}

#[test]
fn constraint_violation_is_named() {
    let out = bggfe(&["element", "--family", "ii_W", "--n", "3", "--k", "3", "--l", "1", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("k ≤ ℓ + p − 1"), "{err}");
}

#[test]
fn tables_check() {
    let out = bggfe(&["--format", "tsv", "table", "--which", "dim22", "--check"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l.contains("\t0\t1\t8\t10\t0\t")));

    let out = bggfe(&["--format", "tsv", "table", "--which", "dim33j", "--check"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l.contains("\t10\t0\t30\t14\t")));

    let out = bggfe(&["table", "--which", "threeD", "--check"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Regge (S) PASS") && text.contains("HHJ (S) PASS"), "{text}");

    assert!(bggfe(&["table", "--which", "fourD", "--check"]).status.success());
}

#[test]
fn verify_suites() {
    let out = bggfe(&["--format", "tsv", "verify", "--suite", "appendixA", "--nmax", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).trim_end().ends_with("0 failed: PASS"));

    let out = bggfe(&["verify", "--suite", "bubbles", "--nmax", "2", "--rmax", "1"]);
    assert!(out.status.success());
    assert!(bggfe(&["verify", "--suite", "nonsense"]).status.code() == Some(2));
}

#[test]
fn euler_on_bundled_mesh() {
    let mesh = concat!(env!("CARGO_MANIFEST_DIR"), "/data/meshes/two_tets.toml");
    let out = bggfe(&["--format", "tsv", "euler", "--mesh", mesh]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.ends_with("\tPASS")).count(), 6, "{text}");

    let out = bggfe(&["euler", "--mesh", mesh, "--l", "2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bggfe(&["euler", "--mesh", "/nonexistent.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "markdown", "proxies"];
    let a = bggfe(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, bggfe(&args).stdout);
}
