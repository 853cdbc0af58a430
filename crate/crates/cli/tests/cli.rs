use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn hypertope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypertope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_non_thin_example() {
    let o = hypertope(&["classify", fixture("a6_rank4.perms").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(
        out.starts_with("verdict: geometry (not thin, not RC, not FT)"),
        "{out}"
    );
    assert!(out.contains("elements [15, 6, 6, 15]"), "{out}");
}

#[test]
fn classify_cube_is_regular() {
    let o = hypertope(&["classify", fixture("cube.perms").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict: regular_hypertope"));
}

#[test]
fn ip_plus_witness() {
    let o = hypertope(&["ip-plus", fixture("twelve_points.perms").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("I = {0,1,2}, J = {1,2,3}"), "{out}");
    assert_eq!(out.matches("I = ").count(), 1);
    let o = hypertope(&["ip", fixture("twelve_points.perms").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn family_and_chirality() {
    let o = hypertope(&["family", "hyper333", "--b", "2", "--c", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: chiral_hypertope"));
    let o = hypertope(&["chirality", fixture("gplus_3_1_2.pres").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("by rotations: chiral"));
    let o = hypertope(&["family", "gplus_pab", "--p", "6", "--a", "2", "--b", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("deferred"));
}

#[test]
fn tables_match() {
    let o = hypertope(&["tables"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn bad_input_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.perms");
    std::fs::write(&path, "perm: 4\n(1,2)\n(1,2,9)\n").unwrap();
    let o = hypertope(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    let o = hypertope(&["classify", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn caps_make_runs_inconclusive() {
    let o = hypertope(&[
        "--max-cosets",
        "10",
        "family",
        "gplus_pab",
        "--p",
        "5",
        "--a",
        "2",
        "--b",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_is_reproducible() {
    let path = fixture("gplus_3_2_0.pres");
    let args = ["--json", "classify", path.to_str().unwrap()];
    let a = hypertope(&args);
    let b = hypertope(&args);
    let c = hypertope(&["--json", "--sequential", "classify", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "regular_hypertope");
}

#[test]
fn dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.dot");
    let diagram = dir.path().join("d.dot");
    let o = hypertope(&[
        "export",
        fixture("cube.perms").to_str().unwrap(),
        "--dot",
        graph.to_str().unwrap(),
        "--diagram",
        diagram.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let g = std::fs::read_to_string(&graph).unwrap();
    assert!(g.starts_with("graph "));
    assert_eq!(g.matches(" -- ").count(), 8 * 3 + 12 * 2 + 6 * 4);
    assert!(std::fs::read_to_string(&diagram).unwrap().contains("4"));
}
