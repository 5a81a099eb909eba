use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = Command::new(env!("CARGO_BIN_EXE_effectlab"))
        .args(args)
        .output()
        .unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

#[test]
fn classify_even4_with_states() {
    let (code, out, _) = run(&["classify", &data("even4.omp"), "--with-states"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("omp=true lattice=true jp_algebra=false"),
        "{out}"
    );
}

#[test]
fn classify_c3_without_states() {
    let (code, out, _) = run(&["classify", &data("c3.ea")]);
    assert_eq!(code, 0);
    assert!(out.contains("orthoalgebra=false"));
    assert!(out.contains("maximality=true"));
    assert!(!out.contains("unital="));
}

#[test]
fn sod_fails_for_three_point_states() {
    let (code, out, _) = run(&[
        "check",
        "sod",
        &data("even4.omp"),
        "--states",
        &data("sabc.st"),
    ]);
    assert_eq!(code, 1);
    assert!(out.starts_with("sod: false"));
    assert!(out.contains("witness: ({a,d}, {a,b})"), "{out}");
}

#[test]
fn unital_and_jp_checks_on_state_file() {
    let (code, out, _) = run(&[
        "check",
        "unital",
        &data("even4.omp"),
        "--states",
        &data("sabc.st"),
    ]);
    assert_eq!(
        (code, out.lines().next().unwrap()),
        (0, "unital: true (given states)")
    );
    let (code, out, _) = run(&[
        "check",
        "jp",
        &data("even4.omp"),
        "--states",
        &data("sabc.st"),
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("state s_a"));
}

#[test]
fn full_state_space_checks() {
    assert_eq!(run(&["check", "sod", &data("even4.omp"), "--full"]).0, 0);
    assert_eq!(run(&["check", "jp", &data("powerset3.omp")]).0, 0);
    assert_eq!(run(&["check", "unital", &data("c3.ea")]).0, 1);
    let (code, _, err) = run(&[
        "check",
        "sod",
        &data("even4.omp"),
        "--full",
        "--states",
        &data("sabc.st"),
    ]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", &data("even6.omp")]).0, 0);
    assert_eq!(run(&["validate", &data("c3.ea")]).0, 0);
    let (code, out, _) = run(&["validate", &data("bad_assoc.ea")]);
    assert_eq!(code, 2);
    assert!(out.contains("associativity"));
    let (code, out, _) = run(&["validate", &data("nonclosed.omp")]);
    assert_eq!(code, 2);
    assert!(out.contains("disjoint union"));
}

#[test]
fn closure_completes_a_family() {
    let (code, out, _) = run(&["validate", &data("nonclosed.omp"), "--closure"]);
    assert_eq!(code, 0);
    assert!(out.contains("# closure: 8 blocks"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("closed.omp");
    std::fs::write(&path, &out).unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).0, 0);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.ea");
    std::fs::write(&path, "ea 3\nsum 2 2\n").unwrap();
    let (code, _, err) = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(&["classify", "/nonexistent/file.ea"]).0, 2);
    assert_eq!(run(&["classify", &data("bad_assoc.ea")]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["classify", &data("c3.ea"), "--bogus"]).0, 2);
}

#[test]
fn states_lp_and_two_valued() {
    let (code, out, _) = run(&[
        "states",
        &data("even4.omp"),
        "--pin",
        "ad=1",
        "--minimize",
        "ab",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("minimum of s({a,b}) = 0"), "{out}");
    let (code, out, _) = run(&["states", &data("c3.ea"), "--pin", "a=1"]);
    assert_eq!((code, out.trim()), (1, "infeasible"));
    let (code, out, _) = run(&["states", &data("c3.ea"), "--maximize", "a"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("maximum of s(a) = 1/2"));
    let (code, out, _) = run(&["states", &data("even4.omp"), "--two-valued"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("8 two-valued states"));
    let (code, _, _) = run(&["states", &data("even4.omp"), "--pin", "zz=1"]);
    assert_eq!(code, 2);
}

#[test]
fn theorems_report_is_clean() {
    let (code, out, _) = run(&["theorems", "--max-n", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("total violations: 0"));
    assert_eq!(run(&["theorems", "--max-n", "9"]).0, 2);
}

#[test]
fn enumerate_writes_census() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.txt");
    let (code, out, _) = run(&["enumerate", "--n", "5", "--census", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), out);
    assert!(out
        .lines()
        .all(|l| l.starts_with("5:") && l.contains(" omp=")));
}

#[test]
fn witness_records_are_self_checked() {
    let (code, out, _) = run(&["witness", "omp-not-m", "no-maximal", "--candidate", "empty"]);
    assert_eq!(code, 0);
    assert!(out.contains("witness: empty^X1:0"));
    assert!(out.contains("claim:"));
    assert!(!out.contains("FAILED"));
    let (code, out, _) = run(&["witness", "omp-not-m", "no-maximal", "--iterate", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("witness: empty^X1:0,X1:1,X1:2"));
    let (code, out, _) = run(&[
        "witness",
        "balanced",
        "no-upper-bound",
        "--candidate",
        "X+Y^X:1,X:3,Y:0,Y:1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("n=3"));
    let (code, out, _) = run(&[
        "witness",
        "finite-cofinite",
        "no-supremum",
        "--system",
        "even",
        "--candidate",
        "X",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("witness: X^X:1"));
    assert_eq!(run(&["witness", "omp-unot-sod", "not-sod"]).0, 0);
    assert_eq!(
        run(&["witness", "chain-finite-lattice", "chain-bound"]).0,
        0
    );
    assert_eq!(
        run(&["witness", "omp-not-m", "no-maximal", "--candidate", "X1+X2"]).0,
        2
    );
    assert_eq!(run(&["witness", "no-such", "no-maximal"]).0, 2);
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("even4.dot");
    let (code, _, _) = run(&[
        "export-dot",
        &data("even4.omp"),
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 12);
    assert!(dot.contains("label=\"ad\""));
}
