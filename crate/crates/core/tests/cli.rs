use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_borelcell"));
    c.env_remove("BORELCELL_FIELD");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn gen_lists_principal_generators() {
    let o = run(&["gen", "--vars", "3", "--borel", "bc"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = run(&["gen", "--vars", "5", "--borel", "x2*x5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("x1*x5"));
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let p = path(dir.path(), "p.json");
    let report = path(dir.path(), "r.json");
    let o = run(&["complex", "P", "--vars", "3", "--degree", "2", "--out", &p]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("f-vector: (6, 8, 3)"));
    let o = run(&["verify", "--complex", &p, "--report", &report]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert!(r["config_hash"].as_str().unwrap().len() == 16);
    assert_eq!(r["result"]["field"], "q");
    let checks = r["result"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));

    // the same complex against the wrong ideal is an input error
    let o = run(&["verify", "--complex", &p, "--borel", "bc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports_a_broken_complex() {
    let dir = tempfile::tempdir().unwrap();
    let p = path(dir.path(), "p.json");
    run(&["complex", "P", "--vars", "3", "--degree", "2", "--out", &p]);
    let mut j: serde_json::Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    // drop the square 2-cell, which is the only 2-cell with four vertices
    let cells = j["cells"].as_array_mut().unwrap();
    cells.retain(|c| c["vertices"].as_array().unwrap().len() != 4);
    let broken = path(dir.path(), "broken.json");
    fs::write(&broken, serde_json::to_string(&j).unwrap()).unwrap();
    let o = run(&["verify", "--complex", &broken]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("acyclic: FAIL at x1*x2^2*x3"), "{s}");
    assert!(s.contains("H~_1 = 1"));
}

#[test]
fn import_rejects_dangling_facets() {
    let dir = tempfile::tempdir().unwrap();
    let p = path(dir.path(), "p.json");
    run(&["complex", "P", "--vars", "2", "--degree", "2", "--out", &p]);
    let mut j: serde_json::Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    let last = j["cells"].as_array_mut().unwrap().last_mut().unwrap();
    last["facets"][0][0] = serde_json::json!(99);
    fs::write(&p, serde_json::to_string(&j).unwrap()).unwrap();
    let o = run(&["verify", "--complex", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("dangling"));
}

#[test]
fn field_defaults_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let p = path(dir.path(), "p.json");
    run(&["complex", "P", "--vars", "3", "--degree", "2", "--out", &p]);
    let o = bin()
        .args(["verify", "--complex", &p])
        .env("BORELCELL_FIELD", "p:2")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("field: p:2"));
    let o = bin()
        .args(["verify", "--complex", &p])
        .env("BORELCELL_FIELD", "p:9")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn q_methods_agree() {
    let o = run(&[
        "complex",
        "Q",
        "--vars",
        "3",
        "--borel",
        "ab^3c^2,a^2c^4",
        "--method",
        "both",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("recursive = extract: yes"));
    let o = run(&["complex", "Q", "--vars", "3", "--borel", "ab,c^3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn betti_three_way() {
    let o = run(&["betti", "--vars", "4", "--borel", "bd^2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("i\tcellular\tkoszul\tek\n"));
    assert!(s.contains("agree: yes"));
    let o = run(&[
        "betti", "--vars", "3", "--mono", "a^2,b^2", "--method", "koszul",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1\t1"));
}

#[test]
fn lattice_checks() {
    let o = run(&[
        "lattice",
        "--vars",
        "4",
        "--borel",
        "ab,ac,ad^2,b^2*c*d^2",
        "--check",
        "ranked",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("generators: 13"));
    assert!(s.contains("ranked: no"));
    assert!(s.contains("jump cover"));

    let o = run(&[
        "lattice", "--vars", "3", "--borel", "bc", "--check", "ranked",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&[
        "lattice",
        "--vars",
        "4",
        "--borel",
        "ab,ac,ad^2,b^2*c*d^2",
        "--check",
        "labels",
        "--interval",
        "1..ab^2cd^2",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("rising label chains: 0"));

    let o = run(&[
        "lattice",
        "--vars",
        "2",
        "--mono",
        "a,b",
        "--check",
        "labels",
        "--interval",
        "a..b",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn min_drops_redundant_borel_generators() {
    let o = run(&["min", "--vars", "3", "--borel", "bc,ab,c^2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "c^2");
}

#[test]
fn help_and_bad_usage() {
    assert!(run(&["--help"]).status.success());
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(
        run(&["gen", "--vars", "0", "--borel", "a"]).status.code(),
        Some(2)
    );
}
