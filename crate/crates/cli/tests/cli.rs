use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn linkinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus")
}

fn scratch_corpus(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("linkinv-cli-{}-{}", tag, std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for f in std::fs::read_dir(corpus_dir()).unwrap() {
        let f = f.unwrap();
        std::fs::copy(f.path(), dir.join(f.file_name())).unwrap();
    }
    dir
}

#[test]
fn conway_of_hopf() {
    let o = linkinv(&["polys", "hopf-pos"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "z\n");
}

#[test]
fn braid_literal_input() {
    let o = linkinv(&["polys", "braid(2): s1 s1 s1"]);
    assert_eq!(stdout(&o), "1 + z^2\n");
}

#[test]
fn borromean_decomposition() {
    let o = linkinv(&["decompose", "borromean"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "P[] = 1/2*z1*z2*z3\nP[1,2] = 0\nP[1,3] = 0\nP[2,3] = 0\n");
}

#[test]
fn file_input_and_json() {
    let path = corpus_dir().join("trefoil-right.pd");
    let o = linkinv(&["--json", "polys", path.to_str().unwrap(), "--which", "homfly"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "linkinv.polynomial/1");
    assert_eq!(v["value"], "-x^-4 + 2*x^-2 + x^-2*y^2");
}

#[test]
fn invariant_report_json() {
    let o = linkinv(&["--json", "invariants", "whitehead", "--cap", "8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "linkinv.report/1");
    assert_eq!(v["conway"], "z^3");
}

#[test]
fn invariant_report_text() {
    let o = linkinv(&["invariants", "hopf-pos"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("conway: z\n"), "{}", out);
    assert!(out.contains("linking matrix:"), "{}", out);
}

#[test]
fn parse_error_exits_2() {
    let o = linkinv(&["polys", "X[1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("byte"), "{}", stderr(&o));
}

#[test]
fn bad_coloring_exits_2() {
    let o = linkinv(&["polys", "hopf-pos", "--colors", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exits_3() {
    let o = linkinv(&["--budget", "3", "polys", "borromean"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn unknown_suite_exits_2() {
    let o = linkinv(&["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_summary_json() {
    let o = linkinv(&["--json", "verify", "--suite", "congruences"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "linkinv.verify/1");
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() > 0);
}

#[test]
fn corrupted_corpus_names_the_entry() {
    let dir = scratch_corpus("corrupt");
    std::fs::write(dir.join("solomon.pd"), "X[1,2,3,4] X[\n").unwrap();
    let o = linkinv(&["verify", "--corpus", dir.to_str().unwrap(), "--suite", "corpus-values"]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`solomon`"), "{}", stderr(&o));
}

#[test]
fn wrong_expected_value_fails_verification() {
    let dir = scratch_corpus("wrong");
    let index = std::fs::read_to_string(dir.join("corpus.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&index).unwrap();
    let entry = v["entries"].as_array_mut().unwrap().iter_mut().find(|e| e["name"] == "hopf-pos").unwrap();
    entry["expected"]["conway"]["value"] = "2*z".into();
    std::fs::write(dir.join("corpus.json"), serde_json::to_string(&v).unwrap()).unwrap();
    let o = linkinv(&["verify", "--corpus", dir.to_str().unwrap(), "--suite", "corpus-values"]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("hopf-pos"), "{}", stdout(&o));
}
