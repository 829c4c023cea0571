use std::path::Path;

use linkinv::corpus::{Corpus, Provenance};
use linkinv::Error;

fn corpus_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

#[test]
fn directory_matches_bundled() {
    assert_eq!(Corpus::load(corpus_dir()).unwrap(), Corpus::bundled());
}

#[test]
fn every_expected_value_has_provenance() {
    let c = Corpus::bundled();
    let mut oracle = 0;
    for e in &c.entries {
        for (k, v) in &e.expected {
            assert!(!v.value.is_empty(), "{} {}", e.name, k);
            if v.provenance == Provenance::Oracle {
                oracle += 1;
                assert!(!v.note.is_empty(), "oracle value {} {} needs a note", e.name, k);
            }
        }
    }
    assert!(oracle > 0);
}

fn copy_corpus(dst: &Path) {
    std::fs::create_dir_all(dst).unwrap();
    for f in std::fs::read_dir(corpus_dir()).unwrap() {
        let f = f.unwrap();
        std::fs::copy(f.path(), dst.join(f.file_name())).unwrap();
    }
}

#[test]
fn corrupted_entry_is_named() {
    let dir = std::env::temp_dir().join(format!("linkinv-corrupt-{}", std::process::id()));
    copy_corpus(&dir);
    std::fs::write(dir.join("whitehead.pd"), "X[7,2,8,1] X[2,5,3\n").unwrap();
    let err = Corpus::load(&dir).unwrap_err();
    std::fs::remove_dir_all(&dir).unwrap();
    match err {
        Error::InvalidDiagram(msg) => assert!(msg.contains("`whitehead`"), "{}", msg),
        other => panic!("unexpected error {:?}", other),
    }
}

#[test]
fn missing_file_is_named() {
    let dir = std::env::temp_dir().join(format!("linkinv-missing-{}", std::process::id()));
    copy_corpus(&dir);
    std::fs::remove_file(dir.join("borromean.pd")).unwrap();
    let err = Corpus::load(&dir).unwrap_err();
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(err.to_string().contains("`borromean`"), "{}", err);
}
