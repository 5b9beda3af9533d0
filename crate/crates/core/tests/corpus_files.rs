//! The checked-in corpus matches the built-in one.

use std::path::PathBuf;

use num_integer::Integer;

use quotsing_core::lab::corpus::{builtin, load, CORPUS_SUITES};
use quotsing_core::FieldMatrix;

fn same_value(a: &FieldMatrix, b: &FieldMatrix) -> bool {
    let l = a.conductor().lcm(&b.conductor());
    a.promote(l) == b.promote(l)
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn checked_in_corpus_matches_builtin() {
    for suite in CORPUS_SUITES {
        let disk = load(&corpus_dir(), suite).unwrap();
        let mem = builtin(suite).unwrap();
        assert_eq!(disk.len(), mem.len(), "{suite}");
        for (a, b) in disk.iter().zip(&mem) {
            assert_eq!(a.spec.name, b.spec.name);
            assert_eq!(a.spec.generators.len(), b.spec.generators.len());
            for (x, y) in a.spec.generators.iter().zip(&b.spec.generators) {
                assert!(same_value(x, y), "{}", a.spec.name);
            }
            assert_eq!(a.line, b.line);
            match (&a.extension, &b.extension) {
                (Some(x), Some(y)) => assert!(same_value(x, y), "{}", a.spec.name),
                (x, y) => assert_eq!(x.is_none(), y.is_none()),
            }
        }
    }
}
