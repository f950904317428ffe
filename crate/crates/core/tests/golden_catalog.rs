//! The catalog tournaments are bit-exact stable: their canonical
//! serializations are frozen under `tests/golden/`.

use kary_core::catalog;
use kary_core::{parse_tournament, serialize_tournament};

fn check(name: &str, golden: &str) {
    let t = catalog::by_name(name).expect("catalog entry exists");
    let text = serialize_tournament(&t);
    assert_eq!(text, golden, "{name} serialization drifted");
    assert_eq!(parse_tournament(golden).unwrap(), t);
}

#[test]
fn t9_matches_golden() {
    check("t9", include_str!("golden/t9.txt"));
}

#[test]
fn t12_matches_golden() {
    check("t12", include_str!("golden/t12.txt"));
}

#[test]
fn paley7_matches_golden() {
    check("paley7", include_str!("golden/paley7.txt"));
}
