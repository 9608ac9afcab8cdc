use std::fs::File;
use std::path::PathBuf;

use stromver_core::bundle::{check_relations, check_unitary, commutant, BundleError, Mode, RepDescriptor, DEFAULT_TOLERANCE};
use stromver_core::lie::{sl2_standard, AlgebraDescriptor, LieError};

fn fixture(name: &str) -> File {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    File::open(path).unwrap()
}

#[test]
fn sl2_fixture_matches_builtin() {
    let loaded = AlgebraDescriptor::from_reader(fixture("sl2.json")).unwrap().build().unwrap();
    let builtin = sl2_standard();
    assert_eq!(loaded.algebra.labels(), builtin.algebra.labels());
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(loaded.algebra.c(i, j, k), builtin.algebra.c(i, j, k));
            }
        }
    }
    assert_eq!(loaded.hermitian.matrix(), builtin.hermitian.matrix());
    assert_eq!(loaded.dagger.unwrap().matrix(), builtin.dagger.matrix());
}

#[test]
fn abelian_fixture_loads() {
    let loaded = AlgebraDescriptor::from_reader(fixture("abelian3.json")).unwrap().build().unwrap();
    assert!(loaded.algebra.is_abelian());
}

#[test]
fn corrupt_structure_constants_are_rejected() {
    let err = AlgebraDescriptor::from_reader(fixture("corrupt_jacobi.json")).unwrap().build().unwrap_err();
    assert!(err.to_string().to_lowercase().contains("jacobi"), "{err}");
}

#[test]
fn algebra_descriptor_errors_carry_paths() {
    let err = AlgebraDescriptor::from_json(r#"{"dim": 1, "structure": [], "hermitian": [["x"]]}"#).unwrap_err();
    match err {
        LieError::Descriptor { path, .. } => assert!(path.starts_with("hermitian"), "{path}"),
        other => panic!("unexpected {other:?}"),
    }
    let err = AlgebraDescriptor::from_json(r#"{"dim": 1, "structure": [], "hermitian": [["1"]], "extra": 0}"#);
    assert!(err.is_err());
}

#[test]
fn clock_shift_fixture_is_exact_and_irreducible() {
    let rep = RepDescriptor::from_reader(fixture("clockshift2.json")).unwrap().build().unwrap();
    assert_eq!(rep.mode(), Mode::Exact);
    assert!(check_unitary(&rep, DEFAULT_TOLERANCE).pass);
    assert!(check_relations(&rep, DEFAULT_TOLERANCE).pass);
    assert_eq!(commutant(&rep, DEFAULT_TOLERANCE).unwrap().dim, 1);
}

#[test]
fn reducible_fixture_has_larger_commutant() {
    let rep = RepDescriptor::from_reader(fixture("reducible.json")).unwrap().build().unwrap();
    assert!(check_relations(&rep, DEFAULT_TOLERANCE).pass);
    assert_eq!(commutant(&rep, DEFAULT_TOLERANCE).unwrap().dim, 2);
}

#[test]
fn float_descriptor_with_flat_entries() {
    let json = r#"{"n": 2, "mode": "float",
        "generators": {"a": [[0.6, 0.0], [0.0, 0.8], [0.0, 0.8], [0.6, 0.0]]},
        "relators": []}"#;
    let rep = RepDescriptor::from_json(json).unwrap().build().unwrap();
    assert_eq!(rep.mode(), Mode::Float);
    let report = check_unitary(&rep, 1e-12);
    assert!(report.pass, "{report:?}");
    assert!(report.entries.iter().all(|e| e.exact_zero.is_none()));
}

#[test]
fn non_unitary_descriptor_fails_check() {
    let json = r#"{"n": 1, "mode": "exact", "generators": {"a": [["2"]]}, "relators": []}"#;
    let rep = RepDescriptor::from_json(json).unwrap().build().unwrap();
    assert!(!check_unitary(&rep, DEFAULT_TOLERANCE).pass);
}

#[test]
fn rep_descriptor_errors_carry_paths() {
    let bad_shape = r#"{"n": 2, "mode": "exact", "generators": {"a": [["1"]]}, "relators": []}"#;
    match RepDescriptor::from_json(bad_shape).unwrap().build() {
        Err(BundleError::Descriptor { path, .. }) => assert!(path.contains("generators"), "{path}"),
        other => panic!("unexpected {other:?}"),
    }
    let unknown_gen = r#"{"n": 1, "mode": "exact", "generators": {"a": [["1"]]}, "relators": ["ab"]}"#;
    assert!(RepDescriptor::from_json(unknown_gen).unwrap().build().is_err());
    assert!(RepDescriptor::from_json(r#"{"n": 1, "mode": "symbolic", "generators": {}, "relators": []}"#).is_err());
}
