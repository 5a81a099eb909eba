//! Frozen census of small effect algebras.
//!
//! The counts were obtained independently by brute force over all partial
//! sum tables (n <= 5) and are fixed here as regression values.

use effectlab::classify::{is_lattice, is_omp, is_orthoalgebra};
use effectlab::enumerate::{canonical_form, enumerate_all, enumerate_with_cap};
use effectlab::harness::theorem_harness;

#[test]
fn counts_up_to_six() {
    let counts: Vec<usize> = (2..=6).map(|n| enumerate_all(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 3, 4, 10]);
}

#[test]
fn five_element_codes() {
    let codes: Vec<String> = enumerate_all(5)
        .unwrap()
        .iter()
        .map(|a| canonical_form(a).to_string())
        .collect();
    assert_eq!(codes, ["5:..11..", "5:..11.2", "5:..1123", "5:1..1.1"]);
}

#[test]
fn four_element_structure() {
    let algs = enumerate_all(4).unwrap();
    let orthoalgebras = algs.iter().filter(|a| is_orthoalgebra(a).holds()).count();
    assert_eq!(orthoalgebras, 1, "only the four-element Boolean algebra");
    assert!(algs.iter().all(|a| is_lattice(a).holds()));
    assert_eq!(algs.iter().filter(|a| is_omp(a).holds()).count(), 1);
}

#[test]
fn out_of_range_sizes_are_rejected() {
    assert!(enumerate_all(1).is_err());
    assert!(enumerate_all(7).is_err());
    assert!(enumerate_with_cap(7, 7).is_ok());
}

#[test]
fn harness_up_to_six_is_clean() {
    let report = theorem_harness(6).unwrap();
    assert!(report.is_clean(), "{report}");
    assert_eq!(report.algebras, 19);
}
