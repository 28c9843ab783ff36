//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line with the measured values and their fixed bounds.

use floquet_cdt::validation::{self, CriterionReport};

fn check(report: CriterionReport) {
    println!("{report}");
    assert!(report.passed(), "{report}");
}

#[test]
fn criterion_01_static_gibbs() {
    check(validation::static_gibbs());
}

#[test]
fn criterion_02_quasienergy_law() {
    check(validation::quasienergy_law());
}

#[test]
fn criterion_03_detailed_balance() {
    check(validation::detailed_balance());
}

#[test]
fn criterion_04_generalized_parity() {
    check(validation::generalized_parity());
}

#[test]
fn criterion_05_probability_jump() {
    check(validation::probability_jump());
}

#[test]
fn criterion_06_ratio_jump() {
    check(validation::ratio_jump());
}

#[test]
fn criterion_07_floquet_gibbs_limit() {
    check(validation::floquet_gibbs_limit());
}

#[test]
fn criterion_08_analytic_agreement() {
    check(validation::analytic_agreement());
}

#[test]
fn criterion_09_property_suite() {
    check(validation::property_suite());
}

#[test]
fn criterion_10_figure_reproduction() {
    let dir = tempfile::tempdir().unwrap();
    let report = validation::figure_reproduction(200, Some(dir.path()));
    let csv = std::fs::read_to_string(dir.path().join("figure_map.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 200 * 200);
    assert!(dir.path().join("figure_map.csv.meta").exists());
    check(report);
}
