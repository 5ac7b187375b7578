mod common;

const CASES: u32 = 1000;

#[test]
fn level_is_periodic() {
    common::periodicity(CASES).unwrap();
}

#[test]
fn level_range_below_lcm() {
    common::range_bounds(CASES).unwrap();
}

#[test]
fn reduced_class_is_consistent() {
    common::reduction_consistency(CASES).unwrap();
}

#[test]
fn degree_of_reduced_monomial_round_trips() {
    common::degree_round_trip(CASES).unwrap();
}

#[test]
fn dimension_formula_matches_basis() {
    common::dim_matches_basis(CASES).unwrap();
}

#[test]
fn dimension_sweep_on_ten_candidates() {
    common::dim_sweep(10, 0x5eed).unwrap();
}

#[test]
fn factorization_is_sound_and_complete() {
    common::factorization_soundness(CASES).unwrap();
}

#[test]
fn level_is_superadditive() {
    common::superadditivity(CASES).unwrap();
}

#[test]
fn enumeration_matches_naive_scan() {
    common::completeness_against_naive(50).unwrap();
}

#[test]
fn truncated_series_matches_dimensions() {
    common::truncated_series(CASES).unwrap();
}
