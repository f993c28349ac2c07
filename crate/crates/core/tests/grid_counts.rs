use freecurve::grid::oracle::{alpha_brute, component_count, hred_count, per_l_pair_count, segments_through_first_vertex};
use freecurve::grid::{alpha, count_components, count_hred, enumerate_components, hred};

#[test]
fn alpha_matches_line_enumeration() {
    for m in 2..=12 {
        assert_eq!(alpha(m as u64), alpha_brute(m) as u64, "m = {m}");
    }
}

#[test]
fn component_formula_matches_closure_count() {
    for n in 3..=14 {
        let want = component_count(n).unwrap();
        assert_eq!(count_components(n).unwrap(), want, "n = {n}");
        assert_eq!(enumerate_components(n).unwrap().len() as u64, want, "n = {n}");
    }
}

#[test]
fn hred_formula_matches_membership_count() {
    for n in 4..=14 {
        let (per, total) = count_hred(n).unwrap();
        assert_eq!(hred_count(n).unwrap(), total, "n = {n}");
        assert_eq!(hred(n).unwrap().len() as u64, total, "n = {n}");
        for l in 0..3 {
            assert_eq!(per_l_pair_count(n, l).unwrap(), per, "n = {n}, l = {l}");
        }
    }
}

#[test]
fn one_reduced_segment_through_first_vertex() {
    for n in 4..=12 {
        let direct = hred(n).unwrap().iter().filter(|h| h.collinear_with_first_vertex()).count();
        assert_eq!(direct, 1, "n = {n}");
        assert!(segments_through_first_vertex(n).unwrap() >= 1);
    }
}

#[test]
fn small_grids_rejected() {
    assert!(count_components(2).is_err());
    assert!(count_hred(3).is_err());
}
