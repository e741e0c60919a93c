use std::sync::Arc;

use lagrange_forest::inversion::{univariate_lagrange_check, univariate_routes, InversionProblem};
use lagrange_forest::rational::{factorial, frac, int};
use lagrange_forest::{Color, ColorSet, KernelFamily, Rational, TruncatedSeries};
use proptest::prelude::*;

fn pool() -> Vec<Rational> {
    vec![int(-1), int(0), frac(1, 2), int(1), int(2), frac(-1, 3)]
}

fn problem(d: usize, order: usize, picks: &[usize]) -> InversionProblem {
    let colors = Arc::new(ColorSet::alphabetic(d).unwrap());
    let values = pool();
    let mut it = picks.iter().cycle();
    InversionProblem::new(KernelFamily::from_fn(&colors, order, |_, _| values[*it.next().unwrap()].clone()))
}

fn phi(p: &InversionProblem, picks: &[usize]) -> TruncatedSeries {
    let values = pool();
    let mut it = picks.iter().rev().cycle();
    TruncatedSeries::from_fn(p.colors(), p.order(), |_| values[*it.next().unwrap()].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn determinant_formula_matches_trees(d in 1usize..=3, picks in prop::collection::vec(0usize..6, 97)) {
        let order = if d == 3 { 4 } else { 5 };
        let p = problem(d, order, &picks);
        let report = p.lagrange_good_report(&phi(&p, &picks), 4, "").unwrap();
        prop_assert!(report.passed(), "{}", report);
        let magic = p.magic_report(order, "").unwrap();
        prop_assert!(magic.passed(), "{}", magic);
        prop_assert!(p.fixed_point_residual().unwrap());
    }

    #[test]
    fn round_trip_and_reduction(d in 1usize..=3, picks in prop::collection::vec(0usize..6, 89)) {
        let p = problem(d, 4, &picks);
        prop_assert!(p.round_trip_check("").unwrap().passed());
        let all: Vec<Color> = p.colors().colors().collect();
        let subsets = vec![vec![Color(0)], all];
        prop_assert!(p.determinant_bundle(&subsets).unwrap().agreement_report("").passed());
    }

    #[test]
    fn univariate_routes_agree(a in prop::collection::vec(0usize..6, 6), f in prop::collection::vec(0usize..6, 7)) {
        let values = pool();
        let a: Vec<Rational> = a.into_iter().map(|i| values[i].clone()).collect();
        let f: Vec<Rational> = f.into_iter().map(|i| values[i].clone()).collect();
        prop_assert!(univariate_lagrange_check(&a, &f, 6, "").unwrap().passed());
    }
}

#[test]
fn repeated_colors_have_nonzero_determinant_coefficients() {
    let colors = Arc::new(ColorSet::alphabetic(1).unwrap());
    let a = KernelFamily::from_entries(&colors, 3, [("a", vec!["a"], int(1)), ("a", vec!["a", "a"], int(1))]).unwrap();
    let p = InversionProblem::new(a);
    let d = p.fredholm_determinant().unwrap();
    assert_ne!(d.coefficient_at(&[Color(0), Color(0)]).unwrap(), int(0));
    let finite = p.finite_matrix_determinant(&[Color(0)]).unwrap();
    assert_eq!(finite, d);
}

#[test]
fn cayley_coefficients_in_monomial_convention() {
    let routes = univariate_routes(&[int(1)], &[int(0), int(1)], 6).unwrap();
    for k in 1..=6usize {
        assert_eq!(routes.trees[k - 1], int((k as i64).pow(k as u32 - 1)) / factorial(k));
    }
}

#[test]
fn tree_formula_for_the_inverse_on_subsets() {
    let p = problem(2, 4, &[3, 1, 4, 1, 5, 2, 0]);
    let b = [Color(1)];
    assert_eq!(p.inverse_via_determinant(&b, &[Color(1)]).unwrap(), int(1));
    assert_eq!(p.inverse_via_determinant(&b, &[Color(0), Color(0), Color(0)]).unwrap(), int(0));
    assert!(p.corollary_report(&b, 4, "").unwrap().passed());
}
