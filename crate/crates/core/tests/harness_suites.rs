use lagrange_forest::harness::{random_kernel_family, run_named_suite, run_suite, Mutation, Suite, SuiteConfig};
use lagrange_forest::rational::{frac, int};
use lagrange_forest::Status;

#[test]
fn all_suites_pass_on_a_small_ensemble() {
    let cfg = SuiteConfig { seed: 5, d: 2, order: 4, trials: 5, ..SuiteConfig::default() };
    let reports = run_suite(Suite::All, &cfg).unwrap();
    assert!(!reports.is_empty());
    for r in &reports {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig { seed: 9, d: 2, order: 3, trials: 4, ..SuiteConfig::default() };
    let first = serde_json::to_string(&run_named_suite("all", &cfg).unwrap()).unwrap();
    let second = serde_json::to_string(&run_named_suite("all", &cfg).unwrap()).unwrap();
    assert_eq!(first, second);
}

#[test]
fn all_is_the_concatenation_of_its_parts_per_trial() {
    let cfg = SuiteConfig { seed: 3, d: 1, order: 3, trials: 1, ..SuiteConfig::default() };
    let all = run_suite(Suite::All, &cfg).unwrap();
    let mut parts = Vec::new();
    for name in ["lagrange-good", "magic", "round-trip", "species-oracles", "determinant-reduction", "univariate"] {
        parts.extend(run_named_suite(name, &cfg).unwrap());
    }
    assert_eq!(all, parts);
}

#[test]
fn seeds_change_the_kernel() {
    let cfg = SuiteConfig { pool: vec![int(0), int(1), frac(1, 2), int(-1)], ..SuiteConfig::default() };
    let a = random_kernel_family(&cfg, &mut cfg.rng(0)).unwrap();
    let differs = (2..6).any(|seed| {
        let other = SuiteConfig { seed, ..cfg.clone() };
        random_kernel_family(&other, &mut other.rng(0)).unwrap() != a
    });
    assert!(differs);
}

#[test]
fn corrupted_crown_sign_fails_with_minimal_witness() {
    let cfg = SuiteConfig {
        seed: 2,
        d: 2,
        order: 3,
        trials: 2,
        pool: vec![int(1), int(2)],
        mutation: Some(Mutation::FlipSingleCrownSign),
        ..SuiteConfig::default()
    };
    let reports = run_suite(Suite::SpeciesOracles, &cfg).unwrap();
    let failing: Vec<_> = reports.iter().filter(|r| r.status == Status::Fail).collect();
    assert_eq!(failing.len(), 2);
    for r in failing {
        assert_eq!(r.identity, "det-via-crowns");
        // the first key in graded order is the single color `a`
        assert_eq!(r.witness.as_ref().unwrap().tuple, vec!["a".to_string()]);
    }
}
