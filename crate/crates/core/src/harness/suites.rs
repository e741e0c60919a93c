use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{random_kernel_family, random_series, Mutation, SuiteConfig};
use crate::combinat::{crown_assembly_sum, exp_coefficient_via_maps, forest_coefficient, tree_coefficient};
use crate::error::{Error, Result};
use crate::inversion::{univariate_lagrange_check, InversionProblem};
use crate::rational::Rational;
use crate::report::{IdentityReport, ReportBuilder};
use crate::series::{advance_odometer, Color, KernelFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    LagrangeGood,
    Magic,
    RoundTrip,
    SpeciesOracles,
    DeterminantReduction,
    Univariate,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] =
        ["lagrange-good", "magic", "round-trip", "species-oracles", "determinant-reduction", "univariate", "all"];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::LagrangeGood,
                Suite::Magic,
                Suite::RoundTrip,
                Suite::SpeciesOracles,
                Suite::DeterminantReduction,
                Suite::Univariate,
            ],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lagrange-good" => Suite::LagrangeGood,
            "magic" => Suite::Magic,
            "round-trip" => Suite::RoundTrip,
            "species-oracles" => Suite::SpeciesOracles,
            "determinant-reduction" => Suite::DeterminantReduction,
            "univariate" => Suite::Univariate,
            "all" => Suite::All,
            other => return Err(Error::UnknownSuite(other.to_string())),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::LagrangeGood,
            Suite::Magic,
            Suite::RoundTrip,
            Suite::SpeciesOracles,
            Suite::DeterminantReduction,
            Suite::Univariate,
            Suite::All,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

pub(super) fn run_trial(suite: Suite, cfg: &SuiteConfig, trial: usize) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for part in suite.parts() {
        let mut rng = cfg.rng(trial);
        let params = cfg.parameters(trial);
        match part {
            Suite::LagrangeGood => {
                let problem = InversionProblem::new(random_kernel_family(cfg, &mut rng)?);
                let phi = random_series(cfg, &mut rng)?;
                out.push(problem.lagrange_good_report(&phi, cfg.max_tuple, &params)?);
                let subset = random_subset(cfg, &mut rng);
                out.push(problem.corollary_report(&subset, cfg.max_tuple, &params)?);
            }
            Suite::Magic => {
                let problem = InversionProblem::new(random_kernel_family(cfg, &mut rng)?);
                out.push(problem.magic_report(cfg.max_tuple, &params)?);
            }
            Suite::RoundTrip => {
                let problem = InversionProblem::new(random_kernel_family(cfg, &mut rng)?);
                out.push(problem.round_trip_check(&params)?);
            }
            Suite::SpeciesOracles => {
                let problem = InversionProblem::new(random_kernel_family(cfg, &mut rng)?);
                out.extend(species_oracles(&problem, cfg, &params)?);
            }
            Suite::DeterminantReduction => {
                let problem = InversionProblem::new(random_kernel_family(cfg, &mut rng)?);
                let subsets: Vec<Vec<Color>> = (1u32..(1 << cfg.d))
                    .map(|mask| (0..cfg.d).filter(|i| mask & (1 << i) != 0).map(|i| Color(i as u16)).collect())
                    .collect();
                out.push(problem.determinant_bundle(&subsets)?.agreement_report(&params));
            }
            Suite::Univariate => {
                let a: Vec<Rational> = (0..cfg.order).map(|_| cfg.draw(&mut rng)).collect();
                let f: Vec<Rational> = (0..=cfg.order).map(|_| cfg.draw(&mut rng)).collect();
                out.push(univariate_lagrange_check(&a, &f, cfg.order, &params)?);
            }
            Suite::All => unreachable!("expanded by parts()"),
        }
    }
    Ok(out)
}

fn random_subset(cfg: &SuiteConfig, rng: &mut impl rand::Rng) -> Vec<Color> {
    let mask = rng.random_range(1u32..(1 << cfg.d));
    (0..cfg.d).filter(|i| mask & (1 << i) != 0).map(|i| Color(i as u16)).collect()
}

fn crown_sign(mutation: Option<Mutation>) -> impl Fn(usize) -> Rational {
    move |s| {
        let flip = mutation == Some(Mutation::FlipSingleCrownSign) && s == 1;
        if (s % 2 == 0) != flip {
            Rational::one()
        } else {
            -Rational::one()
        }
    }
}

/// Series-side coefficients against enumeration: pinned exponential vs
/// enriched maps, determinant vs crowns, tree solution vs rooted trees, and
/// the factorization of the exponential through forests.
fn species_oracles(problem: &InversionProblem, cfg: &SuiteConfig, params: &str) -> Result<Vec<IdentityReport>> {
    let a = problem.kernel();
    let colors = problem.colors();
    let max_n = cfg.max_enumerated.min(cfg.order);
    let keys: Vec<_> = colors.keys_up_to(max_n).into_iter().skip(1).collect();

    let mut exp_maps = ReportBuilder::new("exp-via-maps", params, colors);
    let mut det_crowns = ReportBuilder::new("det-via-crowns", params, colors);
    let mut trees = ReportBuilder::new("tree-coefficients", params, colors);
    let mut forests = ReportBuilder::new("forest-factorization", params, colors);

    let det = problem.fredholm_determinant()?;
    let sol = problem.solve_tree_fixed_point()?;
    let sign = crown_sign(cfg.mutation);
    for key in &keys {
        let q = key.colors();
        let n = q.len();
        let e = problem.pinned_exponential(q)?;
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            exp_maps.check(
                key,
                &format!("I={subset:?}"),
                &e.coefficient(&key.select(mask)),
                &exp_coefficient_via_maps(q, &subset, a)?,
            );
        }
        det_crowns.check(key, "D", &det.coefficient(key), &crown_assembly_sum(q, a, &sign)?);
        for (r, &root) in q.iter().enumerate() {
            let rest = key.without(r);
            trees.check(
                key,
                &format!("root {}", colors.name(root)),
                &sol.t.member(root).coefficient(&rest),
                &tree_coefficient(root, rest.colors(), a)?,
            );
        }
        check_forest_factorization(problem, a, q, &mut |detail, expected, got| {
            forests.check(key, detail, expected, got)
        })?;
    }
    Ok(vec![exp_maps.finish(), det_crowns.finish(), trees.finish(), forests.finish()])
}

/// For every split of the positions into roots `L`, map domain `I` and sinks
/// `J`: `E^n_{#I}(q; q_I)` equals the sum over `I = I1 + I2` of the forests on
/// `L + I1` times the maps from `I2` into `J + I2`.
fn check_forest_factorization(
    problem: &InversionProblem,
    a: &KernelFamily,
    q: &[Color],
    check: &mut impl FnMut(&str, &Rational, &Rational),
) -> Result<()> {
    let n = q.len();
    let e = problem.pinned_exponential(q)?;
    // role[i]: 0 = L, 1 = I, 2 = J
    let mut role = vec![0usize; n];
    loop {
        let of = |r: usize| -> Vec<usize> { (0..n).filter(|&i| role[i] == r).collect() };
        let (l, i_set, j) = (of(0), of(1), of(2));
        let key = crate::series::CoefficientKey::new(i_set.iter().map(|&i| q[i]));
        let expected = e.coefficient(&key);
        let mut got = Rational::from_integer(0.into());
        for split in 0u32..(1 << i_set.len()) {
            let i1: Vec<usize> = i_set.iter().enumerate().filter(|(b, _)| split & (1 << b) != 0).map(|(_, &i)| i).collect();
            let i2: Vec<usize> = i_set.iter().enumerate().filter(|(b, _)| split & (1 << b) == 0).map(|(_, &i)| i).collect();
            // forests: roots first, then the vertices hanging from them
            let forest_tuple: Vec<Color> = l.iter().chain(&i1).map(|&i| q[i]).collect();
            let forest = forest_coefficient(&forest_tuple, &(0..l.len()).collect::<Vec<_>>(), a)?;
            if forest.is_zero() {
                continue;
            }
            let map_tuple: Vec<Color> = i2.iter().chain(&j).map(|&i| q[i]).collect();
            let maps = exp_coefficient_via_maps(&map_tuple, &(0..i2.len()).collect::<Vec<_>>(), a)?;
            got += forest * maps;
        }
        check(&format!("L={l:?} I={i_set:?} J={j:?}"), &expected, &got);
        if !advance_odometer(&mut role, 3) {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::run_suite;
    use crate::rational::int;

    #[test]
    fn names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
    }

    #[test]
    fn zero_pool_magic_passes() {
        let cfg = SuiteConfig { pool: vec![int(0)], trials: 2, ..SuiteConfig::default() };
        let reports = run_suite(Suite::Magic, &cfg).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.passed()));
    }

    #[test]
    fn mutation_is_detected() {
        let cfg = SuiteConfig {
            d: 1,
            order: 3,
            trials: 1,
            pool: vec![int(1)],
            mutation: Some(Mutation::FlipSingleCrownSign),
            ..SuiteConfig::default()
        };
        let reports = run_suite(Suite::SpeciesOracles, &cfg).unwrap();
        let failing: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].identity, "det-via-crowns");
        let w = failing[0].witness.as_ref().unwrap();
        assert_eq!(w.tuple, vec!["a".to_string()]);
        assert_eq!((w.expected.clone(), w.got.clone()), (int(-1), int(1)));
    }
}
